use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial with exact rational coefficients; `coeffs[k]` multiplies `x^k`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigRational>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ExactPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().expect("non-zero");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / lead;
            if q.is_zero() {
                continue;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "division is not exact");
        q
    }

    /// Same polynomial scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer multiple: coefficients coprime, constant term
    /// positive (or, when it is zero, the lowest non-zero coefficient).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let low = ints.iter().find(|c| !c.is_zero()).expect("non-zero polynomial");
        let sign = if low.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.iter().map(|c| c / &content * &sign).collect()
    }

    /// An upper bound for `|p'(x)|` on `[lo, hi]`.
    pub fn derivative_bound(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let r = lo.abs().max(hi.abs());
        self.derivative()
            .coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &r + c.abs())
    }

    /// Keeps the terms of degree at most `n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPolynomial({self})")
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: Self) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: Self) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: Self) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactPolynomial {
            type Output = ExactPolynomial;
            fn $m(self, rhs: Self) -> ExactPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: ExactPolynomial,
    den: ExactPolynomial,
}

impl RationalFunction {
    pub fn new(num: ExactPolynomial, den: ExactPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().expect("non-zero").recip();
        RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn polynomial(p: ExactPolynomial) -> Self {
        Self::new(p, ExactPolynomial::one())
    }

    pub fn numerator(&self) -> &ExactPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &ExactPolynomial {
        &self.den
    }

    /// The numerator as primitive integers with a positive constant term.
    pub fn integer_numerator(&self) -> Vec<BigInt> {
        self.num.primitive_integer()
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: Self) -> RationalFunction {
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: Self) -> RationalFunction {
        RationalFunction::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_display() {
        let p = ExactPolynomial::from_ints(&[1, -2]);
        let sq = &p * &p;
        assert_eq!(sq, ExactPolynomial::from_ints(&[1, -4, 4]));
        assert_eq!(sq.to_string(), "1 - 4x + 4x^2");
        assert_eq!((&sq - &sq).degree(), None);
        assert_eq!(sq.eval(&q(1, 2)), q(0, 1));
        assert_eq!(sq.derivative(), ExactPolynomial::from_ints(&[-4, 8]));
    }

    #[test]
    fn division_and_gcd() {
        let a = ExactPolynomial::from_ints(&[-1, 0, 1]);
        let b = ExactPolynomial::from_ints(&[1, 1]);
        let (quot, r) = a.div_rem(&b);
        assert_eq!(quot, ExactPolynomial::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = ExactPolynomial::from_ints(&[2, 2, 0, 0]);
        assert_eq!(a.gcd(&c), ExactPolynomial::from_ints(&[1, 1]));
        let (q0, r0) = b.div_rem(&a);
        assert!(q0.is_zero());
        assert_eq!(r0, b);
    }

    #[test]
    fn rational_function_normal_form() {
        let f = RationalFunction::new(
            ExactPolynomial::from_ints(&[-2, 0, 2]),
            ExactPolynomial::from_ints(&[2, 2]),
        );
        assert_eq!(f.denominator(), &ExactPolynomial::one());
        assert_eq!(f.numerator(), &ExactPolynomial::from_ints(&[-1, 1]));
        let g = RationalFunction::new(ExactPolynomial::from_ints(&[3]), ExactPolynomial::from_ints(&[1, -2]));
        assert_eq!(g.denominator().leading(), Some(&q(1, 1)));
        assert_eq!(g.integer_numerator(), vec![BigInt::from(1)]);
    }

    #[test]
    fn primitive_form() {
        let p = ExactPolynomial::new(vec![q(-1, 2), q(4, 1), q(-5, 1)]);
        let ints: Vec<i64> = p.primitive_integer().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![1, -8, 10]);
    }
}
