//! Exact generating functions for Grandparent-graph bridges.
//!
//! `B_a(x) = Σ_n b_n(a) x^n` obeys a three-term recursion in `a` whose
//! coefficients are finite geometric sums in `2x`. Letting `a → ∞` on
//! `(0, 1/2)` turns those sums into rational functions; the bridge constant is
//! the reciprocal of the smallest `x` where the coefficients add up to 1.

mod poly;
mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use poly::{ExactPolynomial, RationalFunction};
pub use roots::{smallest_positive_root, RootCertificate, RootError, RootInterval};

use crate::enumerate::Direction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("U-walk series needs a >= 2 (got {0})")]
    SpanTooSmall(usize),
    #[error("precision must be at least 8 bits (got {0})")]
    PrecisionTooLow(u32),
    #[error(transparent)]
    Root(#[from] RootError),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn two_x() -> ExactPolynomial {
    ExactPolynomial::from_ints(&[0, 2])
}

/// `1 + 2x + … + (2x)^{k−1} = (1 − (2x)^k) / (1 − 2x)`, by exact division.
fn geometric(k: i64) -> ExactPolynomial {
    if k <= 0 {
        return ExactPolynomial::zero();
    }
    let num = &ExactPolynomial::one() - &two_x().pow(k as u32);
    num.div_exact(&ExactPolynomial::from_ints(&[1, -2]))
}

/// `U_a(x) = 4x² + 8x³ + … + (2x)^a`.
pub fn u_walk_gf(a: usize) -> Result<ExactPolynomial, GfError> {
    if a < 2 {
        return Err(GfError::SpanTooSmall(a));
    }
    Ok(ExactPolynomial::new(
        (0..=a)
            .map(|m| {
                if m < 2 {
                    q(0)
                } else {
                    BigRational::from_integer(BigInt::one() << m)
                }
            })
            .collect(),
    ))
}

/// A recursion coefficient `head + tail · (1 − (2x)^{a − offset}) / (1 − 2x)`.
#[derive(Debug, Clone)]
struct GeometricCoefficient {
    head: ExactPolynomial,
    tail: ExactPolynomial,
    offset: i64,
}

impl GeometricCoefficient {
    fn plain(head: ExactPolynomial) -> Self {
        GeometricCoefficient {
            head,
            tail: ExactPolynomial::zero(),
            offset: 0,
        }
    }

    fn at(&self, a: usize) -> ExactPolynomial {
        &self.head + &(&self.tail * &geometric(a as i64 - self.offset))
    }

    /// Limit `a → ∞` for `0 < x < 1/2`, where `(2x)^a → 0`.
    fn limit(&self) -> RationalFunction {
        let one_minus_2x = ExactPolynomial::from_ints(&[1, -2]);
        RationalFunction::new(&(&self.head * &one_minus_2x) + &self.tail, one_minus_2x)
    }
}

struct Recursion {
    base: [ExactPolynomial; 3],
    f: GeometricCoefficient,
    g: GeometricCoefficient,
    h: GeometricCoefficient,
}

fn mono(c: i64, k: usize) -> ExactPolynomial {
    ExactPolynomial::monomial(q(c), k)
}

fn recursion(direction: Direction) -> Recursion {
    match direction {
        Direction::Forward => Recursion {
            base: [
                ExactPolynomial::one(),
                mono(2, 1),
                ExactPolynomial::from_ints(&[0, 4, 4, 4]),
            ],
            f: GeometricCoefficient {
                head: mono(2, 1),
                tail: mono(2, 2),
                offset: 1,
            },
            g: GeometricCoefficient::plain(mono(4, 1)),
            h: GeometricCoefficient {
                head: mono(8, 3),
                tail: mono(8, 4),
                offset: 2,
            },
        },
        // Base cases fixed by brute-force enumeration of reversed bridges.
        Direction::Reversed => Recursion {
            base: [
                ExactPolynomial::one(),
                mono(1, 1),
                ExactPolynomial::from_ints(&[0, 1, 1]),
            ],
            f: GeometricCoefficient {
                head: mono(1, 1),
                tail: mono(1, 2),
                offset: 2,
            },
            g: GeometricCoefficient::plain(mono(1, 1)),
            h: GeometricCoefficient {
                head: mono(1, 3),
                tail: mono(1, 4),
                offset: 3,
            },
        },
    }
}

/// `B_0, …, B_{a_max}` (or the reversed `B̄_a`) as exact polynomials.
pub fn bridge_gfs(a_max: usize, direction: Direction) -> Vec<ExactPolynomial> {
    let rec = recursion(direction);
    let mut out: Vec<ExactPolynomial> = rec.base.iter().take(a_max + 1).cloned().collect();
    for a in 3..=a_max {
        let next = &(&(&rec.f.at(a) * &out[a - 1]) + &(&rec.g.at(a) * &out[a - 2])) + &(&rec.h.at(a) * &out[a - 3]);
        out.push(next);
    }
    out
}

/// `B_a(x)` (forward) or `B̄_a(x)` (reversed).
pub fn bridge_gf(a: usize, direction: Direction) -> ExactPolynomial {
    bridge_gfs(a, direction).pop().expect("a + 1 polynomials")
}

/// `1 − (f_∞ + g + h_∞)` in lowest terms.
pub fn threshold_rational(direction: Direction) -> RationalFunction {
    let rec = recursion(direction);
    let sum = &(&rec.f.limit() + &rec.g.limit()) + &rec.h.limit();
    &RationalFunction::polynomial(ExactPolynomial::one()) - &sum
}

/// The threshold numerator as a polynomial with primitive integer coefficients.
pub fn threshold_polynomial(direction: Direction) -> ExactPolynomial {
    ExactPolynomial::from_bigints(&threshold_rational(direction).integer_numerator())
}

/// Certified interval for a bridge constant, the reciprocal of the root interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantInterval {
    pub lower: BigRational,
    pub upper: BigRational,
    pub root: RootInterval,
}

impl ConstantInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

/// `β` (forward) or `β̄` (reversed) of the Grandparent graph, with the root
/// of the threshold polynomial bracketed to width `2^{−precision_bits}`.
pub fn bridge_constant_exact(direction: Direction, precision_bits: u32) -> Result<ConstantInterval, GfError> {
    if precision_bits < 8 {
        return Err(GfError::PrecisionTooLow(precision_bits));
    }
    let p = threshold_polynomial(direction);
    let width = BigRational::new(BigInt::one(), BigInt::one() << precision_bits);
    let root = smallest_positive_root(&p, &width)?;
    Ok(ConstantInterval {
        lower: root.upper.recip(),
        upper: root.lower.recip(),
        root,
    })
}
