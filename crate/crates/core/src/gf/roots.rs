use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::ExactPolynomial;

/// Cells narrower than this are not subdivided further while excluding roots.
const MIN_CELL_EXPONENT: u32 = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial vanishes at 0")]
    ZeroAtOrigin,
    #[error("no root of the polynomial in (0, 1/2]")]
    NoSignChange,
    #[error("could not certify an isolated simple root near {0}")]
    Uncertified(String),
}

/// How an interval is known to contain exactly one root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootCertificate {
    /// `p(lower)` and `p(upper)` have opposite signs and `p` is monotone between.
    SignChange,
    /// `lower = upper` and `p` vanishes there.
    ExactRoot,
}

/// Exact rational bracket around the smallest root of `p` in `(0, 1/2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lower: BigRational,
    pub upper: BigRational,
    pub certificate: RootCertificate,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// Checks the certificate against `p` again from scratch.
    pub fn verify(&self, p: &ExactPolynomial) -> bool {
        match self.certificate {
            RootCertificate::ExactRoot => self.lower == self.upper && p.eval(&self.lower).is_zero(),
            RootCertificate::SignChange => {
                let (a, b) = (p.eval(&self.lower), p.eval(&self.upper));
                self.lower < self.upper && (a * b).is_negative()
            }
        }
    }

    /// One bisection step that keeps the certificate.
    pub fn refine(&self, p: &ExactPolynomial) -> RootInterval {
        if self.certificate == RootCertificate::ExactRoot {
            return self.clone();
        }
        let mid = self.midpoint();
        let pm = p.eval(&mid);
        if pm.is_zero() {
            return RootInterval {
                lower: mid.clone(),
                upper: mid,
                certificate: RootCertificate::ExactRoot,
            };
        }
        if (p.eval(&self.lower) * &pm).is_negative() {
            RootInterval {
                lower: self.lower.clone(),
                upper: mid,
                certificate: RootCertificate::SignChange,
            }
        } else {
            RootInterval {
                lower: mid,
                upper: self.upper.clone(),
                certificate: RootCertificate::SignChange,
            }
        }
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `p` has no root on `[lo, hi]`: `|p(mid)|` exceeds the largest possible
/// change of `p` over half the cell.
fn root_free(p: &ExactPolynomial, lo: &BigRational, hi: &BigRational) -> bool {
    let mid = (lo + hi) * half();
    let radius = (hi - lo) * half();
    p.eval(&mid).abs() > p.derivative_bound(lo, hi) * radius
}

/// Smallest root of `p` in `(0, 1/2]`, bracketed to width at most `width`.
///
/// Root-free cells are discarded left to right using a derivative bound; the
/// first surviving cell must show a sign change (or an exact zero) and have a
/// derivative bounded away from zero, which makes the root inside it unique.
pub fn smallest_positive_root(p: &ExactPolynomial, width: &BigRational) -> Result<RootInterval, RootError> {
    assert!(width.is_positive(), "width must be positive");
    if p.eval(&BigRational::zero()).is_zero() {
        return Err(RootError::ZeroAtOrigin);
    }
    let dp = p.derivative();
    let min_cell = BigRational::new(1.into(), num_bigint::BigInt::one() << MIN_CELL_EXPONENT);
    // Depth-first, left cell first, so the first undecided cell is the leftmost one.
    let mut stack = vec![(BigRational::zero(), half())];
    while let Some((lo, hi)) = stack.pop() {
        if root_free(p, &lo, &hi) {
            continue;
        }
        let (plo, phi) = (p.eval(&lo), p.eval(&hi));
        if plo.is_zero() {
            // lo > 0 here: p(0) != 0 and every cell left of lo was root-free.
            return Ok(RootInterval {
                lower: lo.clone(),
                upper: lo,
                certificate: RootCertificate::ExactRoot,
            });
        }
        let monotone = root_free(&dp, &lo, &hi);
        if monotone && (phi.is_zero() || (&plo * &phi).is_negative()) {
            let mut iv = if phi.is_zero() {
                RootInterval {
                    lower: hi.clone(),
                    upper: hi,
                    certificate: RootCertificate::ExactRoot,
                }
            } else {
                RootInterval {
                    lower: lo,
                    upper: hi,
                    certificate: RootCertificate::SignChange,
                }
            };
            while iv.width() > *width {
                iv = iv.refine(p);
            }
            return Ok(iv);
        }
        if monotone {
            // Monotone without a sign change: no root here.
            continue;
        }
        if &hi - &lo < min_cell {
            return Err(RootError::Uncertified(format!("[{lo}, {hi}]")));
        }
        let mid = (&lo + &hi) * half();
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    Err(RootError::NoSignChange)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_root_is_exact() {
        let p = ExactPolynomial::from_ints(&[1, -2]);
        let iv = smallest_positive_root(&p, &q(1, 1 << 20)).unwrap();
        assert_eq!(iv.certificate, RootCertificate::ExactRoot);
        assert_eq!(iv.lower, q(1, 2));
        assert!(iv.verify(&p));
    }

    #[test]
    fn picks_the_smallest_root() {
        // (1 - 5x)(1 - 3x) has roots 1/5 and 1/3.
        let p = ExactPolynomial::from_ints(&[1, -8, 15]);
        let iv = smallest_positive_root(&p, &q(1, 1 << 30)).unwrap();
        assert!(iv.contains(&q(1, 5)));
        assert!(iv.verify(&p));
    }

    #[test]
    fn irrational_root_sign_change() {
        // 1 - 6x^2 vanishes at 1/sqrt(6) ~ 0.408.
        let p = ExactPolynomial::from_ints(&[1, 0, -6]);
        let w = q(1, 1 << 40);
        let iv = smallest_positive_root(&p, &w).unwrap();
        assert_eq!(iv.certificate, RootCertificate::SignChange);
        assert!(iv.width() <= w);
        assert!(iv.verify(&p));
        let inner = iv.refine(&p);
        assert!(inner.lower >= iv.lower && inner.upper <= iv.upper);
    }

    #[test]
    fn errors() {
        assert_eq!(
            smallest_positive_root(&ExactPolynomial::from_ints(&[1, 1]), &q(1, 8)).unwrap_err(),
            RootError::NoSignChange
        );
        assert_eq!(
            smallest_positive_root(&ExactPolynomial::from_ints(&[0, 1]), &q(1, 8)).unwrap_err(),
            RootError::ZeroAtOrigin
        );
    }
}
