//! Rigorous one-sided growth-rate bounds from exact counts.
//!
//! `c_n` is sub-multiplicative and `b_n` super-multiplicative, so by Fekete's
//! lemma every `c_n^{1/n}` bounds `μ` from above and every `b_n^{1/n}` bounds
//! `β` from below. Roots are rounded outward to 12 significant digits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::enumerate::{count_bridges_by_span, count_walks, Direction, EnumConfig, EnumError, WalkClass};
use crate::graph::HeightGraph;

const SIG_DIGITS: u32 = 12;

/// A non-negative decimal `mantissa · 10^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub mantissa: BigUint,
    pub exponent: i32,
}

impl Decimal {
    pub fn to_f64(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::INFINITY) * 10f64.powi(self.exponent)
    }

    fn zero() -> Self {
        Decimal {
            mantissa: BigUint::zero(),
            exponent: 0,
        }
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.min(other.exponent);
        let scale = |d: &Decimal| &d.mantissa * BigUint::from(10u32).pow((d.exponent - e) as u32);
        scale(self).cmp(&scale(other))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.to_string();
        if self.exponent >= 0 {
            return write!(f, "{digits}{}", "0".repeat(self.exponent as usize));
        }
        let frac = (-self.exponent) as usize;
        let padded = if digits.len() <= frac {
            format!("{}{digits}", "0".repeat(frac + 1 - digits.len()))
        } else {
            digits
        };
        let (int, dec) = padded.split_at(padded.len() - frac);
        write!(f, "{int}.{dec}")
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rounding {
    Down,
    Up,
}

/// `(m · 10^e)^n` compared with `c`, exactly.
fn cmp_power(m: &BigUint, e: i32, n: u32, c: &BigUint) -> Ordering {
    let lhs = Pow::pow(m, n);
    let ten = BigUint::from(10u32);
    if e >= 0 {
        (lhs * Pow::pow(&ten, e as u32 * n)).cmp(c)
    } else {
        lhs.cmp(&(c * Pow::pow(&ten, (-e) as u32 * n)))
    }
}

fn nth_root(c: &BigUint, n: u32, rounding: Rounding) -> Decimal {
    assert!(n >= 1, "root index must be positive");
    if c.is_zero() {
        return Decimal::zero();
    }
    let estimate = (crate::partitions::ln_biguint(c) / n as f64).exp();
    let e = estimate.log10().floor() as i32 - (SIG_DIGITS as i32 - 1);
    let mut m = BigUint::from((estimate / 10f64.powi(e)).round().max(1.0) as u64);
    // Walk m to the exact boundary; the float estimate is off by a few units at most.
    match rounding {
        Rounding::Down => {
            while cmp_power(&m, e, n, c) == Ordering::Greater {
                m -= 1u32;
            }
            while cmp_power(&(&m + 1u32), e, n, c) != Ordering::Greater {
                m += 1u32;
            }
        }
        Rounding::Up => {
            while cmp_power(&m, e, n, c) == Ordering::Less {
                m += 1u32;
            }
            while !m.is_zero() && cmp_power(&(&m - 1u32), e, n, c) != Ordering::Less {
                m -= 1u32;
            }
        }
    }
    Decimal {
        mantissa: m,
        exponent: e,
    }
}

/// `c^{1/n}` rounded down to 12 significant digits.
pub fn nth_root_down(c: &BigUint, n: u32) -> Decimal {
    nth_root(c, n, Rounding::Down)
}

/// `c^{1/n}` rounded up to 12 significant digits.
pub fn nth_root_up(c: &BigUint, n: u32) -> Decimal {
    nth_root(c, n, Rounding::Up)
}

/// `b^{1/n} ≤ c^{1/m}`, decided exactly as `b^m ≤ c^n`.
pub fn root_le(b: &BigUint, n: u32, c: &BigUint, m: u32) -> bool {
    Pow::pow(b, m) <= Pow::pow(c, n)
}

/// `c_n = max_v c_{n,v}` and `b_n = min_v b_{n,v}` (both directions) over
/// one representative per orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthCounts {
    pub model: String,
    #[serde(serialize_with = "crate::decimal::seq")]
    pub saw: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::seq")]
    pub bridge: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::seq")]
    pub reversed_bridge: Vec<BigUint>,
}

impl GrowthCounts {
    pub fn compute<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<Self, EnumError> {
        let reps = g.representatives();
        let mut saw: Option<Vec<BigUint>> = None;
        let mut bridge: Option<Vec<BigUint>> = None;
        let mut reversed: Option<Vec<BigUint>> = None;
        let fold = |acc: &mut Option<Vec<BigUint>>, new: Vec<BigUint>, keep_max: bool| {
            *acc = Some(match acc.take() {
                None => new,
                Some(old) => old
                    .into_iter()
                    .zip(new)
                    .map(|(a, b)| if (a < b) == keep_max { b } else { a })
                    .collect(),
            });
        };
        for v in &reps {
            fold(&mut saw, count_walks(g, v, WalkClass::Saw, n_max, cfg)?.counts, true);
            fold(
                &mut bridge,
                count_walks(g, v, WalkClass::Bridge, n_max, cfg)?.counts,
                false,
            );
            fold(
                &mut reversed,
                count_walks(g, v, WalkClass::ReversedBridge, n_max, cfg)?.counts,
                false,
            );
        }
        Ok(GrowthCounts {
            model: g.name().to_string(),
            saw: saw.expect("at least one orbit"),
            bridge: bridge.expect("at least one orbit"),
            reversed_bridge: reversed.expect("at least one orbit"),
        })
    }

    /// Like [`GrowthCounts::compute`] but takes bridge counts from span-table
    /// row sums, which is one pass per direction instead of a separate count.
    pub fn compute_via_spans<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<Self, EnumError> {
        let reps = g.representatives();
        let mut out = GrowthCounts {
            model: g.name().to_string(),
            saw: vec![BigUint::zero(); n_max + 1],
            bridge: Vec::new(),
            reversed_bridge: Vec::new(),
        };
        for v in &reps {
            let c = count_walks(g, v, WalkClass::Saw, n_max, cfg)?;
            for (a, b) in out.saw.iter_mut().zip(c.counts) {
                *a = (*a).clone().max(b);
            }
            for dir in Direction::BOTH {
                let t = count_bridges_by_span(g, v, dir, n_max, cfg)?;
                let sums: Vec<BigUint> = (0..=n_max).map(|n| t.row_sum(n)).collect();
                let slot = match dir {
                    Direction::Forward => &mut out.bridge,
                    Direction::Reversed => &mut out.reversed_bridge,
                };
                if slot.is_empty() {
                    *slot = sums;
                } else {
                    for (a, b) in slot.iter_mut().zip(sums) {
                        *a = (*a).clone().min(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn n_max(&self) -> usize {
        self.saw.len() - 1
    }

    pub fn bridges(&self, direction: Direction) -> &[BigUint] {
        match direction {
            Direction::Forward => &self.bridge,
            Direction::Reversed => &self.reversed_bridge,
        }
    }

    /// `c_n^{1/n}`, rounded up.
    pub fn mu_upper(&self, n: usize) -> Decimal {
        nth_root_up(&self.saw[n], n as u32)
    }

    /// `b_n^{1/n}` (or `b̄_n^{1/n}`), rounded down.
    pub fn beta_lower(&self, n: usize, direction: Direction) -> Decimal {
        nth_root_down(&self.bridges(direction)[n], n as u32)
    }

    /// `[max(b_n^{1/n}, b̄_n^{1/n}), c_n^{1/n}]`.
    pub fn mu_bracket(&self, n: usize) -> GrowthBracket {
        let (f, r) = (
            self.beta_lower(n, Direction::Forward),
            self.beta_lower(n, Direction::Reversed),
        );
        GrowthBracket {
            quantity: Quantity::Mu,
            lower: f.max(r),
            upper: self.mu_upper(n),
            lower_n: n,
            upper_n: n,
        }
    }

    /// `β` and `β̄` brackets at `n`: the Fekete lower bound and `c_n^{1/n}`.
    pub fn beta_bracket(&self, n: usize, direction: Direction) -> GrowthBracket {
        GrowthBracket {
            quantity: match direction {
                Direction::Forward => Quantity::Beta,
                Direction::Reversed => Quantity::BetaBar,
            },
            lower: self.beta_lower(n, direction),
            upper: self.mu_upper(n),
            lower_n: n,
            upper_n: n,
        }
    }

    /// Heuristic only: the last ratio `c_n / c_{n−1}`. Not a bound.
    pub fn ratio_estimate(&self) -> Option<f64> {
        let n = self.n_max();
        if n < 1 || self.saw[n - 1].is_zero() {
            return None;
        }
        Some((crate::partitions::ln_biguint(&self.saw[n]) - crate::partitions::ln_biguint(&self.saw[n - 1])).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Mu,
    Beta,
    BetaBar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthBracket {
    pub quantity: Quantity,
    pub lower: Decimal,
    pub upper: Decimal,
    pub lower_n: usize,
    pub upper_n: usize,
}

impl GrowthBracket {
    pub fn contains(&self, x: f64) -> bool {
        self.lower.to_f64() <= x && x <= self.upper.to_f64()
    }
}

/// `c_n^{1/n}` for `g`, maximised over orbit representatives.
pub fn mu_upper<G: HeightGraph>(g: &G, n: usize, cfg: &EnumConfig) -> Result<Decimal, EnumError> {
    assert!(n >= 1, "n must be positive");
    Ok(GrowthCounts::compute(g, n, cfg)?.mu_upper(n))
}

/// `b_n^{1/n}` for `g`, minimised over orbit representatives.
pub fn beta_lower<G: HeightGraph>(
    g: &G,
    n: usize,
    direction: Direction,
    cfg: &EnumConfig,
) -> Result<Decimal, EnumError> {
    assert!(n >= 1, "n must be positive");
    Ok(GrowthCounts::compute(g, n, cfg)?.beta_lower(n, direction))
}

pub fn mu_bracket<G: HeightGraph>(g: &G, n: usize, cfg: &EnumConfig) -> Result<GrowthBracket, EnumError> {
    assert!(n >= 1, "n must be positive");
    Ok(GrowthCounts::compute(g, n, cfg)?.mu_bracket(n))
}
