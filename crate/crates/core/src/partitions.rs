//! Partitions into distinct parts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `P_D(A)`, the number of partitions of `a` into distinct positive parts.
pub fn distinct_partitions(a: usize) -> BigUint {
    distinct_partition_table(a).pop().expect("table has a + 1 entries")
}

/// `P_D(0), …, P_D(a_max)` in one pass.
pub fn distinct_partition_table(a_max: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); a_max + 1];
    table[0] = BigUint::one();
    // 0/1 knapsack over part sizes; descending sums use each part once.
    for part in 1..=a_max {
        for s in (part..=a_max).rev() {
            let add = table[s - part].clone();
            table[s] += add;
        }
    }
    table
}

/// All strictly decreasing positive sequences summing to `a`, largest first
/// part first (`6`, `5 1`, `4 2`, `3 2 1`), optionally limited to `max_len`
/// parts.
pub fn list_distinct_partitions(a: usize, max_len: Option<usize>) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            // The remaining parts are distinct and below `p`: at most p(p-1)/2.
            if rest - p > p * (p - 1) / 2 {
                break;
            }
            cur.push(p);
            go(rest - p, p - 1, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a, a, max_len.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

/// Natural logarithm of a positive big integer to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln P_D(A) / (π √(A/3))`, which tends to 1 from below.
pub fn hr_ratio(a: usize) -> f64 {
    assert!(a >= 1, "the ratio is defined for A >= 1");
    hr_ratio_of(a, &distinct_partitions(a))
}

/// The same ratio for a precomputed `P_D(a)`.
pub fn hr_ratio_of(a: usize, pd: &BigUint) -> f64 {
    ln_biguint(pd) / (std::f64::consts::PI * (a as f64 / 3.0).sqrt())
}
