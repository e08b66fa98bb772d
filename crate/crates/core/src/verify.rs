//! Exact finite-n checks of the counting identities and inequalities that
//! relate self-avoiding walks, half-space walks and bridges.
//!
//! Every check compares exact integers and reports the smallest margin
//! `rhs − lhs` it saw. Checks on quasi-transitive models run once per orbit
//! representative.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::decompose::{build_bridge_pair, find_nu_walks, DecomposeError, NuTable};
use crate::enumerate::{
    collect_walks, count_bridges_by_span, count_walks, hsw_signatures_upto, Direction, EnumConfig, EnumError,
    Signature, SpanTable, WalkClass,
};
use crate::gf::bridge_gfs;
use crate::graph::{make_grandparent, HeightGraph};
use crate::partitions::distinct_partition_table;

/// Largest `r` tried when searching connector walks for the suite.
pub const NU_SEARCH_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub model: String,
    pub range: String,
    pub pass: bool,
    /// Smallest `rhs − lhs` over all instances (zero for identities that hold).
    #[serde(serialize_with = "ser_opt_bigint")]
    pub worst_margin: Option<BigInt>,
    pub counterexample: Option<String>,
    pub instances: usize,
}

fn ser_opt_bigint<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// Accumulates instances of one check.
struct Tally {
    report: CheckReport,
    identity: bool,
}

impl Tally {
    fn new(name: &str, model: &str, range: String, identity: bool) -> Self {
        Tally {
            report: CheckReport {
                name: name.to_string(),
                model: model.to_string(),
                range,
                pass: true,
                worst_margin: None,
                counterexample: None,
                instances: 0,
            },
            identity,
        }
    }

    /// Records `lhs ≤ rhs` (or `lhs = rhs` for identities).
    fn record(&mut self, lhs: &BigUint, rhs: &BigUint, describe: impl FnOnce() -> String) {
        let margin = BigInt::from(rhs.clone()) - BigInt::from(lhs.clone());
        let ok = if self.identity { margin.is_zero() } else { lhs <= rhs };
        self.report.instances += 1;
        // For identities the "worst" margin is the one furthest from zero.
        let worse = match &self.report.worst_margin {
            None => true,
            Some(w) if self.identity => margin.magnitude() > w.magnitude(),
            Some(w) => margin < *w,
        };
        if worse {
            self.report.worst_margin = Some(margin);
        }
        if !ok && self.report.pass {
            self.report.pass = false;
            self.report.counterexample = Some(format!("{}: lhs = {lhs}, rhs = {rhs}", describe()));
        }
    }

    fn fail(&mut self, what: String) {
        self.report.instances += 1;
        if self.report.pass {
            self.report.pass = false;
            self.report.counterexample = Some(what);
        }
    }

    fn finish(self) -> CheckReport {
        self.report
    }
}

fn range(n_max: usize) -> String {
    format!("n <= {n_max}")
}

fn sig_string(sig: &[i64]) -> String {
    let parts: Vec<String> = sig.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Exact counts from one start vertex.
pub struct OrbitData {
    pub vertex: String,
    pub saw: Vec<BigUint>,
    /// HSW counts to `n_max + 1` (the SAW split needs one extra length).
    pub hsw: Vec<BigUint>,
    /// Bridge counts from the literal class test, `[forward, reversed]`.
    pub bridges: [Vec<BigUint>; 2],
    pub spans: [SpanTable; 2],
    pub signatures: Vec<BTreeMap<Signature, BigUint>>,
}

/// Everything the checks need, computed once per model.
pub struct Dataset {
    pub model: String,
    pub n_max: usize,
    pub d: i64,
    pub transitive: bool,
    pub orbits: Vec<OrbitData>,
}

impl Dataset {
    /// Span tables are computed to `n_max + span_extra`.
    pub fn compute<G: HeightGraph>(
        g: &G,
        n_max: usize,
        span_extra: usize,
        cfg: &EnumConfig,
    ) -> Result<Self, EnumError> {
        let mut orbits = Vec::new();
        for v in g.representatives() {
            let saw = count_walks(g, &v, WalkClass::Saw, n_max, cfg)?.counts;
            let hsw = count_walks(g, &v, WalkClass::Hsw, n_max + 1, cfg)?.counts;
            let fwd = count_walks(g, &v, WalkClass::Bridge, n_max, cfg)?.counts;
            let rev = count_walks(g, &v, WalkClass::ReversedBridge, n_max, cfg)?.counts;
            let sf = count_bridges_by_span(g, &v, Direction::Forward, n_max + span_extra, cfg)?;
            let sr = count_bridges_by_span(g, &v, Direction::Reversed, n_max + span_extra, cfg)?;
            let signatures = hsw_signatures_upto(g, &v, n_max, cfg)?;
            orbits.push(OrbitData {
                vertex: v.to_string(),
                saw,
                hsw,
                bridges: [fwd, rev],
                spans: [sf, sr],
                signatures,
            });
        }
        Ok(Dataset {
            model: g.name().to_string(),
            n_max,
            d: g.height_lipschitz(),
            transitive: g.is_transitive(),
            orbits,
        })
    }

    /// `b_n = Σ_{a ≤ dn} b_n(a)` in both directions.
    pub fn check_span_sum(&self) -> CheckReport {
        let mut t = Tally::new("span_sum", &self.model, range(self.n_max), true);
        for o in &self.orbits {
            for (k, dir) in Direction::BOTH.into_iter().enumerate() {
                for n in 0..=self.n_max {
                    let sum = o.spans[k].row_sum(n);
                    t.record(&sum, &o.bridges[k][n], || format!("v={} {:?} n={n}", o.vertex, dir));
                }
            }
        }
        t.finish()
    }

    /// `h_n = Σ_sig h_n(sig)` and `h_n(a) = b_n(a)` for single spans.
    pub fn check_signature_sum(&self) -> CheckReport {
        let mut t = Tally::new("signature_sum", &self.model, range(self.n_max), true);
        for o in &self.orbits {
            for n in 1..=self.n_max {
                let sum: BigUint = o.signatures[n].values().sum();
                t.record(&sum, &o.hsw[n], || format!("v={} n={n}", o.vertex));
                for (sig, count) in &o.signatures[n] {
                    if let [a] = sig[..] {
                        t.record(count, &o.spans[0].get(n, a), || {
                            format!("v={} n={n} span {a}", o.vertex)
                        });
                    }
                }
            }
        }
        t.finish()
    }

    /// `h_n(a_1, …, a_k) ≤ Σ_m b_m(a_1 + a_3 + …) b̄_{n−m}(a_2 + a_4 + …)`.
    pub fn check_hsw_pair_bound(&self) -> CheckReport {
        let mut t = Tally::new("hsw_pair_bound", &self.model, range(self.n_max), false);
        for o in &self.orbits {
            for n in 1..=self.n_max {
                for (sig, count) in &o.signatures[n] {
                    let (odd, even) = split_sums(sig);
                    let rhs: BigUint = (0..=n)
                        .map(|m| o.spans[0].get(m, odd) * o.spans[1].get(n - m, even))
                        .sum();
                    t.record(count, &rhs, || format!("v={} n={n} sig={}", o.vertex, sig_string(sig)));
                }
            }
        }
        t.finish()
    }

    /// `h_n ≤ P_D(dn) Σ_m b_m b̄_{n−m}`.
    pub fn check_hsw_pd_bound(&self) -> CheckReport {
        let mut t = Tally::new("hsw_pd_bound", &self.model, range(self.n_max), false);
        let pd = distinct_partition_table(self.d as usize * self.n_max);
        for o in &self.orbits {
            for n in 0..=self.n_max {
                let conv: BigUint = (0..=n).map(|m| &o.bridges[0][m] * &o.bridges[1][n - m]).sum();
                let rhs = &pd[self.d as usize * n] * conv;
                t.record(&o.hsw[n], &rhs, || format!("v={} n={n}", o.vertex));
            }
        }
        t.finish()
    }

    /// `c_n ≤ Σ_l h_{n−l} h_{l+1}` with `c_n` and `h_n` maximised over orbits.
    pub fn check_saw_split_bound(&self) -> CheckReport {
        let mut t = Tally::new("saw_split_bound", &self.model, range(self.n_max), false);
        let max_over = |f: &dyn Fn(&OrbitData) -> &BigUint| self.orbits.iter().map(f).max().expect("orbits").clone();
        for n in 0..=self.n_max {
            let c = max_over(&|o| &o.saw[n]);
            let rhs: BigUint = (0..=n)
                .map(|l| max_over(&|o| &o.hsw[n - l]) * max_over(&|o| &o.hsw[l + 1]))
                .sum();
            t.record(&c, &rhs, || format!("n={n}"));
        }
        t.finish()
    }

    /// `c_{n+m} ≤ c_n c_m` and `b_n b_m ≤ b_{n+m}` (both directions).
    pub fn check_multiplicativity(&self) -> CheckReport {
        let mut t = Tally::new(
            "multiplicativity",
            &self.model,
            format!("n + m <= {}", self.n_max),
            false,
        );
        let c: Vec<BigUint> = (0..=self.n_max)
            .map(|n| self.orbits.iter().map(|o| &o.saw[n]).max().expect("orbits").clone())
            .collect();
        let b = |k: usize| -> Vec<BigUint> {
            (0..=self.n_max)
                .map(|n| {
                    self.orbits
                        .iter()
                        .map(|o| &o.bridges[k][n])
                        .min()
                        .expect("orbits")
                        .clone()
                })
                .collect()
        };
        let (bf, br) = (b(0), b(1));
        for n in 1..=self.n_max {
            for m in 1..=self.n_max - n {
                t.record(&c[n + m], &(&c[n] * &c[m]), || format!("c: n={n} m={m}"));
                t.record(&(&bf[n] * &bf[m]), &bf[n + m], || format!("b: n={n} m={m}"));
                t.record(&(&br[n] * &br[m]), &br[n + m], || format!("reversed b: n={n} m={m}"));
            }
        }
        t.finish()
    }

    /// The quasi-transitive pair bound with connector length `r`:
    /// `h_{n,v}(sig) ≤ (r+1)^{k−1} Σ_m (Σ_{s ≤ kr} Σ_t b_{m+s,v}(A+t)) (Σ_{s′ ≤ kr} Σ_{t′} b̄_{n−m+s′,v}(B+t′))`.
    ///
    /// Span tables must reach `n_max + k·r` for the longest signature.
    pub fn check_qt_pair_bound(&self, r: usize) -> CheckReport {
        let mut t = Tally::new(
            "qt_pair_bound",
            &self.model,
            format!("{}, r = {r}", range(self.n_max)),
            false,
        );
        for o in &self.orbits {
            for n in 1..=self.n_max {
                for (sig, count) in &o.signatures[n] {
                    let k = sig.len();
                    let (odd, even) = split_sums(sig);
                    let reach = k * r;
                    let top = o.spans[0].n_max();
                    if n + reach > top {
                        t.fail(format!("span tables stop at n = {top}, need {}", n + reach));
                        continue;
                    }
                    let side = |table: &SpanTable, len: usize, span: i64| -> BigUint {
                        (0..=reach).map(|s| table.tail(len + s, span)).sum()
                    };
                    let sum: BigUint = (0..=n)
                        .map(|m| side(&o.spans[0], m, odd) * side(&o.spans[1], n - m, even))
                        .sum();
                    let factor = Pow::pow(BigUint::from(r + 1), (k - 1) as u32);
                    t.record(count, &(factor * sum), || {
                        format!("v={} n={n} sig={}", o.vertex, sig_string(sig))
                    });
                }
            }
        }
        t.finish()
    }
}

/// `(a_1 + a_3 + …, a_2 + a_4 + …)`.
fn split_sums(sig: &[i64]) -> (i64, i64) {
    let odd = sig.iter().step_by(2).sum();
    let even = sig.iter().skip(1).step_by(2).sum();
    (odd, even)
}

/// Largest signature length possible for HSWs of length at most `n`:
/// the largest `k` with `k(k+1)/2 ≤ d·n`.
pub fn max_signature_len(d: i64, n: usize) -> usize {
    let total = d as usize * n;
    (0..).take_while(|k| k * (k + 1) / 2 <= total).last().unwrap_or(0)
}

pub fn check_span_sum<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<CheckReport, VerifyError> {
    Ok(Dataset::compute(g, n_max, 0, cfg)?.check_span_sum())
}

pub fn check_signature_sum<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<CheckReport, VerifyError> {
    Ok(Dataset::compute(g, n_max, 0, cfg)?.check_signature_sum())
}

pub fn check_hsw_pair_bound<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<CheckReport, VerifyError> {
    Ok(Dataset::compute(g, n_max, 0, cfg)?.check_hsw_pair_bound())
}

pub fn check_hsw_pd_bound<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<CheckReport, VerifyError> {
    Ok(Dataset::compute(g, n_max, 0, cfg)?.check_hsw_pd_bound())
}

pub fn check_saw_split_bound<G: HeightGraph>(
    g: &G,
    n_max: usize,
    cfg: &EnumConfig,
) -> Result<CheckReport, VerifyError> {
    Ok(Dataset::compute(g, n_max, 0, cfg)?.check_saw_split_bound())
}

pub fn check_multiplicativity<G: HeightGraph>(
    g: &G,
    n_max: usize,
    cfg: &EnumConfig,
) -> Result<CheckReport, VerifyError> {
    Ok(Dataset::compute(g, n_max, 0, cfg)?.check_multiplicativity())
}

/// Quasi-transitive pair bound plus the connector multiplicity audit on
/// HSWs of length at most `audit_n`.
pub fn check_qt_pair_bound<G: HeightGraph>(
    g: &G,
    n_max: usize,
    audit_n: usize,
    cfg: &EnumConfig,
) -> Result<Vec<CheckReport>, VerifyError> {
    let nu = find_nu_walks(g, NU_SEARCH_BOUND)?;
    let extra = max_signature_len(g.height_lipschitz(), n_max) * nu.r;
    let data = Dataset::compute(g, n_max, extra, cfg)?;
    Ok(vec![
        data.check_qt_pair_bound(nu.r),
        audit_nu_multiplicity(g, &nu, audit_n)?,
    ])
}

type PairKey<V> = (Signature, Vec<V>, Vec<V>);

/// Counts how often each `(n, signature, π₊, π₋)` arises and checks that no
/// pair is produced more than `(r+1)^{k−1}` times.
pub fn audit_nu_multiplicity<G: HeightGraph>(
    g: &G,
    nu: &NuTable<G::Vertex, G::Label>,
    n_max: usize,
) -> Result<CheckReport, VerifyError> {
    let mut t = Tally::new(
        "nu_multiplicity",
        g.name(),
        format!("{}, r = {}", range(n_max), nu.r),
        false,
    );
    for v in g.representatives() {
        for n in 1..=n_max {
            let mut seen: HashMap<PairKey<G::Vertex>, (usize, String)> = HashMap::new();
            for w in collect_walks(g, &v, WalkClass::Hsw, n) {
                let pair = build_bridge_pair(g, &w, Some(nu))?;
                let key = (
                    pair.spans.clone(),
                    pair.plus.vertices().to_vec(),
                    pair.minus.vertices().to_vec(),
                );
                let entry = seen.entry(key).or_insert_with(|| (0, w.label_string()));
                entry.0 += 1;
            }
            let mut groups: Vec<_> = seen.into_iter().collect();
            groups.sort_by(|a, b| a.1 .1.cmp(&b.1 .1));
            for ((sig, _, _), (count, first)) in groups {
                let bound = Pow::pow(BigUint::from(nu.r + 1), (sig.len() - 1) as u32);
                t.record(&BigUint::from(count), &bound, || {
                    format!("v={v} n={n} sig={} first walk [{first}]", sig_string(&sig))
                });
            }
        }
    }
    Ok(t.finish())
}

/// `[x^n] B_a(x) = b_n(a)` on the Grandparent graph for `n ≤ n_max`, `a ≤ a_max`, both directions.
pub fn check_gp_exact_vs_enumeration(n_max: usize, a_max: usize, cfg: &EnumConfig) -> Result<CheckReport, VerifyError> {
    let g = make_grandparent();
    let o = g.origin();
    let mut t = Tally::new(
        "gp_exact_vs_enumeration",
        g.name(),
        format!("n <= {n_max}, a <= {a_max}"),
        true,
    );
    for dir in Direction::BOTH {
        let table = count_bridges_by_span(&g, &o, dir, n_max, cfg)?;
        let gfs = bridge_gfs(a_max, dir);
        for (a, p) in gfs.iter().enumerate() {
            for n in 0..=n_max {
                let c = p.coeff(n);
                let lhs = match (c.is_integer(), c.to_integer().to_biguint()) {
                    (true, Some(v)) => v,
                    _ => {
                        t.fail(format!(
                            "{dir:?} a={a} n={n}: coefficient {c} is not a non-negative integer"
                        ));
                        continue;
                    }
                };
                t.record(&lhs, &table.get(n, a as i64), || format!("{dir:?} a={a} n={n}"));
            }
        }
    }
    Ok(t.finish())
}

/// The checks that apply to `g`, at lengths up to `n_max`.
///
/// Transitive models get the six transitive checks; quasi-transitive models
/// replace the two pair bounds with the connector-walk bound and audit.
/// The Grandparent model additionally gets the generating-function check
/// (capped at `n ≤ 9`, `a ≤ 6`).
pub fn run_suite<G: HeightGraph>(g: &G, n_max: usize, cfg: &EnumConfig) -> Result<Vec<CheckReport>, VerifyError> {
    let mut out = Vec::new();
    if g.is_transitive() {
        let data = Dataset::compute(g, n_max, 0, cfg)?;
        out.push(data.check_span_sum());
        out.push(data.check_signature_sum());
        out.push(data.check_hsw_pair_bound());
        out.push(data.check_hsw_pd_bound());
        out.push(data.check_saw_split_bound());
        out.push(data.check_multiplicativity());
    } else {
        let nu = find_nu_walks(g, NU_SEARCH_BOUND)?;
        let extra = max_signature_len(g.height_lipschitz(), n_max) * nu.r;
        let data = Dataset::compute(g, n_max, extra, cfg)?;
        out.push(data.check_span_sum());
        out.push(data.check_signature_sum());
        out.push(data.check_saw_split_bound());
        out.push(data.check_multiplicativity());
        out.push(data.check_qt_pair_bound(nu.r));
        out.push(audit_nu_multiplicity(g, &nu, n_max.min(7))?);
    }
    if g.name() == "gp" {
        out.push(check_gp_exact_vs_enumeration(n_max.min(9), 6, cfg)?);
    }
    Ok(out)
}

/// True when every report passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
