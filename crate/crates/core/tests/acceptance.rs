//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its `[PASS]` or `[FAIL]` line; exits non-zero if any fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use bridgewalk::constants::{root_le, GrowthCounts};
use bridgewalk::decompose::{build_bridge_pair, find_nu_walks, reconstruct_hsw};
use bridgewalk::enumerate::{collect_walks, count_bridges_by_span, Direction, EnumConfig, WalkClass};
use bridgewalk::gf::{bridge_constant_exact, bridge_gfs, threshold_polynomial, ExactPolynomial};
use bridgewalk::graph::{make_grandparent, make_honeycomb, make_lattice, HeightGraph, ModelKind};
use bridgewalk::partitions::{distinct_partition_table, hr_ratio};
use bridgewalk::verify::{all_pass, check_gp_exact_vs_enumeration, check_qt_pair_bound, CheckReport, Dataset};
use bridgewalk::with_model;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

fn verdict(id: u32, what: &str, pass: bool, detail: String, elapsed: Duration) -> bool {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] criterion {id}: {what} ({detail}; {:.3} s)",
        elapsed.as_secs_f64()
    );
    pass
}

fn failures(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}/{}: {:?}", r.model, r.name, r.counterexample))
        .collect::<Vec<_>>()
        .join("; ")
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("finite")
}

fn criterion_1_gp_exact_constants() -> bool {
    let t = Instant::now();
    let fwd = bridge_constant_exact(Direction::Forward, 64).unwrap();
    let rev = bridge_constant_exact(Direction::Reversed, 64).unwrap();
    let elapsed = t.elapsed();
    let within = |lo: &BigRational, hi: &BigRational, target: f64| {
        (to_f64(lo) - target).abs() <= 1e-4 && (to_f64(hi) - target).abs() <= 1e-4
    };
    let mu_is_forward = fwd.lower > rev.upper;
    let pass = within(&fwd.lower, &fwd.upper, 6.64993)
        && within(&rev.lower, &rev.upper, 3.10380)
        && mu_is_forward
        && elapsed < Duration::from_secs(1);
    let detail = format!(
        "beta in [{:.10}, {:.10}], beta_bar in [{:.10}, {:.10}], mu = max = forward: {mu_is_forward}",
        to_f64(&fwd.lower),
        to_f64(&fwd.upper),
        to_f64(&rev.lower),
        to_f64(&rev.upper)
    );
    verdict(1, "GP exact constants", pass, detail, elapsed)
}

fn criterion_2_threshold_quartics() -> bool {
    let t = Instant::now();
    let fwd = threshold_polynomial(Direction::Forward);
    let rev = threshold_polynomial(Direction::Reversed);
    let pass =
        fwd == ExactPolynomial::from_ints(&[1, -8, 10, -8, 8]) && rev == ExactPolynomial::from_ints(&[1, -4, 3, -1, 1]);
    verdict(
        2,
        "threshold polynomials",
        pass,
        format!("forward {fwd}, reversed {rev}"),
        t.elapsed(),
    )
}

fn criterion_3_gf_matches_enumeration() -> bool {
    let t = Instant::now();
    let report = check_gp_exact_vs_enumeration(9, 6, &cfg()).unwrap();

    // The printed low-span series, against enumeration directly.
    let g = make_grandparent();
    let spans = count_bridges_by_span(&g, &g.origin(), Direction::Forward, 9, &cfg()).unwrap();
    let printed: [(i64, &[(usize, u32)]); 3] = [(0, &[(0, 1)]), (1, &[(1, 2)]), (2, &[(1, 4), (2, 4), (3, 4)])];
    let mut printed_ok = true;
    for (a, terms) in printed {
        let gf = &bridge_gfs(2, Direction::Forward)[a as usize];
        for n in 0..=9 {
            let want = terms.iter().find(|(m, _)| *m == n).map_or(0, |t| t.1);
            printed_ok &= spans.get(n, a) == BigUint::from(want);
            printed_ok &= gf.coeff(n) == BigRational::from_integer(want.into());
        }
    }
    let elapsed = t.elapsed();
    let pass = report.pass && printed_ok && elapsed <= Duration::from_secs(60);
    let detail = format!(
        "{} coefficients compared, B0/B1/B2 as printed: {printed_ok}, counterexample: {:?}",
        report.instances, report.counterexample
    );
    verdict(3, "GF/enumeration agreement", pass, detail, elapsed)
}

fn criterion_4_inequality_suite() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    for (kind, n) in [(ModelKind::Z1, 10), (ModelKind::Z2, 10), (ModelKind::Gp, 7)] {
        with_model!(kind, |g| {
            let d = Dataset::compute(g, n, 0, &cfg()).unwrap();
            reports.extend([
                d.check_span_sum(),
                d.check_signature_sum(),
                d.check_hsw_pair_bound(),
                d.check_hsw_pd_bound(),
                d.check_saw_split_bound(),
                d.check_multiplicativity(),
            ]);
        });
    }
    let elapsed = t.elapsed();
    let pass = all_pass(&reports) && elapsed <= Duration::from_secs(300);
    let detail = format!("{} reports, failures: [{}]", reports.len(), failures(&reports));
    verdict(4, "inequality suite on z1, z2, gp", pass, detail, elapsed)
}

fn criterion_5_quasi_transitive() -> bool {
    let t = Instant::now();
    let g = make_honeycomb();
    let nu = find_nu_walks(&g, 4).unwrap();
    let reports = check_qt_pair_bound(&g, 9, 7, &cfg()).unwrap();
    let elapsed = t.elapsed();
    let pass = nu.r == 1 && all_pass(&reports) && elapsed <= Duration::from_secs(60);
    let detail = format!(
        "r = {}, {} reports, failures: [{}]",
        nu.r,
        reports.len(),
        failures(&reports)
    );
    verdict(5, "honeycomb connector machinery", pass, detail, elapsed)
}

fn round_trip<G: HeightGraph>(g: &G, n_max: usize) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut total = 0;
    for v in g.representatives() {
        let mut images = HashMap::new();
        // The empty walk has no parts to decompose.
        for n in 1..=n_max {
            for w in collect_walks(g, &v, WalkClass::Hsw, n) {
                total += 1;
                let pair = match build_bridge_pair(g, &w, None) {
                    Ok(p) => p,
                    Err(e) => {
                        bad.push(format!("{} [{}]: {e}", g.name(), w.label_string()));
                        continue;
                    }
                };
                match reconstruct_hsw(g, &pair) {
                    Ok(back) if back == w => {}
                    Ok(back) => bad.push(format!(
                        "{} [{}] came back as [{}]",
                        g.name(),
                        w.label_string(),
                        back.label_string()
                    )),
                    Err(e) => bad.push(format!("{} [{}]: {e}", g.name(), w.label_string())),
                }
                let key = (
                    pair.spans.clone(),
                    pair.plus.vertices().to_vec(),
                    pair.minus.vertices().to_vec(),
                );
                if let Some(prev) = images.insert(key, w.label_string()) {
                    bad.push(format!(
                        "{}: [{prev}] and [{}] share a pair",
                        g.name(),
                        w.label_string()
                    ));
                }
            }
        }
    }
    (total, bad)
}

fn criterion_6_round_trip() -> bool {
    let t = Instant::now();
    let (nz, mut bad) = round_trip(&make_lattice(2), 6);
    let (ng, bad_gp) = round_trip(&make_grandparent(), 6);
    bad.extend(bad_gp);
    let elapsed = t.elapsed();
    let detail = format!(
        "{nz} walks on z2, {ng} on gp, first problems: {:?}",
        &bad[..bad.len().min(3)]
    );
    verdict(
        6,
        "decomposition round trip and injectivity",
        bad.is_empty(),
        detail,
        elapsed,
    )
}

fn subset_oracle(a_max: usize) -> Vec<BigUint> {
    // Count subsets of {1..a_max} by their sum, one part at a time.
    let mut ways = vec![BigUint::from(0u32); a_max + 1];
    ways[0] = BigUint::from(1u32);
    for part in 1..=a_max {
        for s in (part..=a_max).rev() {
            let add = ways[s - part].clone();
            ways[s] += add;
        }
    }
    ways
}

fn brute_subsets(a_max: usize) -> Vec<u64> {
    // Explicit enumeration of subsets of {1..a_max} with sum ≤ a_max.
    let mut out = vec![0u64; a_max + 1];
    fn go(next: usize, sum: usize, a_max: usize, out: &mut [u64]) {
        out[sum] += 1;
        for p in next..=a_max {
            if sum + p > a_max {
                break;
            }
            go(p + 1, sum + p, a_max, out);
        }
    }
    go(1, 0, a_max, &mut out);
    out
}

fn criterion_7_partitions() -> bool {
    let t = Instant::now();
    let table = distinct_partition_table(30);
    let brute = brute_subsets(30);
    let oracle_ok = table == subset_oracle(30) && table.iter().zip(&brute).all(|(a, b)| *a == BigUint::from(*b));
    let ratios: Vec<f64> = [250, 500, 1000, 2000].iter().map(|&a| hr_ratio(a)).collect();
    let increasing = ratios.windows(2).all(|w| w[0] < w[1]) && ratios.iter().all(|r| *r <= 1.0);
    let r1000 = ratios[2];
    let elapsed = t.elapsed();
    let pass = oracle_ok && (0.85..=1.0).contains(&r1000) && increasing && elapsed <= Duration::from_secs(10);
    let detail = format!(
        "oracle A <= 30: {oracle_ok}, P_D(30) = {}, ratios {ratios:.6?}",
        table[30]
    );
    verdict(7, "distinct partitions", pass, detail, elapsed)
}

fn criterion_8_fekete_consistency() -> bool {
    let t = Instant::now();
    let plan = [
        (ModelKind::Z1, 14),
        (ModelKind::Z2, 11),
        (ModelKind::Z3, 8),
        (ModelKind::T3, 12),
        (ModelKind::Gp, 9),
        (ModelKind::Honeycomb, 14),
    ];
    let mut problems = Vec::new();
    let mut gp_bracket = String::new();
    let mut gp_contains = false;
    for (kind, n_max) in plan {
        let counts = with_model!(kind, |g| GrowthCounts::compute(g, n_max, &cfg()).unwrap());
        for dir in Direction::BOTH {
            let b = counts.bridges(dir);
            for (n, bn) in b.iter().enumerate().skip(1) {
                for (m, cm) in counts.saw.iter().enumerate().skip(1) {
                    if !root_le(bn, n as u32, cm, m as u32) {
                        problems.push(format!("{kind} {dir:?}: b_{n}^(1/{n}) > c_{m}^(1/{m})"));
                    }
                }
            }
        }
        if kind == ModelKind::Gp {
            let br = counts.mu_bracket(9);
            gp_contains = br.contains(6.64993);
            gp_bracket = format!("[{}, {}]", br.lower, br.upper);
        }
    }
    let elapsed = t.elapsed();
    let pass = problems.is_empty() && gp_contains;
    let detail = format!(
        "gp bracket at n = 9: {gp_bracket}, crossings: {:?}",
        &problems[..problems.len().min(3)]
    );
    verdict(8, "Fekete bracket consistency", pass, detail, elapsed)
}

fn main() {
    let criteria: [fn() -> bool; 8] = [
        criterion_1_gp_exact_constants,
        criterion_2_threshold_quartics,
        criterion_3_gf_matches_enumeration,
        criterion_4_inequality_suite,
        criterion_5_quasi_transitive,
        criterion_6_round_trip,
        criterion_7_partitions,
        criterion_8_fekete_consistency,
    ];
    let passed = criteria.iter().filter(|c| c()).count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
