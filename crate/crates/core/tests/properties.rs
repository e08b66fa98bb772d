use std::collections::HashMap;

use bridgewalk::constants::{nth_root_down, nth_root_up, root_le, GrowthCounts};
use bridgewalk::decompose::{ball, build_bridge_pair, decompose_hsw, hsw_cuts, split_saw_at_min};
use bridgewalk::enumerate::{collect_walks, count_hsws_by_signature, count_walks, Direction, EnumConfig, WalkClass};
use bridgewalk::gf::{bridge_constant_exact, smallest_positive_root, ExactPolynomial};
use bridgewalk::graph::{apply_steps, make_grandparent, make_lattice, validate_model, HeightGraph, ModelKind, Walk};
use bridgewalk::partitions::distinct_partition_table;
use bridgewalk::verify::max_signature_len;
use bridgewalk::with_model;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

type W<G> = Walk<<G as HeightGraph>::Vertex, <G as HeightGraph>::Label>;

/// A walk (not necessarily self-avoiding) picking neighbour `choice % degree` at each step.
fn random_walk<G: HeightGraph>(g: &G, start: &G::Vertex, choices: &[u8]) -> W<G> {
    let mut v = start.clone();
    let mut labels = Vec::new();
    for &c in choices {
        let nb = g.neighbors(&v);
        let (l, u) = nb[c as usize % nb.len()].clone();
        labels.push(l);
        v = u;
    }
    apply_steps(g, start, &labels).expect("labels come from the model")
}

fn local_axioms<G: HeightGraph>(g: &G, choices: &[u8], orbit: usize) {
    let reps = g.representatives();
    let w = random_walk(g, &reps[orbit % reps.len()], choices);
    let d = g.height_lipschitz();
    for v in w.vertices() {
        let nb = g.neighbors(v);
        assert!(nb.windows(2).all(|p| p[0].0 < p[1].0), "labels ascending at {v}");
        let h = g.height(v);
        assert!(nb.iter().any(|(_, u)| g.height(u) > h));
        assert!(nb.iter().any(|(_, u)| g.height(u) < h));
        for (l, u) in &nb {
            assert_ne!(u, v);
            assert!((g.height(u) - h).abs() <= d);
            assert_eq!(g.step(v, *l).as_ref(), Some(u));
            let back = g.label_between(u, v).expect("adjacency is symmetric");
            assert_eq!(&g.step(u, back).unwrap(), v);
            assert_eq!(g.parse_label(&l.to_string()).unwrap(), *l);
        }
    }
}

fn transport_inverse<G: HeightGraph>(g: &G, a: &[u8], b: &[u8], c: &[u8]) {
    for o in g.representatives() {
        let x = random_walk(g, &o, a).end().clone();
        let y = random_walk(g, &o, b).end().clone();
        let w = random_walk(g, &o, c).end().clone();
        let there = g.transport(&x, &y, &w).expect("same orbit");
        assert_eq!(g.transport(&y, &x, &there).unwrap(), w);
        assert_eq!(g.transport(&x, &x, &w).unwrap(), w);
        assert_eq!(g.transport(&x, &y, &x).unwrap(), y);
        assert_eq!(g.height(&there) - g.height(&y), g.height(&w) - g.height(&x));
        assert_eq!(g.orbit(&there), g.orbit(&w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_axioms_along_random_walks(choices in prop::collection::vec(any::<u8>(), 0..40), orbit in 0usize..2) {
        for kind in ModelKind::ALL {
            with_model!(kind, |g| local_axioms(g, &choices, orbit));
        }
    }

    #[test]
    fn label_replay_round_trip(choices in prop::collection::vec(any::<u8>(), 0..30)) {
        for kind in ModelKind::ALL {
            with_model!(kind, |g| {
                let w = random_walk(g, &g.origin(), &choices);
                let again = apply_steps(g, w.root(), w.steps()).unwrap();
                prop_assert_eq!(&again, &w);
                let rev = w.reversed(g);
                prop_assert_eq!(rev.reversed(g), w);
            });
        }
    }

    #[test]
    fn transport_is_invertible(
        a in prop::collection::vec(any::<u8>(), 0..12),
        b in prop::collection::vec(any::<u8>(), 0..12),
        c in prop::collection::vec(any::<u8>(), 0..12),
    ) {
        // Walks of even length stay in the origin's orbit on the honeycomb.
        let even = |v: &Vec<u8>| v[..v.len() & !1].to_vec();
        let (a, b, c) = (even(&a), even(&b), even(&c));
        for kind in ModelKind::ALL {
            with_model!(kind, |g| transport_inverse(g, &a, &b, &c));
        }
    }

    #[test]
    fn bridge_membership_test(choices in prop::collection::vec(any::<u8>(), 1..14)) {
        let g = make_grandparent();
        let w = random_walk(&g, &g.origin(), &choices);
        let hs = w.heights();
        let top = *hs.iter().max().unwrap();
        let bottom = *hs.iter().min().unwrap();
        prop_assert_eq!(
            WalkClass::Bridge.accepts_heights(hs),
            WalkClass::Hsw.accepts_heights(hs) && hs[hs.len() - 1] == top
        );
        prop_assert_eq!(
            WalkClass::ReversedBridge.accepts_heights(hs),
            WalkClass::ReversedHsw.accepts_heights(hs) && hs[hs.len() - 1] == bottom
        );
    }

    #[test]
    fn cuts_are_strictly_decreasing(tail in prop::collection::vec(1i64..25, 1..40)) {
        // Any height sequence staying strictly above its start.
        let hs: Vec<i64> = std::iter::once(0).chain(tail).collect();
        let cuts = hsw_cuts(&hs);
        prop_assert!(cuts.windows(2).all(|p| p[0].0 > p[1].0 && p[0].1 < p[1].1));
        prop_assert!(cuts.iter().all(|(a, _)| *a >= 0));
        prop_assert_eq!(cuts.last().map(|c| c.1), Some(hs.len() - 1));
    }

    #[test]
    fn signature_length_bound(parts in prop::collection::btree_set(1usize..60, 1..10)) {
        let sig: Vec<usize> = parts.into_iter().rev().collect();
        let total: usize = sig.iter().sum();
        let k = sig.len();
        prop_assert!(k * (k + 1) <= 2 * total);
        prop_assert!((k as f64) < (2.0 * total as f64).sqrt());
        prop_assert!(k <= max_signature_len(1, total));
    }

    #[test]
    fn decomposition_parts(index in any::<prop::sample::Index>(), n in 1usize..7) {
        for kind in [ModelKind::Z2, ModelKind::Gp] {
            with_model!(kind, |g| {
                let walks = collect_walks(g, &g.origin(), WalkClass::Hsw, n);
                let w = index.get(&walks);
                let dec = decompose_hsw(w).unwrap();
                for (j, p) in dec.parts.iter().enumerate() {
                    let cls = if j % 2 == 0 { WalkClass::Bridge } else { WalkClass::ReversedBridge };
                    prop_assert!(cls.accepts(p), "part {} of [{}]", j, w.label_string());
                }
                let pair = build_bridge_pair(g, w, None).unwrap();
                prop_assert!(WalkClass::Bridge.accepts(&pair.plus));
                prop_assert!(WalkClass::ReversedBridge.accepts(&pair.minus));
                prop_assert_eq!(pair.plus.len() + pair.minus.len(), n);
                prop_assert_eq!(pair.plus.span(), pair.odd_span_sum());
                prop_assert_eq!(pair.minus.span(), pair.even_span_sum());
            });
        }
    }

    #[test]
    fn saw_split_gives_two_hsws(index in any::<prop::sample::Index>(), n in 0usize..7) {
        for kind in [ModelKind::Z2, ModelKind::Gp, ModelKind::Honeycomb] {
            with_model!(kind, |g| {
                let walks = collect_walks(g, &g.origin(), WalkClass::Saw, n);
                let w = index.get(&walks);
                let (up, down) = split_saw_at_min(g, w).unwrap();
                prop_assert!(WalkClass::Hsw.accepts(&up) || up.is_empty());
                prop_assert!(WalkClass::Hsw.accepts(&down));
                prop_assert_eq!(up.len() + down.len(), n + 1);
            });
        }
    }

    #[test]
    fn polynomial_ring_identities(
        p in prop::collection::vec(-20i64..20, 0..6),
        q in prop::collection::vec(-20i64..20, 0..6),
        r in prop::collection::vec(-20i64..20, 1..6),
    ) {
        let (p, q, r) = (ExactPolynomial::from_ints(&p), ExactPolynomial::from_ints(&q), ExactPolynomial::from_ints(&r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!((&p * &q).derivative(), &(&p.derivative() * &q) + &(&p * &q.derivative()));
        prop_assert_eq!(&(&p - &q) + &q, p.clone());
        if !r.is_zero() {
            let (quot, rem) = p.div_rem(&r);
            prop_assert_eq!(&(&quot * &r) + &rem, p.clone());
            prop_assert!(rem.is_zero() || rem.degree() < r.degree());
            prop_assert_eq!((&p * &r).div_exact(&r), p.clone());
        }
        let x = BigRational::new(3.into(), 7.into());
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn root_intervals_nest(c in 3i64..40, e in 1i64..5) {
        // (1 - c x)(1 + e x) has its smallest positive root at 1/c < 1/2.
        let p = &ExactPolynomial::from_ints(&[1, -c]) * &ExactPolynomial::from_ints(&[1, e]);
        let width = BigRational::new(1.into(), (1i64 << 30).into());
        let iv = smallest_positive_root(&p, &width).unwrap();
        let root = BigRational::new(1.into(), c.into());
        prop_assert!(iv.verify(&p));
        prop_assert!(iv.contains(&root));
        prop_assert!(iv.width() <= width);
        let mut cur = iv.clone();
        for _ in 0..8 {
            let next = cur.refine(&p);
            prop_assert!(next.lower >= cur.lower && next.upper <= cur.upper);
            prop_assert!(next.verify(&p) && next.contains(&root));
            cur = next;
        }
        // Midpoint sits within the derivative bound of a root.
        let bound = p.derivative_bound(&iv.lower, &iv.upper) * iv.width();
        prop_assert!(p.eval(&iv.midpoint()).abs() <= bound);
    }

    #[test]
    fn directed_roots_bracket(c in 1u64..u64::MAX, n in 1u32..20) {
        let c = BigUint::from(c);
        let lo = nth_root_down(&c, n);
        let hi = nth_root_up(&c, n);
        prop_assert!(lo <= hi);
        let approx = c.to_f64().unwrap().powf(1.0 / n as f64);
        prop_assert!(lo.to_f64() <= approx * (1.0 + 1e-12));
        prop_assert!(hi.to_f64() >= approx * (1.0 - 1e-12));
    }

    #[test]
    fn root_le_matches_powers(b in 1u64..1_000_000, n in 1u32..8, c in 1u64..1_000_000, m in 1u32..8) {
        let lhs = (b as f64).ln() / n as f64;
        let rhs = (c as f64).ln() / m as f64;
        let exact = root_le(&BigUint::from(b), n, &BigUint::from(c), m);
        if (lhs - rhs).abs() > 1e-9 {
            prop_assert_eq!(exact, lhs < rhs);
        }
        prop_assert!(root_le(&BigUint::from(b), n, &BigUint::from(b), n));
    }
}

#[test]
fn models_validate_on_balls() {
    for kind in ModelKind::ALL {
        let radius = if kind == ModelKind::Z3 { 3 } else { 4 };
        with_model!(kind, |g| {
            let report = validate_model(g, radius);
            assert!(report.is_ok(), "{kind}: {:?}", report.violations);
            assert!(report.observed_d <= g.height_lipschitz());
        });
    }
    let gp = validate_model(&make_grandparent(), 3);
    assert!(gp.is_ok());
    let z2 = validate_model(&make_lattice(2), 4);
    assert!(z2.is_ok());
    assert_eq!(z2.observed_d, 1);
}

#[test]
fn vertex_encoding_is_injective_on_balls() {
    for kind in ModelKind::ALL {
        with_model!(kind, |g| {
            for o in g.representatives() {
                let vs = ball(g, &o, 4);
                let mut by_text = HashMap::new();
                for v in &vs {
                    if let Some(prev) = by_text.insert(v.to_string(), v) {
                        assert_eq!(prev, v, "{kind}: two vertices print as {v}");
                    }
                }
                let mut sorted = vs.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), vs.len(), "{kind}: ball contains duplicates");
            }
        });
    }
}

#[test]
fn grandparent_parent_and_child_counts() {
    let g = make_grandparent();
    for v in ball(&g, &g.origin(), 3) {
        let h = g.height(&v);
        // Height grows away from the end: the parent sits one level lower.
        let parents: Vec<_> = g
            .neighbors(&v)
            .into_iter()
            .filter(|(_, u)| g.height(u) == h - 1)
            .collect();
        assert_eq!(parents.len(), 1, "one parent of {v}");
        let parent = &parents[0].1;
        let children = g
            .neighbors(parent)
            .into_iter()
            .filter(|(_, u)| g.height(u) == h)
            .count();
        assert_eq!(children, 2, "two children of {parent}");
    }
}

#[test]
fn class_inclusions_pointwise() {
    let cfg = EnumConfig::default();
    for (kind, n_max) in [
        (ModelKind::Z1, 10),
        (ModelKind::Z2, 9),
        (ModelKind::T3, 10),
        (ModelKind::Gp, 8),
        (ModelKind::Honeycomb, 10),
    ] {
        with_model!(kind, |g| {
            for v in g.representatives() {
                let get = |c| count_walks(g, &v, c, n_max, &cfg).unwrap().counts;
                let (saw, b, rb, h, rh) = (
                    get(WalkClass::Saw),
                    get(WalkClass::Bridge),
                    get(WalkClass::ReversedBridge),
                    get(WalkClass::Hsw),
                    get(WalkClass::ReversedHsw),
                );
                for n in 0..=n_max {
                    assert!(b[n] <= h[n] && h[n] <= saw[n], "{kind} n={n}");
                    assert!(rb[n] <= rh[n] && rh[n] <= saw[n], "{kind} n={n}");
                }
            }
        });
    }
}

#[test]
fn signature_counts_match_decomposition() {
    let cfg = EnumConfig::default();
    let g = make_grandparent();
    for n in 1..=6 {
        let by_sig = count_hsws_by_signature(&g, &g.origin(), n, &cfg).unwrap();
        let mut manual: HashMap<Vec<i64>, BigUint> = HashMap::new();
        for w in collect_walks(&g, &g.origin(), WalkClass::Hsw, n) {
            *manual.entry(decompose_hsw(&w).unwrap().spans).or_default() += 1u32;
        }
        assert_eq!(by_sig.len(), manual.len(), "n = {n}");
        for (sig, count) in by_sig {
            assert_eq!(manual.get(&sig), Some(&count), "n = {n}, signature {sig:?}");
        }
    }
}

#[test]
fn partition_product_identity() {
    let a_max = 50;
    let mut prod = vec![BigUint::zero(); a_max + 1];
    prod[0] = BigUint::from(1u32);
    for k in 1..=a_max {
        for s in (k..=a_max).rev() {
            let add = prod[s - k].clone();
            prod[s] += add;
        }
    }
    assert_eq!(distinct_partition_table(a_max), prod);
}

#[test]
fn gp_bridge_roots_below_exact_constant() {
    let beta = bridge_constant_exact(Direction::Forward, 64).unwrap();
    let counts = GrowthCounts::compute(&make_grandparent(), 9, &EnumConfig::default()).unwrap();
    let hi = beta.upper.to_f64().unwrap();
    for n in 1..=9 {
        for dir in Direction::BOTH {
            assert!(
                nth_root_down(&counts.bridges(dir)[n], n as u32).to_f64() <= hi,
                "n = {n} {dir:?}"
            );
        }
        assert!(nth_root_up(&counts.saw[n], n as u32).to_f64() >= hi, "n = {n}");
    }
}
