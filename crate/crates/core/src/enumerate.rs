//! Exact counts of self-avoiding walks, bridges and half-space walks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::decompose::hsw_cuts;
use crate::graph::{HeightGraph, Walk};
use crate::search::{self, Flow, HalfSpace, PathView, Stop, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkClass {
    Saw,
    Bridge,
    ReversedBridge,
    Hsw,
    ReversedHsw,
}

impl WalkClass {
    pub fn as_str(self) -> &'static str {
        match self {
            WalkClass::Saw => "saw",
            WalkClass::Bridge => "bridge",
            WalkClass::ReversedBridge => "reversed_bridge",
            WalkClass::Hsw => "hsw",
            WalkClass::ReversedHsw => "reversed_hsw",
        }
    }

    fn half_space(self) -> Option<HalfSpace> {
        match self {
            WalkClass::Saw => None,
            WalkClass::Bridge | WalkClass::Hsw => Some(HalfSpace::Above),
            WalkClass::ReversedBridge | WalkClass::ReversedHsw => Some(HalfSpace::Below),
        }
    }

    /// Membership of a self-avoiding walk with the given heights.
    pub fn accepts_heights(self, heights: &[i64]) -> bool {
        let (h0, rest) = heights.split_first().expect("non-empty");
        let hn = *heights.last().expect("non-empty");
        match self {
            WalkClass::Saw => true,
            WalkClass::Bridge => rest.iter().all(|&h| *h0 < h && h <= hn),
            WalkClass::ReversedBridge => rest.iter().all(|&h| *h0 > h && h >= hn),
            WalkClass::Hsw => rest.iter().all(|&h| *h0 < h),
            WalkClass::ReversedHsw => rest.iter().all(|&h| *h0 > h),
        }
    }

    pub fn accepts<V, L>(self, walk: &Walk<V, L>) -> bool
    where
        V: Clone + Eq + std::hash::Hash + fmt::Display,
        L: Copy,
    {
        walk.is_self_avoiding() && self.accepts_heights(walk.heights())
    }
}

impl fmt::Display for WalkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WalkClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "saw" => Ok(WalkClass::Saw),
            "bridge" => Ok(WalkClass::Bridge),
            "reversed_bridge" | "rbridge" => Ok(WalkClass::ReversedBridge),
            "hsw" => Ok(WalkClass::Hsw),
            "reversed_hsw" | "rhsw" => Ok(WalkClass::ReversedHsw),
            other => Err(format!("unknown walk class '{other}'")),
        }
    }
}

/// Increasing (bridges, HSWs) or decreasing (reversed bridges / HSWs) in height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reversed,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Reversed];

    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Reversed => -1,
        }
    }

    pub fn bridge_class(self) -> WalkClass {
        match self {
            Direction::Forward => WalkClass::Bridge,
            Direction::Reversed => WalkClass::ReversedBridge,
        }
    }

    pub fn hsw_class(self) -> WalkClass {
        match self {
            Direction::Forward => WalkClass::Hsw,
            Direction::Reversed => WalkClass::ReversedHsw,
        }
    }

    fn half_space(self) -> HalfSpace {
        match self {
            Direction::Forward => HalfSpace::Above,
            Direction::Reversed => HalfSpace::Below,
        }
    }
}

/// Worker count and optional time budget for an enumeration.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnumConfig {
    /// `None` uses rayon's global pool.
    pub workers: Option<usize>,
    pub budget: Option<Duration>,
}

impl EnumConfig {
    pub fn sequential() -> Self {
        EnumConfig {
            workers: Some(1),
            budget: None,
        }
    }
}

/// Exact counts `count[n]`, `n = 0..=n_max`, of one walk class from one start vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub start: String,
    pub start_orbit: usize,
    pub class: WalkClass,
    #[serde(serialize_with = "crate::decimal::seq")]
    pub counts: Vec<BigUint>,
}

impl CountTable {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }
}

/// Bridge counts `b_n(a)` split by span; row `n` covers spans `0..=d·n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanTable {
    pub start: String,
    pub start_orbit: usize,
    pub direction: Direction,
    pub d: i64,
    #[serde(serialize_with = "crate::decimal::rows")]
    pub rows: Vec<Vec<BigUint>>,
}

impl SpanTable {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `b_n(a)`; zero outside the table's range of spans.
    pub fn get(&self, n: usize, a: i64) -> BigUint {
        if a < 0 {
            return BigUint::zero();
        }
        self.rows
            .get(n)
            .and_then(|row| row.get(a as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// `Σ_{t ≥ 0} b_n(a + t)`.
    pub fn tail(&self, n: usize, a: i64) -> BigUint {
        match self.rows.get(n) {
            Some(row) => row.iter().skip(a.max(0) as usize).sum(),
            None => BigUint::zero(),
        }
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }

    /// `(n, a, count)` for every non-zero entry.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(a, c)| (n, a, c))
        })
    }
}

/// Strictly decreasing spans `a_1 > … > a_k > 0` of an HSW decomposition.
pub type Signature = Vec<i64>;

/// Partial results carried by a budget interruption.
#[derive(Debug, Clone)]
pub enum Partial {
    Counts(CountTable),
    Spans(SpanTable),
    Nothing,
}

#[derive(Debug, Clone, Error)]
pub enum EnumError {
    #[error("time budget exhausted (exact results complete through n = {high_water:?})")]
    BudgetExceeded {
        high_water: Option<usize>,
        partial: Box<Partial>,
    },
    #[error("enumeration stopped by the visitor")]
    VisitorAbort,
}

#[derive(Default)]
struct LengthTally(Vec<u64>);

impl LengthTally {
    fn bump(&mut self, n: usize) {
        if self.0.len() <= n {
            self.0.resize(n + 1, 0);
        }
        self.0[n] += 1;
    }
}

impl Tally for LengthTally {
    fn merge(&mut self, other: Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

#[derive(Default)]
struct SpanTally(Vec<Vec<u64>>);

impl Tally for SpanTally {
    fn merge(&mut self, other: Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Vec::new());
        }
        for (row, orow) in self.0.iter_mut().zip(other.0) {
            if row.len() < orow.len() {
                row.resize(orow.len(), 0);
            }
            for (a, b) in row.iter_mut().zip(orow) {
                *a += b;
            }
        }
    }
}

#[derive(Default)]
struct SignatureTally(Vec<HashMap<Signature, u64>>);

impl Tally for SignatureTally {
    fn merge(&mut self, other: Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), HashMap::new());
        }
        for (m, om) in self.0.iter_mut().zip(other.0) {
            for (k, v) in om {
                *m.entry(k).or_insert(0) += v;
            }
        }
    }
}

fn widen(counts: Vec<u64>, n_max: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = counts.into_iter().map(BigUint::from).collect();
    out.resize(n_max + 1, BigUint::zero());
    out
}

fn orbit_label<G: HeightGraph>(g: &G, v: &G::Vertex) -> (String, usize) {
    (v.to_string(), g.orbit(v))
}

/// Counts the walks of class `cls` from `v` for every length `0..=n_max`.
///
/// Membership is tested against the literal class definition at every prefix;
/// half-space classes additionally prune prefixes that leave the half-space.
pub fn count_walks<G: HeightGraph>(
    g: &G,
    v: &G::Vertex,
    cls: WalkClass,
    n_max: usize,
    cfg: &EnumConfig,
) -> Result<CountTable, EnumError> {
    let (start, start_orbit) = orbit_label(g, v);
    let table = |counts: Vec<u64>, n: usize| CountTable {
        start: start.clone(),
        start_orbit,
        class: cls,
        counts: widen(counts, n),
    };
    let run = |limit: usize, limits: &search::Limits| {
        search::tally_search(
            g,
            v,
            limit,
            cls.half_space(),
            cfg.workers,
            limits,
            LengthTally::default,
            |acc, p| {
                if cls.accepts_heights(p.heights) {
                    acc.bump(p.len());
                }
                Flow::Continue
            },
        )
    };
    match search::deepen(n_max, cfg.budget, run) {
        Ok(t) => Ok(table(t.0, n_max)),
        Err((best, stop)) => Err(interrupted(
            stop,
            best.map(|(n, t)| (n, Partial::Counts(table(t.0, n)))),
        )),
    }
}

fn interrupted(stop: Stop, best: Option<(usize, Partial)>) -> EnumError {
    match stop {
        Stop::Visitor => EnumError::VisitorAbort,
        Stop::Budget => {
            let (high_water, partial) = match best {
                Some((n, p)) => (Some(n), p),
                None => (None, Partial::Nothing),
            };
            EnumError::BudgetExceeded {
                high_water,
                partial: Box::new(partial),
            }
        }
    }
}

fn record_span(acc: &mut SpanTally, p: &PathView<'_, impl Sized, impl Sized>, dir: Direction) {
    let end = p.end_height();
    let is_bridge = match dir {
        Direction::Forward => end >= p.max_height(),
        Direction::Reversed => end <= p.min_height(),
    };
    if is_bridge {
        let n = p.len();
        let span = (p.max_height() - p.min_height()) as usize;
        if acc.0.len() <= n {
            acc.0.resize(n + 1, Vec::new());
        }
        let row = &mut acc.0[n];
        if row.len() <= span {
            row.resize(span + 1, 0);
        }
        row[span] += 1;
    }
}

/// `b_n(a)` (or `b̄_n(a)`) for all `n ≤ n_max`, `a ≤ d·n`.
pub fn count_bridges_by_span<G: HeightGraph>(
    g: &G,
    v: &G::Vertex,
    direction: Direction,
    n_max: usize,
    cfg: &EnumConfig,
) -> Result<SpanTable, EnumError> {
    let (start, start_orbit) = orbit_label(g, v);
    let d = g.height_lipschitz();
    let table = |rows: Vec<Vec<u64>>, n_top: usize| {
        let mut rows: Vec<Vec<BigUint>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigUint::from).collect())
            .collect();
        rows.resize(n_top + 1, Vec::new());
        for (n, row) in rows.iter_mut().enumerate() {
            let width = (d as usize) * n + 1;
            assert!(row.len() <= width, "span exceeds d·n");
            row.resize(width, BigUint::zero());
        }
        SpanTable {
            start: start.clone(),
            start_orbit,
            direction,
            d,
            rows,
        }
    };
    let run = |limit: usize, limits: &search::Limits| {
        search::tally_search(
            g,
            v,
            limit,
            Some(direction.half_space()),
            cfg.workers,
            limits,
            SpanTally::default,
            |acc, p| {
                record_span(acc, p, direction);
                Flow::Continue
            },
        )
    };
    match search::deepen(n_max, cfg.budget, run) {
        Ok(t) => Ok(table(t.0, n_max)),
        Err((best, stop)) => Err(interrupted(stop, best.map(|(n, t)| (n, Partial::Spans(table(t.0, n)))))),
    }
}

/// Signature histograms of all HSWs from `v`, one map per length `0..=n_max`.
pub fn hsw_signatures_upto<G: HeightGraph>(
    g: &G,
    v: &G::Vertex,
    n_max: usize,
    cfg: &EnumConfig,
) -> Result<Vec<BTreeMap<Signature, BigUint>>, EnumError> {
    let limits = search::Limits::new(cfg.budget);
    let tally = search::tally_search(
        g,
        v,
        n_max,
        Some(HalfSpace::Above),
        cfg.workers,
        &limits,
        SignatureTally::default,
        |acc, p| {
            let n = p.len();
            if n > 0 {
                let sig: Signature = hsw_cuts(p.heights).into_iter().map(|(a, _)| a).collect();
                if acc.0.len() <= n {
                    acc.0.resize(n + 1, HashMap::new());
                }
                *acc.0[n].entry(sig).or_insert(0) += 1;
            }
            Flow::Continue
        },
    )
    .map_err(|s| interrupted(s, None))?;
    let mut out: Vec<BTreeMap<Signature, BigUint>> = tally
        .0
        .into_iter()
        .map(|m| m.into_iter().map(|(k, c)| (k, BigUint::from(c))).collect())
        .collect();
    out.resize(n_max + 1, BTreeMap::new());
    Ok(out)
}

/// Histogram of the HSWs of length exactly `n` by decomposition signature.
pub fn count_hsws_by_signature<G: HeightGraph>(
    g: &G,
    v: &G::Vertex,
    n: usize,
    cfg: &EnumConfig,
) -> Result<BTreeMap<Signature, BigUint>, EnumError> {
    assert!(n >= 1, "signatures are defined for HSWs of length at least 1");
    Ok(hsw_signatures_upto(g, v, n, cfg)?.pop().expect("n_max + 1 maps"))
}

/// Calls `visitor` on every walk of class `cls` and length exactly `n`
/// from `v`, in label order.
pub fn enumerate_walks<G, F>(g: &G, v: &G::Vertex, cls: WalkClass, n: usize, mut visitor: F) -> Result<(), EnumError>
where
    G: HeightGraph,
    F: FnMut(&Walk<G::Vertex, G::Label>) -> ControlFlow<()>,
{
    let limits = search::Limits::new(None);
    search::search(g, v, n, cls.half_space(), &limits, |p| {
        if p.len() < n || !cls.accepts_heights(p.heights) {
            return Flow::Continue;
        }
        let walk = Walk::from_parts(p.steps.to_vec(), p.vertices.to_vec(), p.heights.to_vec());
        match visitor(&walk) {
            ControlFlow::Continue(()) => Flow::Continue,
            ControlFlow::Break(()) => Flow::Abort,
        }
    })
    .map_err(|s| interrupted(s, None))
}

/// Collects `enumerate_walks` into a vector.
pub fn collect_walks<G: HeightGraph>(g: &G, v: &G::Vertex, cls: WalkClass, n: usize) -> Vec<Walk<G::Vertex, G::Label>> {
    let mut out = Vec::new();
    enumerate_walks(g, v, cls, n, |w| {
        out.push(w.clone());
        ControlFlow::Continue(())
    })
    .expect("visitor never aborts");
    out
}
