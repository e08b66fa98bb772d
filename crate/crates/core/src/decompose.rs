//! Structural walk transformations: half-space walk to alternating bridge
//! sequence, alternating sequence to a (bridge, reversed bridge) pair and
//! back, and the split of a self-avoiding walk into two half-space walks.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::WalkClass;
use crate::graph::{GraphError, HeightGraph, Walk};
use crate::search::{self, Flow, HalfSpace};

type WalkOf<G> = Walk<<G as HeightGraph>::Vertex, <G as HeightGraph>::Label>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("walk is not a half-space walk of positive length")]
    NotAnHsw,
    #[error("walk is not self-avoiding")]
    NotSelfAvoiding,
    #[error("quasi-transitive model needs a table of connector walks")]
    MissingNuTable,
    #[error("no connector bridge from orbit {from} into orbit {to} of length <= {bound}")]
    NuNotFound { from: usize, to: usize, bound: usize },
    #[error("inconsistent bridge pair: {0}")]
    InconsistentPair(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Cut points of the alternating decomposition of a height sequence.
///
/// Returns `(a_j, i_j)` for `j = 1..=k`: starting from `i_0 = 0`, `a_j` is the
/// largest distance `|h_i − h_{i_{j−1}}|` over `i ≥ i_{j−1}` and `i_j` the last
/// index attaining it. The heights must be those of a half-space walk.
pub fn hsw_cuts(heights: &[i64]) -> Vec<(i64, usize)> {
    let n = heights.len() - 1;
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let base = heights[start];
        let (mut a, mut idx) = (0, start);
        for (i, &h) in heights.iter().enumerate().skip(start) {
            let dist = (h - base).abs();
            if dist >= a {
                a = dist;
                idx = i;
            }
        }
        assert!(a > 0 && idx > start, "heights do not describe a half-space walk");
        out.push((a, idx));
        start = idx;
    }
    out
}

/// A half-space walk cut into bridges (odd `j`) and reversed bridges (even `j`).
#[derive(Clone, PartialEq, Eq)]
pub struct Decomposition<V, L> {
    pub walk: Walk<V, L>,
    pub parts: Vec<Walk<V, L>>,
    pub spans: Vec<i64>,
    /// `i_1 < … < i_k`; `i_0 = 0` is implicit.
    pub cuts: Vec<usize>,
}

pub fn decompose_hsw<V, L>(walk: &Walk<V, L>) -> Result<Decomposition<V, L>, DecomposeError>
where
    V: Clone + Eq + std::hash::Hash + fmt::Display,
    L: Copy,
{
    if walk.is_empty() || !WalkClass::Hsw.accepts(walk) {
        return Err(DecomposeError::NotAnHsw);
    }
    let cuts = hsw_cuts(walk.heights());
    let mut parts = Vec::with_capacity(cuts.len());
    let mut prev = 0;
    for &(_, i) in &cuts {
        parts.push(walk.slice(prev, i));
        prev = i;
    }
    Ok(Decomposition {
        walk: walk.clone(),
        parts,
        spans: cuts.iter().map(|&(a, _)| a).collect(),
        cuts: cuts.iter().map(|&(_, i)| i).collect(),
    })
}

/// Connector bridges between orbits: `forward[i][j]` starts at the
/// representative `o_i`, ends in orbit `j` and has its endpoint as the unique
/// highest vertex. `reversed[i][j]` is `forward[j][i]` walked backwards.
#[derive(Clone)]
pub struct NuTable<V, L> {
    pub forward: Vec<Vec<Walk<V, L>>>,
    pub reversed: Vec<Vec<Walk<V, L>>>,
    pub r: usize,
}

impl<V, L> NuTable<V, L> {
    pub fn orbit_count(&self) -> usize {
        self.forward.len()
    }
}

/// Shortest connector bridges for every orbit pair, searched by increasing
/// length up to `r_bound`; ties are broken by label order.
pub fn find_nu_walks<G: HeightGraph>(g: &G, r_bound: usize) -> Result<NuTable<G::Vertex, G::Label>, DecomposeError> {
    let reps = g.representatives();
    let m = reps.len();
    let mut forward: Vec<Vec<Option<WalkOf<G>>>> = vec![vec![None; m]; m];
    for (i, o) in reps.iter().enumerate() {
        let mut missing = m;
        for len in 0..=r_bound {
            let limits = search::Limits::new(None);
            let row = &mut forward[i];
            let _ = search::search(g, o, len, Some(HalfSpace::Above), &limits, |p| {
                let n = p.len();
                if n < len {
                    return Flow::Continue;
                }
                let top = p.end_height();
                let unique_max = p.heights[..n].iter().all(|&h| h < top);
                let j = g.orbit(p.vertices.last().expect("non-empty"));
                if unique_max && row[j].is_none() {
                    row[j] = Some(Walk::from_parts(
                        p.steps.to_vec(),
                        p.vertices.to_vec(),
                        p.heights.to_vec(),
                    ));
                    missing -= 1;
                }
                if missing == 0 {
                    Flow::Abort
                } else {
                    Flow::Continue
                }
            });
            if missing == 0 {
                break;
            }
        }
    }
    let mut table = Vec::with_capacity(m);
    for (i, row) in forward.into_iter().enumerate() {
        let mut out = Vec::with_capacity(m);
        for (j, w) in row.into_iter().enumerate() {
            out.push(w.ok_or(DecomposeError::NuNotFound {
                from: i,
                to: j,
                bound: r_bound,
            })?);
        }
        table.push(out);
    }
    let reversed = (0..m)
        .map(|i| (0..m).map(|j| table[j][i].reversed(g)).collect())
        .collect();
    let r = table.iter().flatten().map(|w| w.len()).max().unwrap_or(0);
    Ok(NuTable {
        forward: table,
        reversed,
        r,
    })
}

/// One connector walk inserted while building a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NuUse {
    /// Position `l` in the alternating sequence.
    pub position: usize,
    pub from_orbit: usize,
    pub to_orbit: usize,
    pub length: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct BridgePair<V, L> {
    pub plus: Walk<V, L>,
    /// Starts at the root of the decomposed walk.
    pub minus: Walk<V, L>,
    pub spans: Vec<i64>,
    pub nu_used: Vec<NuUse>,
}

impl<V, L> BridgePair<V, L> {
    pub fn odd_span_sum(&self) -> i64 {
        self.spans.iter().step_by(2).sum()
    }

    pub fn even_span_sum(&self) -> i64 {
        self.spans.iter().skip(1).step_by(2).sum()
    }
}

impl<V: fmt::Display, L: fmt::Display> fmt::Debug for Decomposition<V, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Decomposition")
            .field("walk", &self.walk)
            .field("spans", &self.spans)
            .field("cuts", &self.cuts)
            .finish()
    }
}

impl<V: fmt::Display, L: fmt::Display> fmt::Debug for NuTable<V, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NuTable")
            .field("forward", &self.forward)
            .field("r", &self.r)
            .finish()
    }
}

impl<V: fmt::Display, L: fmt::Display> fmt::Debug for BridgePair<V, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BridgePair")
            .field("plus", &self.plus)
            .field("minus", &self.minus)
            .field("spans", &self.spans)
            .field("nu_used", &self.nu_used)
            .finish()
    }
}

/// Concatenates the odd parts (with forward connectors) into `π₊` and the even
/// parts (with reversed connectors) into `π₋`.
///
/// Transitive models need no table; their connectors are trivial.
pub fn build_bridge_pair<G: HeightGraph>(
    g: &G,
    walk: &Walk<G::Vertex, G::Label>,
    nu: Option<&NuTable<G::Vertex, G::Label>>,
) -> Result<BridgePair<G::Vertex, G::Label>, DecomposeError> {
    if nu.is_none() && !g.is_transitive() {
        return Err(DecomposeError::MissingNuTable);
    }
    let dec = decompose_hsw(walk)?;
    let parts = &dec.parts;
    let k = parts.len();
    let root = walk.root();
    // i(0) is the orbit of the root, i(l) the orbit of the end of π_l, j(l) = i(l + 1).
    let orbit_at = |l: usize| {
        if l == 0 {
            g.orbit(root)
        } else {
            g.orbit(parts[l - 1].end())
        }
    };
    let mut nu_used = Vec::new();
    let mut connector = |l: usize| -> Option<Walk<G::Vertex, G::Label>> {
        let table = nu?;
        let (i, j) = (orbit_at(l), orbit_at(l + 1));
        let w = if l % 2 == 1 {
            &table.forward[i][j]
        } else {
            &table.reversed[i][j]
        };
        nu_used.push(NuUse {
            position: l,
            from_orbit: i,
            to_orbit: j,
            length: w.len(),
        });
        Some(w.clone())
    };

    let mut plus = parts[0].clone();
    for l in (1..k.saturating_sub(1)).step_by(2) {
        if let Some(c) = connector(l) {
            plus = plus.concat(g, &c)?;
        }
        plus = plus.concat(g, &parts[l + 1])?;
    }

    let mut minus = Walk::single(g, root.clone());
    if k >= 2 {
        for l in (0..k - 1).step_by(2) {
            if let Some(c) = connector(l) {
                minus = minus.concat(g, &c)?;
            }
            minus = minus.concat(g, &parts[l + 1])?;
        }
    }
    Ok(BridgePair {
        plus,
        minus,
        spans: dec.spans,
        nu_used,
    })
}

/// Splits `w` into consecutive segments, the `j`-th rising (or falling, for
/// `sign = -1`) by exactly `spans[j]` and ending at the last vertex within it.
fn cut_by_spans<V, L>(w: &Walk<V, L>, spans: &[i64], sign: i64) -> Result<Vec<Walk<V, L>>, DecomposeError>
where
    V: Clone + Eq + std::hash::Hash + std::fmt::Display,
    L: Copy,
{
    let hs = w.heights();
    let mut out = Vec::with_capacity(spans.len());
    let mut pos = 0;
    for &a in spans {
        let target = sign * hs[pos] + a;
        let end = (pos..hs.len())
            .rev()
            .find(|&i| sign * hs[i] <= target)
            .expect("pos itself qualifies");
        if sign * hs[end] != target {
            return Err(DecomposeError::InconsistentPair(format!(
                "segment from index {pos} does not reach span {a}"
            )));
        }
        out.push(w.slice(pos, end));
        pos = end;
    }
    if pos != w.len() {
        return Err(DecomposeError::InconsistentPair("spans do not exhaust the walk".into()));
    }
    Ok(out)
}

/// Inverse of [`build_bridge_pair`] on transitive models.
pub fn reconstruct_hsw<G: HeightGraph>(
    g: &G,
    pair: &BridgePair<G::Vertex, G::Label>,
) -> Result<Walk<G::Vertex, G::Label>, DecomposeError> {
    if !g.is_transitive() || pair.nu_used.iter().any(|u| u.length > 0) {
        return Err(DecomposeError::InconsistentPair(
            "reconstruction is only defined on transitive models".into(),
        ));
    }
    let odd: Vec<i64> = pair.spans.iter().copied().step_by(2).collect();
    let even: Vec<i64> = pair.spans.iter().copied().skip(1).step_by(2).collect();
    let odd_parts = cut_by_spans(&pair.plus, &odd, 1)?;
    let even_parts = cut_by_spans(&pair.minus, &even, -1)?;
    let mut out = Walk::single(g, pair.plus.root().clone());
    for j in 0..pair.spans.len() {
        let part = if j % 2 == 0 {
            &odd_parts[j / 2]
        } else {
            &even_parts[j / 2]
        };
        out = out.concat(g, part)?;
    }
    if !WalkClass::Hsw.accepts(&out) {
        return Err(DecomposeError::InconsistentPair(
            "result is not a half-space walk".into(),
        ));
    }
    Ok(out)
}

/// Splits a self-avoiding walk at the last vertex `v_l` of minimal height into
/// `(v_l, …, v_n)` and `(v′, v_l, v_{l−1}, …, v_0)`, where `v′` is the lower
/// neighbour of `v_l` with the smallest label.
pub fn split_saw_at_min<G: HeightGraph>(
    g: &G,
    walk: &Walk<G::Vertex, G::Label>,
) -> Result<(WalkOf<G>, WalkOf<G>), DecomposeError> {
    if !walk.is_self_avoiding() {
        return Err(DecomposeError::NotSelfAvoiding);
    }
    let hs = walk.heights();
    let min = *hs.iter().min().expect("non-empty");
    let l = hs.iter().rposition(|&h| h == min).expect("min is attained");
    let vl = &walk.vertices()[l];
    let v_low = g
        .neighbors(vl)
        .into_iter()
        .find(|(_, u)| g.height(u) < min)
        .map(|(_, u)| u)
        .expect("every vertex has a strictly lower neighbour");
    let upper = walk.slice(l, walk.len());
    let mut back = Vec::with_capacity(l + 2);
    back.push(v_low);
    back.extend(walk.vertices()[..=l].iter().rev().cloned());
    Ok((upper, Walk::from_vertices(g, back)?))
}

/// Vertices reachable from `root` within `radius` steps, in BFS order.
pub fn ball<G: HeightGraph>(g: &G, root: &G::Vertex, radius: usize) -> Vec<G::Vertex> {
    let mut seen = std::collections::HashSet::from([root.clone()]);
    let mut order = vec![root.clone()];
    let mut queue = VecDeque::from([(root.clone(), 0)]);
    while let Some((v, dist)) = queue.pop_front() {
        if dist == radius {
            continue;
        }
        for (_, u) in g.neighbors(&v) {
            if seen.insert(u.clone()) {
                order.push(u.clone());
                queue.push_back((u, dist + 1));
            }
        }
    }
    order
}
