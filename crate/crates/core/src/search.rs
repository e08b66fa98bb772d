//! Depth-first self-avoiding path search shared by all enumerators.
//!
//! The search visits every self-avoiding prefix exactly once (the root
//! included), optionally restricted to a half-space above or below the root.
//! After the first step the subtrees are independent, so they can be handed
//! to rayon workers; each worker owns its path and the per-subtree tallies
//! are merged in label order, which keeps results independent of the worker
//! count.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::graph::HeightGraph;

const BUDGET_CHECK_INTERVAL: u64 = 1 << 13;

/// Which side of the root a half-space search keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum HalfSpace {
    Above,
    Below,
}

impl HalfSpace {
    pub(crate) fn sign(self) -> i64 {
        match self {
            HalfSpace::Above => 1,
            HalfSpace::Below => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Prune,
    Abort,
}

/// Read-only view of the current prefix.
pub(crate) struct PathView<'a, V, L> {
    pub vertices: &'a [V],
    pub heights: &'a [i64],
    pub steps: &'a [L],
    prefix_max: &'a [i64],
    prefix_min: &'a [i64],
}

impl<V, L> PathView<'_, V, L> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn max_height(&self) -> i64 {
        *self.prefix_max.last().expect("non-empty")
    }

    pub fn min_height(&self) -> i64 {
        *self.prefix_min.last().expect("non-empty")
    }

    pub fn end_height(&self) -> i64 {
        *self.heights.last().expect("non-empty")
    }
}

/// Search limits shared by a whole search.
pub(crate) struct Limits {
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Limits {
    pub(crate) fn new(budget: Option<Duration>) -> Self {
        Limits {
            deadline: budget.map(|b| Instant::now() + b),
            stop: AtomicBool::new(false),
        }
    }

    fn expired(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.stop.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }
}

/// Why a search ended early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Budget,
    Visitor,
}

pub(crate) trait Tally: Send {
    fn merge(&mut self, other: Self);
}

struct Dfs<'a, G: HeightGraph, F> {
    g: &'a G,
    limit: usize,
    floor: Option<(i64, i64)>,
    vertices: Vec<G::Vertex>,
    heights: Vec<i64>,
    steps: Vec<G::Label>,
    prefix_max: Vec<i64>,
    prefix_min: Vec<i64>,
    buffers: Vec<Vec<(G::Label, G::Vertex)>>,
    visit: F,
    limits: &'a Limits,
    nodes: u64,
}

impl<'a, G, F> Dfs<'a, G, F>
where
    G: HeightGraph,
    F: FnMut(&PathView<'_, G::Vertex, G::Label>) -> Flow,
{
    fn new(g: &'a G, limit: usize, half: Option<HalfSpace>, root: &G::Vertex, visit: F, limits: &'a Limits) -> Self {
        let h0 = g.height(root);
        let mut dfs = Dfs {
            g,
            limit,
            floor: half.map(|s| (s.sign(), s.sign() * h0)),
            vertices: Vec::with_capacity(limit + 1),
            heights: Vec::with_capacity(limit + 1),
            steps: Vec::with_capacity(limit),
            prefix_max: Vec::with_capacity(limit + 1),
            prefix_min: Vec::with_capacity(limit + 1),
            buffers: (0..=limit).map(|_| Vec::with_capacity(g.max_degree())).collect(),
            visit,
            limits,
            nodes: 0,
        };
        dfs.push(None, root.clone(), h0);
        dfs
    }

    fn push(&mut self, label: Option<G::Label>, v: G::Vertex, h: i64) {
        if let Some(l) = label {
            self.steps.push(l);
        }
        let (mx, mn) = match (self.prefix_max.last(), self.prefix_min.last()) {
            (Some(&mx), Some(&mn)) => (mx.max(h), mn.min(h)),
            _ => (h, h),
        };
        self.vertices.push(v);
        self.heights.push(h);
        self.prefix_max.push(mx);
        self.prefix_min.push(mn);
    }

    fn pop(&mut self) {
        self.steps.pop();
        self.vertices.pop();
        self.heights.pop();
        self.prefix_max.pop();
        self.prefix_min.pop();
    }

    fn admissible(&self, u: &G::Vertex, hu: i64) -> bool {
        if let Some((sign, floor)) = self.floor {
            if sign * hu <= floor {
                return false;
            }
        }
        // Paths stay short (desk scale), so a linear scan beats hashing.
        !self.vertices.contains(u)
    }

    /// Visits the current node and everything below it.
    fn run(&mut self) -> Result<(), Stop> {
        let view = PathView {
            vertices: &self.vertices,
            heights: &self.heights,
            steps: &self.steps,
            prefix_max: &self.prefix_max,
            prefix_min: &self.prefix_min,
        };
        match (self.visit)(&view) {
            Flow::Abort => return Err(Stop::Visitor),
            Flow::Prune => return Ok(()),
            Flow::Continue => {}
        }
        let depth = self.steps.len();
        if depth >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(BUDGET_CHECK_INTERVAL) && self.limits.expired() {
            return Err(Stop::Budget);
        }
        let mut buf = std::mem::take(&mut self.buffers[depth]);
        buf.clear();
        self.g
            .neighbors_into(self.vertices.last().expect("non-empty"), &mut buf);
        let mut result = Ok(());
        for (label, u) in buf.iter() {
            let hu = self.g.height(u);
            if !self.admissible(u, hu) {
                continue;
            }
            self.push(Some(*label), u.clone(), hu);
            result = self.run();
            self.pop();
            if result.is_err() {
                break;
            }
        }
        self.buffers[depth] = buf;
        result
    }
}

/// Sequential search in label order.
pub(crate) fn search<G, F>(
    g: &G,
    root: &G::Vertex,
    limit: usize,
    half: Option<HalfSpace>,
    limits: &Limits,
    visit: F,
) -> Result<(), Stop>
where
    G: HeightGraph,
    F: FnMut(&PathView<'_, G::Vertex, G::Label>) -> Flow,
{
    Dfs::new(g, limit, half, root, visit, limits).run()
}

/// Parallel search accumulating into per-subtree tallies.
///
/// `visit` must not return `Flow::Abort`; only the budget can stop a tally search.
#[allow(clippy::too_many_arguments)]
pub(crate) fn tally_search<G, A, I, F>(
    g: &G,
    root: &G::Vertex,
    limit: usize,
    half: Option<HalfSpace>,
    workers: Option<usize>,
    limits: &Limits,
    init: I,
    visit: F,
) -> Result<A, Stop>
where
    G: HeightGraph,
    A: Tally,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &PathView<'_, G::Vertex, G::Label>) -> Flow + Sync,
{
    let mut total = init();
    // Root node alone; its children become independent jobs.
    let mut first = Vec::new();
    search(g, root, limit.min(1), half, limits, |p| {
        if p.len() == 0 {
            visit(&mut total, p)
        } else {
            first.push(p.steps[0]);
            Flow::Prune
        }
    })?;

    let job = |label: &G::Label| -> Result<A, Stop> {
        let mut acc = init();
        let start = g.step(root, *label).expect("label came from the neighbour list");
        let h = g.height(&start);
        let mut dfs = Dfs::new(
            g,
            limit,
            half,
            root,
            |p: &PathView<'_, G::Vertex, G::Label>| visit(&mut acc, p),
            limits,
        );
        dfs.push(Some(*label), start, h);
        let res = dfs.run();
        drop(dfs);
        res.map(|_| acc)
    };

    let parts: Vec<Result<A, Stop>> = match workers {
        Some(1) => first.iter().map(job).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| first.par_iter().map(job).collect()),
        None => first.par_iter().map(job).collect(),
    };
    for part in parts {
        total.merge(part?);
    }
    Ok(total)
}

/// Runs `attempt(limit)` once without a budget, or with iterative deepening
/// when a budget is set, so an interrupted run still yields the deepest
/// fully-completed result.
pub(crate) fn deepen<A>(
    n_max: usize,
    budget: Option<Duration>,
    mut attempt: impl FnMut(usize, &Limits) -> Result<A, Stop>,
) -> Result<A, (Option<(usize, A)>, Stop)> {
    let limits = Limits::new(budget);
    if budget.is_none() {
        return attempt(n_max, &limits).map_err(|s| (None, s));
    }
    let mut best = None;
    for limit in 0..=n_max {
        match attempt(limit, &limits) {
            Ok(a) if limit == n_max => return Ok(a),
            Ok(a) => best = Some((limit, a)),
            Err(s) => return Err((best, s)),
        }
    }
    unreachable!("loop returns at n_max")
}
