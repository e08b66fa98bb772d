//! Infinite graphs with graph height functions, presented as lazy
//! neighbourhood oracles.
//!
//! A model never materialises its vertex set. It answers three questions
//! about a canonical vertex: who its labelled neighbours are, what its
//! height is, and which orbit of the declared group it belongs to. On top
//! of that every model provides a *transport*: an explicit automorphism
//! from the declared group that carries one vertex onto another vertex of
//! the same orbit. Walk concatenation is built on transport.

mod honeycomb;
mod lattice;
mod model;
mod tree;
mod validate;
mod walk;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

pub use honeycomb::{make_honeycomb, HexStep, HexVertex, Honeycomb};
pub use lattice::{make_lattice, Lattice, LatticePoint, LatticeStep};
pub use model::ModelKind;
pub use tree::{make_grandparent, make_tree3, Grandparent, GrandparentStep, Tree3, TreeStep, TreeVertex};
pub use validate::{validate_model, ValidationReport, Violation};
pub use walk::{apply_steps, Walk};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("label {label} is not available at step {position} (vertex {vertex})")]
    InvalidLabel {
        label: String,
        position: usize,
        vertex: String,
    },
    #[error("vertices {from} and {to} are not adjacent")]
    NotAdjacent { from: String, to: String },
    #[error("cannot transport between different orbits ({from} -> {to})")]
    OrbitMismatch { from: String, to: String },
    #[error("unknown graph model '{0}' (expected z1, z2, z3, t3, gp or honeycomb)")]
    UnknownModel(String),
    #[error("cannot parse step label '{0}'")]
    BadLabel(String),
}

/// A locally finite graph with a graph height function `(h, Γ)`.
///
/// Neighbours must be emitted in ascending label order; that order is the
/// canonical order used everywhere a deterministic choice is needed.
pub trait HeightGraph: Send + Sync {
    type Vertex: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync;
    type Label: Copy + Eq + Hash + Ord + Debug + Display + FromStr + Send + Sync;

    fn name(&self) -> &str;

    /// Appends `(label, neighbour)` pairs of `v` to `out` (which is not cleared).
    fn neighbors_into(&self, v: &Self::Vertex, out: &mut Vec<(Self::Label, Self::Vertex)>);

    fn height(&self, v: &Self::Vertex) -> i64;

    /// Orbit index of `v` in `[0, orbit_count())`.
    fn orbit(&self, v: &Self::Vertex) -> usize;

    fn orbit_count(&self) -> usize;

    /// One representative per orbit, indexed by orbit; all have height 0.
    fn representatives(&self) -> Vec<Self::Vertex>;

    /// Declared `d`: the largest height change along a single edge.
    fn height_lipschitz(&self) -> i64;

    fn max_degree(&self) -> usize;

    /// The automorphism `γ ∈ Γ` with `γ(from) = to`, applied to `w`.
    ///
    /// Returns `None` when `from` and `to` lie in different orbits. For a
    /// fixed pair the maps `(from, to)` and `(to, from)` are mutually inverse.
    fn transport(&self, from: &Self::Vertex, to: &Self::Vertex, w: &Self::Vertex) -> Option<Self::Vertex>;

    fn is_transitive(&self) -> bool {
        self.orbit_count() == 1
    }

    fn origin(&self) -> Self::Vertex {
        self.representatives()
            .into_iter()
            .next()
            .expect("model declares at least one orbit")
    }

    fn neighbors(&self, v: &Self::Vertex) -> Vec<(Self::Label, Self::Vertex)> {
        let mut out = Vec::with_capacity(self.max_degree());
        self.neighbors_into(v, &mut out);
        out
    }

    fn step(&self, v: &Self::Vertex, label: Self::Label) -> Option<Self::Vertex> {
        self.neighbors(v).into_iter().find(|(l, _)| *l == label).map(|(_, u)| u)
    }

    /// Label of the edge `from -> to`, if the two are adjacent.
    fn label_between(&self, from: &Self::Vertex, to: &Self::Vertex) -> Option<Self::Label> {
        self.neighbors(from).into_iter().find(|(_, u)| u == to).map(|(l, _)| l)
    }

    fn parse_label(&self, s: &str) -> Result<Self::Label, GraphError> {
        s.trim().parse().map_err(|_| GraphError::BadLabel(s.to_string()))
    }
}
