//! Exact enumeration of self-avoiding walks, bridges and half-space walks on
//! infinite graphs with a graph height function, the bridge decomposition
//! machinery built on them, and an exact generating-function engine for the
//! bridge constants of the Grandparent graph.

pub mod constants;
mod decimal;
pub mod decompose;
pub mod enumerate;
pub mod gf;
pub mod graph;
pub mod partitions;
mod search;
pub mod verify;
