use std::collections::HashSet;
use std::fmt;

use super::{GraphError, HeightGraph};

/// A walk stored as its root, its step labels and the vertex / height
/// sequences those labels produce.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Walk<V, L> {
    steps: Vec<L>,
    vertices: Vec<V>,
    heights: Vec<i64>,
}

/// Replays `labels` from `v`.
pub fn apply_steps<G: HeightGraph>(
    g: &G,
    v: &G::Vertex,
    labels: &[G::Label],
) -> Result<Walk<G::Vertex, G::Label>, GraphError> {
    let mut vertices = Vec::with_capacity(labels.len() + 1);
    let mut heights = Vec::with_capacity(labels.len() + 1);
    vertices.push(v.clone());
    heights.push(g.height(v));
    for (position, &label) in labels.iter().enumerate() {
        let cur = vertices.last().expect("non-empty");
        let next = g.step(cur, label).ok_or_else(|| GraphError::InvalidLabel {
            label: label.to_string(),
            position,
            vertex: cur.to_string(),
        })?;
        heights.push(g.height(&next));
        vertices.push(next);
    }
    Ok(Walk {
        steps: labels.to_vec(),
        vertices,
        heights,
    })
}

impl<V, L> Walk<V, L> {
    pub(crate) fn from_parts(steps: Vec<L>, vertices: Vec<V>, heights: Vec<i64>) -> Self {
        debug_assert_eq!(steps.len() + 1, vertices.len());
        debug_assert_eq!(vertices.len(), heights.len());
        Walk {
            steps,
            vertices,
            heights,
        }
    }
}

impl<V, L> Walk<V, L>
where
    V: Clone + Eq + std::hash::Hash + fmt::Display,
    L: Copy,
{
    pub fn single<G: HeightGraph<Vertex = V, Label = L>>(g: &G, v: V) -> Self {
        Walk {
            steps: Vec::new(),
            heights: vec![g.height(&v)],
            vertices: vec![v],
        }
    }

    /// Builds a walk from its vertex sequence, recovering the labels.
    pub fn from_vertices<G: HeightGraph<Vertex = V, Label = L>>(g: &G, vertices: Vec<V>) -> Result<Self, GraphError> {
        assert!(!vertices.is_empty(), "a walk has at least one vertex");
        let steps = vertices
            .windows(2)
            .map(|w| {
                g.label_between(&w[0], &w[1]).ok_or_else(|| GraphError::NotAdjacent {
                    from: w[0].to_string(),
                    to: w[1].to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let heights = vertices.iter().map(|v| g.height(v)).collect();
        Ok(Walk {
            steps,
            vertices,
            heights,
        })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn root(&self) -> &V {
        &self.vertices[0]
    }

    pub fn end(&self) -> &V {
        self.vertices.last().expect("non-empty")
    }

    pub fn steps(&self) -> &[L] {
        &self.steps
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn span(&self) -> i64 {
        let max = self.heights.iter().max().expect("non-empty");
        let min = self.heights.iter().min().expect("non-empty");
        max - min
    }

    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(v))
    }

    /// The sub-walk `(v_from, …, v_to)`.
    pub fn slice(&self, from: usize, to: usize) -> Self {
        Walk {
            steps: self.steps[from..to].to_vec(),
            vertices: self.vertices[from..=to].to_vec(),
            heights: self.heights[from..=to].to_vec(),
        }
    }

    /// The same vertices traversed backwards.
    pub fn reversed<G: HeightGraph<Vertex = V, Label = L>>(&self, g: &G) -> Self {
        let vertices: Vec<V> = self.vertices.iter().rev().cloned().collect();
        Walk::from_vertices(g, vertices).expect("adjacency is symmetric")
    }

    /// Image of this walk under the group element that maps its root to `to`.
    pub fn transported<G: HeightGraph<Vertex = V, Label = L>>(&self, g: &G, to: &V) -> Result<Self, GraphError> {
        let from = self.root();
        let vertices = self
            .vertices
            .iter()
            .map(|w| {
                g.transport(from, to, w).ok_or_else(|| GraphError::OrbitMismatch {
                    from: from.to_string(),
                    to: to.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Walk::from_vertices(g, vertices)
    }

    /// `self` followed by the translate of `other` that starts at `self.end()`.
    pub fn concat<G: HeightGraph<Vertex = V, Label = L>>(&self, g: &G, other: &Self) -> Result<Self, GraphError> {
        let moved = other.transported(g, self.end())?;
        let mut out = self.clone();
        out.steps.extend_from_slice(&moved.steps);
        out.vertices.extend(moved.vertices.into_iter().skip(1));
        out.heights.extend_from_slice(&moved.heights[1..]);
        Ok(out)
    }
}

impl<V: fmt::Display, L: fmt::Display> fmt::Debug for Walk<V, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Walk[{} :", self.vertices[0])?;
        for l in &self.steps {
            write!(f, " {l}")?;
        }
        write!(f, "]")
    }
}

impl<V, L: fmt::Display> Walk<V, L> {
    pub fn label_string(&self) -> String {
        self.steps.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::lattice::{make_lattice, LatticePoint, LatticeStep};
    use crate::graph::tree::{make_grandparent, GrandparentStep, TreeVertex};

    fn labels(s: &str) -> Vec<LatticeStep> {
        s.split(',').map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn replay_on_square_lattice() {
        let g = make_lattice(2);
        let w = apply_steps(&g, &g.origin(), &labels("E,E,N")).unwrap();
        let want: Vec<LatticePoint> = [[0, 0], [1, 0], [2, 0], [2, 1]]
            .iter()
            .map(|c| LatticePoint::new(c))
            .collect();
        assert_eq!(w.vertices(), &want[..]);
        assert_eq!(w.heights(), &[0, 1, 2, 2]);
        assert_eq!(w.span(), 2);
    }

    #[test]
    fn replay_on_grandparent() {
        let g = make_grandparent();
        let o = TreeVertex::ROOT;
        let w = apply_steps(&g, &o, &[]).unwrap();
        assert_eq!(w.len(), 0);
        let back = apply_steps(&g, &o, &[GrandparentStep::Child0, GrandparentStep::Parent]).unwrap();
        assert_eq!(back.end(), &o);
        assert_eq!(back.len(), 2);
        assert!(!back.is_self_avoiding());
    }

    #[test]
    fn invalid_axis_is_rejected() {
        let g = make_lattice(2);
        let err = apply_steps(&g, &g.origin(), &labels("E,U")).unwrap_err();
        assert!(matches!(err, GraphError::InvalidLabel { position: 1, .. }));
    }

    #[test]
    fn concat_translates_second_walk() {
        let g = make_lattice(2);
        let a = apply_steps(&g, &g.origin(), &labels("E,N")).unwrap();
        let b = apply_steps(&g, &LatticePoint::new(&[7, -3]), &labels("E,S")).unwrap();
        let ab = a.concat(&g, &b).unwrap();
        assert_eq!(ab.label_string(), "E,N,E,S");
        assert_eq!(ab.end(), &LatticePoint::new(&[2, 0]));
        assert_eq!(ab.reversed(&g).label_string(), "N,W,S,W");
    }
}
