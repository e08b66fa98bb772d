//! The 3-regular tree hanging from a fixed end, and the Grandparent graph.
//!
//! Coordinates: fix a reference ray `r_k` (one vertex per layer, with
//! `p(r_k) = r_{k-1}`) and let `r_{k+1}` be child 0 of `r_k`. A vertex at
//! layer `k` is described by the child bits leading down from the point
//! where it leaves the ray. That bit path never starts with 0 (a 0 would
//! keep it on the ray), so reading it as a binary number is injective: the
//! leading 1 doubles as a length marker and the empty path is 0.

use std::fmt;
use std::str::FromStr;

use super::HeightGraph;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TreeVertex {
    pub level: i64,
    /// Child bits below the ray, as a binary number with leading 1 (0 = on the ray).
    pub path: u128,
}

impl TreeVertex {
    pub const ROOT: TreeVertex = TreeVertex { level: 0, path: 0 };

    pub fn parent(self) -> TreeVertex {
        TreeVertex {
            level: self.level - 1,
            path: self.path >> 1,
        }
    }

    /// `p^steps(self)`.
    pub fn ancestor(self, steps: u32) -> TreeVertex {
        TreeVertex {
            level: self.level - i64::from(steps),
            path: self.path.checked_shr(steps).unwrap_or(0),
        }
    }

    pub fn child(self, bit: u8) -> TreeVertex {
        let path = if self.path == 0 {
            u128::from(bit)
        } else {
            assert!(self.path.leading_zeros() > 1, "tree path exceeds 127 levels");
            (self.path << 1) | u128::from(bit)
        };
        TreeVertex {
            level: self.level + 1,
            path,
        }
    }

    /// Which child of its parent this vertex is.
    pub fn child_bit(self) -> u8 {
        (self.path & 1) as u8
    }

    fn is_ancestor_of(self, w: TreeVertex) -> bool {
        w.level >= self.level && w.ancestor((w.level - self.level) as u32) == self
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path == 0 {
            write!(f, "({}, ε)", self.level)
        } else {
            write!(f, "({}, {:b})", self.level, self.path)
        }
    }
}

/// The automorphism of the end-fixed tree carrying `a` onto `b`.
///
/// Ancestors of `a` go to the matching ancestors of `b`; a subtree that
/// branches off `a`'s ancestral line at `p^j(a)` is sent to the subtree
/// branching off `b`'s line at `p^j(b)`, keeping all bits below the branch
/// point. Swapping `a` and `b` gives the inverse map.
fn tree_transport(a: TreeVertex, b: TreeVertex, w: TreeVertex) -> TreeVertex {
    let mut j = 0u32;
    while !a.ancestor(j).is_ancestor_of(w) {
        j += 1;
    }
    let anchor = a.ancestor(j);
    let depth = (w.level - anchor.level) as u32;
    let mut out = b.ancestor(j);
    for t in 0..depth {
        let bit = if t == 0 && j > 0 {
            1 - b.ancestor(j - 1).child_bit()
        } else {
            w.ancestor(depth - 1 - t).child_bit()
        };
        out = out.child(bit);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TreeStep {
    Parent,
    Child0,
    Child1,
}

impl fmt::Display for TreeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeStep::Parent => "P",
            TreeStep::Child0 => "C0",
            TreeStep::Child1 => "C1",
        })
    }
}

impl FromStr for TreeStep {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "P" | "Parent" => Ok(TreeStep::Parent),
            "C0" | "Child0" => Ok(TreeStep::Child0),
            "C1" | "Child1" => Ok(TreeStep::Child1),
            _ => Err(()),
        }
    }
}

/// `T_3` hanging from an end; `h` is the layer index.
#[derive(Debug, Clone, Default)]
pub struct Tree3;

pub fn make_tree3() -> Tree3 {
    Tree3
}

impl HeightGraph for Tree3 {
    type Vertex = TreeVertex;
    type Label = TreeStep;

    fn name(&self) -> &str {
        "t3"
    }

    fn neighbors_into(&self, v: &TreeVertex, out: &mut Vec<(TreeStep, TreeVertex)>) {
        out.push((TreeStep::Parent, v.parent()));
        out.push((TreeStep::Child0, v.child(0)));
        out.push((TreeStep::Child1, v.child(1)));
    }

    fn height(&self, v: &TreeVertex) -> i64 {
        v.level
    }

    fn orbit(&self, _v: &TreeVertex) -> usize {
        0
    }

    fn orbit_count(&self) -> usize {
        1
    }

    fn representatives(&self) -> Vec<TreeVertex> {
        vec![TreeVertex::ROOT]
    }

    fn height_lipschitz(&self) -> i64 {
        1
    }

    fn max_degree(&self) -> usize {
        3
    }

    fn transport(&self, from: &TreeVertex, to: &TreeVertex, w: &TreeVertex) -> Option<TreeVertex> {
        Some(tree_transport(*from, *to, *w))
    }

    fn step(&self, v: &TreeVertex, label: TreeStep) -> Option<TreeVertex> {
        Some(match label {
            TreeStep::Parent => v.parent(),
            TreeStep::Child0 => v.child(0),
            TreeStep::Child1 => v.child(1),
        })
    }
}

/// Step labels of the Grandparent graph. `GChildIJ` is child `I`, then
/// child `J` of that child.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GrandparentStep {
    Parent,
    GrandParent,
    Child0,
    Child1,
    GChild00,
    GChild01,
    GChild10,
    GChild11,
}

impl GrandparentStep {
    pub const ALL: [GrandparentStep; 8] = [
        GrandparentStep::Parent,
        GrandparentStep::GrandParent,
        GrandparentStep::Child0,
        GrandparentStep::Child1,
        GrandparentStep::GChild00,
        GrandparentStep::GChild01,
        GrandparentStep::GChild10,
        GrandparentStep::GChild11,
    ];

    fn apply(self, v: TreeVertex) -> TreeVertex {
        use GrandparentStep::*;
        match self {
            Parent => v.parent(),
            GrandParent => v.ancestor(2),
            Child0 => v.child(0),
            Child1 => v.child(1),
            GChild00 => v.child(0).child(0),
            GChild01 => v.child(0).child(1),
            GChild10 => v.child(1).child(0),
            GChild11 => v.child(1).child(1),
        }
    }

    fn token(self) -> &'static str {
        use GrandparentStep::*;
        match self {
            Parent => "P",
            GrandParent => "PP",
            Child0 => "C0",
            Child1 => "C1",
            GChild00 => "C00",
            GChild01 => "C01",
            GChild10 => "C10",
            GChild11 => "C11",
        }
    }
}

impl fmt::Display for GrandparentStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for GrandparentStep {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        GrandparentStep::ALL
            .into_iter()
            .find(|l| l.token() == s || format!("{l:?}") == s)
            .ok_or(())
    }
}

/// The Grandparent graph: `T_3` hanging from an end plus all edges
/// `(v, p²(v))`. Every vertex has degree 8 and `h` (the layer) has `d = 2`.
#[derive(Debug, Clone, Default)]
pub struct Grandparent;

pub fn make_grandparent() -> Grandparent {
    Grandparent
}

impl HeightGraph for Grandparent {
    type Vertex = TreeVertex;
    type Label = GrandparentStep;

    fn name(&self) -> &str {
        "gp"
    }

    fn neighbors_into(&self, v: &TreeVertex, out: &mut Vec<(GrandparentStep, TreeVertex)>) {
        for l in GrandparentStep::ALL {
            out.push((l, l.apply(*v)));
        }
    }

    fn height(&self, v: &TreeVertex) -> i64 {
        v.level
    }

    fn orbit(&self, _v: &TreeVertex) -> usize {
        0
    }

    fn orbit_count(&self) -> usize {
        1
    }

    fn representatives(&self) -> Vec<TreeVertex> {
        vec![TreeVertex::ROOT]
    }

    fn height_lipschitz(&self) -> i64 {
        2
    }

    fn max_degree(&self) -> usize {
        8
    }

    fn transport(&self, from: &TreeVertex, to: &TreeVertex, w: &TreeVertex) -> Option<TreeVertex> {
        Some(tree_transport(*from, *to, *w))
    }

    fn step(&self, v: &TreeVertex, label: GrandparentStep) -> Option<TreeVertex> {
        Some(label.apply(*v))
    }
}
