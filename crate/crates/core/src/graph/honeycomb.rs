use std::fmt;
use std::str::FromStr;

use super::HeightGraph;

/// Brick-wall coordinates: horizontal edges everywhere, and a vertical edge
/// from `(x, y)` up to `(x, y + 1)` whenever `x + y` is even.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HexVertex {
    pub x: i64,
    pub y: i64,
}

impl HexVertex {
    pub fn parity(self) -> usize {
        (self.x + self.y).rem_euclid(2) as usize
    }
}

impl fmt::Display for HexVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum HexStep {
    East,
    West,
    Vertical,
}

impl fmt::Display for HexStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HexStep::East => "E",
            HexStep::West => "W",
            HexStep::Vertical => "V",
        })
    }
}

impl FromStr for HexStep {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "E" | "East" => Ok(HexStep::East),
            "W" | "West" => Ok(HexStep::West),
            "V" | "Vertical" => Ok(HexStep::Vertical),
            _ => Err(()),
        }
    }
}

/// Honeycomb lattice in brick-wall form with `h = x`.
///
/// `Γ` is the group of translations by `(a, b)` with `a + b` even, which has
/// two orbits (the parity classes of `x + y`).
#[derive(Debug, Clone, Default)]
pub struct Honeycomb;

pub fn make_honeycomb() -> Honeycomb {
    Honeycomb
}

impl HeightGraph for Honeycomb {
    type Vertex = HexVertex;
    type Label = HexStep;

    fn name(&self) -> &str {
        "honeycomb"
    }

    fn neighbors_into(&self, v: &HexVertex, out: &mut Vec<(HexStep, HexVertex)>) {
        for l in [HexStep::East, HexStep::West, HexStep::Vertical] {
            out.push((l, self.step(v, l).expect("every label is valid everywhere")));
        }
    }

    fn height(&self, v: &HexVertex) -> i64 {
        v.x
    }

    fn orbit(&self, v: &HexVertex) -> usize {
        v.parity()
    }

    fn orbit_count(&self) -> usize {
        2
    }

    fn representatives(&self) -> Vec<HexVertex> {
        vec![HexVertex { x: 0, y: 0 }, HexVertex { x: 0, y: 1 }]
    }

    fn height_lipschitz(&self) -> i64 {
        1
    }

    fn max_degree(&self) -> usize {
        3
    }

    fn transport(&self, from: &HexVertex, to: &HexVertex, w: &HexVertex) -> Option<HexVertex> {
        (from.parity() == to.parity()).then(|| HexVertex {
            x: w.x - from.x + to.x,
            y: w.y - from.y + to.y,
        })
    }

    fn step(&self, v: &HexVertex, label: HexStep) -> Option<HexVertex> {
        Some(match label {
            HexStep::East => HexVertex { x: v.x + 1, y: v.y },
            HexStep::West => HexVertex { x: v.x - 1, y: v.y },
            HexStep::Vertical if v.parity() == 0 => HexVertex { x: v.x, y: v.y + 1 },
            HexStep::Vertical => HexVertex { x: v.x, y: v.y - 1 },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_three_with_one_level_edge() {
        let g = make_honeycomb();
        for v in g.representatives() {
            let dh: Vec<i64> = g
                .neighbors(&v)
                .iter()
                .map(|(_, u)| g.height(u) - g.height(&v))
                .collect();
            assert_eq!(dh, vec![1, -1, 0]);
        }
        assert_eq!(g.orbit_count(), 2);
    }

    #[test]
    fn transport_needs_matching_parity() {
        let g = make_honeycomb();
        let a = HexVertex { x: 0, y: 0 };
        assert!(g.transport(&a, &HexVertex { x: 1, y: 0 }, &a).is_none());
        assert_eq!(
            g.transport(&a, &HexVertex { x: 1, y: 1 }, &HexVertex { x: 0, y: 1 }),
            Some(HexVertex { x: 1, y: 2 })
        );
    }
}
