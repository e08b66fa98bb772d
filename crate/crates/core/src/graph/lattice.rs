use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use super::HeightGraph;

/// A point of `Z^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticePoint(pub SmallVec<[i64; 4]>);

impl LatticePoint {
    pub fn new(coords: &[i64]) -> Self {
        LatticePoint(SmallVec::from_slice(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Unit step along one axis; encoded as `2 * axis + (0 for +1, 1 for -1)`.
///
/// Axes 0, 1, 2 print as `E/W`, `N/S`, `U/D`; higher axes as `+k` / `-k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeStep(pub u8);

impl LatticeStep {
    pub fn new(axis: usize, positive: bool) -> Self {
        LatticeStep((2 * axis + usize::from(!positive)) as u8)
    }

    pub fn axis(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn delta(self) -> i64 {
        if self.0.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

const LETTERS: [(char, char); 3] = [('E', 'W'), ('N', 'S'), ('U', 'D')];

impl fmt::Display for LatticeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = self.axis();
        match LETTERS.get(axis) {
            Some(&(pos, neg)) => write!(f, "{}", if self.delta() > 0 { pos } else { neg }),
            None => write!(f, "{}{}", if self.delta() > 0 { '+' } else { '-' }, axis),
        }
    }
}

impl FromStr for LatticeStep {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        for (axis, &(pos, neg)) in LETTERS.iter().enumerate() {
            if s.len() == 1 {
                let c = s.chars().next().ok_or(())?.to_ascii_uppercase();
                if c == pos {
                    return Ok(LatticeStep::new(axis, true));
                }
                if c == neg {
                    return Ok(LatticeStep::new(axis, false));
                }
            }
        }
        let positive = match s.as_bytes().first() {
            Some(b'+') => true,
            Some(b'-') => false,
            _ => return Err(()),
        };
        let axis: usize = s[1..].parse().map_err(|_| ())?;
        Ok(LatticeStep::new(axis, positive))
    }
}

/// The hypercubic lattice `Z^d` with height equal to the first coordinate.
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    name: String,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "lattice dimension must be positive");
        Lattice {
            dim,
            name: format!("z{dim}"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `Z^dim` with `h(x) = x_1`, `d = 1`, translations as `Γ`.
pub fn make_lattice(dim: usize) -> Lattice {
    Lattice::new(dim)
}

impl HeightGraph for Lattice {
    type Vertex = LatticePoint;
    type Label = LatticeStep;

    fn name(&self) -> &str {
        &self.name
    }

    fn neighbors_into(&self, v: &LatticePoint, out: &mut Vec<(LatticeStep, LatticePoint)>) {
        for axis in 0..self.dim {
            for positive in [true, false] {
                let step = LatticeStep::new(axis, positive);
                let mut u = v.clone();
                u.0[axis] += step.delta();
                out.push((step, u));
            }
        }
    }

    fn height(&self, v: &LatticePoint) -> i64 {
        v.0[0]
    }

    fn orbit(&self, _v: &LatticePoint) -> usize {
        0
    }

    fn orbit_count(&self) -> usize {
        1
    }

    fn representatives(&self) -> Vec<LatticePoint> {
        vec![LatticePoint(SmallVec::from_elem(0, self.dim))]
    }

    fn height_lipschitz(&self) -> i64 {
        1
    }

    fn max_degree(&self) -> usize {
        2 * self.dim
    }

    fn transport(&self, from: &LatticePoint, to: &LatticePoint, w: &LatticePoint) -> Option<LatticePoint> {
        let coords = (0..self.dim).map(|i| w.0[i] - from.0[i] + to.0[i]).collect();
        Some(LatticePoint(coords))
    }

    fn step(&self, v: &LatticePoint, label: LatticeStep) -> Option<LatticePoint> {
        let axis = label.axis();
        (axis < self.dim).then(|| {
            let mut u = v.clone();
            u.0[axis] += label.delta();
            u
        })
    }
}
