use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::HeightGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Loop {
        vertex: String,
    },
    DuplicateNeighbor {
        vertex: String,
        neighbor: String,
    },
    DuplicateLabel {
        vertex: String,
        label: String,
    },
    DegreeExceeded {
        vertex: String,
        degree: usize,
        max: usize,
    },
    Asymmetric {
        vertex: String,
        neighbor: String,
    },
    LipschitzExceeded {
        vertex: String,
        neighbor: String,
        difference: i64,
    },
    NoLowerNeighbor {
        vertex: String,
    },
    NoHigherNeighbor {
        vertex: String,
    },
    OrbitOutOfRange {
        vertex: String,
        orbit: usize,
    },
    OrbitMismatch {
        vertex: String,
        orbit: usize,
    },
    TransportMismatch {
        vertex: String,
    },
    RepresentativeHeight {
        vertex: String,
        height: i64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub model: String,
    pub radius: usize,
    pub vertices_checked: usize,
    pub observed_d: i64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sorted `(height offset, neighbour orbit)` pairs: the local picture an orbit
/// index promises to be identical across the orbit.
fn local_type<G: HeightGraph>(g: &G, v: &G::Vertex) -> Vec<(i64, usize)> {
    let h = g.height(v);
    let mut t: Vec<(i64, usize)> = g
        .neighbors(v)
        .iter()
        .map(|(_, u)| (g.height(u) - h, g.orbit(u)))
        .collect();
    t.sort_unstable();
    t
}

/// Scans the radius-`radius` ball around every orbit representative and
/// reports every local violation of the graph-height-function axioms.
pub fn validate_model<G: HeightGraph>(g: &G, radius: usize) -> ValidationReport {
    let reps = g.representatives();
    let d = g.height_lipschitz();
    let mut violations = Vec::new();
    let mut observed_d = 0;
    let mut checked = HashSet::new();
    let rep_types: Vec<Vec<(i64, usize)>> = reps.iter().map(|r| local_type(g, r)).collect();

    for rep in &reps {
        if g.height(rep) != 0 {
            violations.push(Violation::RepresentativeHeight {
                vertex: rep.to_string(),
                height: g.height(rep),
            });
        }
    }

    for rep in &reps {
        let mut dist = HashMap::from([(rep.clone(), 0usize)]);
        let mut queue = VecDeque::from([rep.clone()]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[&v];
            let nbrs = g.neighbors(&v);
            if dv < radius {
                for (_, u) in &nbrs {
                    if !dist.contains_key(u) {
                        dist.insert(u.clone(), dv + 1);
                        queue.push_back(u.clone());
                    }
                }
            }
            if !checked.insert(v.clone()) {
                continue;
            }
            let name = v.to_string();
            let h = g.height(&v);

            if nbrs.len() > g.max_degree() {
                violations.push(Violation::DegreeExceeded {
                    vertex: name.clone(),
                    degree: nbrs.len(),
                    max: g.max_degree(),
                });
            }
            let mut seen_nbr = HashSet::new();
            let mut seen_label = HashSet::new();
            let (mut lower, mut higher) = (false, false);
            for (label, u) in &nbrs {
                if *u == v {
                    violations.push(Violation::Loop { vertex: name.clone() });
                }
                if !seen_nbr.insert(u) {
                    violations.push(Violation::DuplicateNeighbor {
                        vertex: name.clone(),
                        neighbor: u.to_string(),
                    });
                }
                if !seen_label.insert(*label) {
                    violations.push(Violation::DuplicateLabel {
                        vertex: name.clone(),
                        label: label.to_string(),
                    });
                }
                if g.label_between(u, &v).is_none() {
                    violations.push(Violation::Asymmetric {
                        vertex: name.clone(),
                        neighbor: u.to_string(),
                    });
                }
                let diff = g.height(u) - h;
                observed_d = observed_d.max(diff.abs());
                if diff.abs() > d {
                    violations.push(Violation::LipschitzExceeded {
                        vertex: name.clone(),
                        neighbor: u.to_string(),
                        difference: diff,
                    });
                }
                lower |= diff < 0;
                higher |= diff > 0;
            }
            if !lower {
                violations.push(Violation::NoLowerNeighbor { vertex: name.clone() });
            }
            if !higher {
                violations.push(Violation::NoHigherNeighbor { vertex: name.clone() });
            }

            let orbit = g.orbit(&v);
            if orbit >= reps.len() {
                violations.push(Violation::OrbitOutOfRange { vertex: name, orbit });
                continue;
            }
            if local_type(g, &v) != rep_types[orbit] {
                violations.push(Violation::OrbitMismatch {
                    vertex: name.clone(),
                    orbit,
                });
            }
            let rep = &reps[orbit];
            let transported_ok = g.transport(rep, &v, rep).as_ref() == Some(&v)
                && g.neighbors(rep).iter().all(|(_, u)| {
                    g.transport(rep, &v, u).is_some_and(|gu| {
                        g.height(&gu) - h == g.height(u) - g.height(rep) && g.label_between(&v, &gu).is_some()
                    })
                });
            if !transported_ok {
                violations.push(Violation::TransportMismatch { vertex: name });
            }
        }
    }

    ValidationReport {
        model: g.name().to_string(),
        radius,
        vertices_checked: checked.len(),
        observed_d,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::honeycomb::make_honeycomb;
    use crate::graph::lattice::make_lattice;
    use crate::graph::tree::{make_grandparent, make_tree3};

    /// `Z` with `h(v) = floor(v / 2)`: half the vertices have no higher
    /// neighbour, the other half no lower one.
    struct Plateau;

    impl HeightGraph for Plateau {
        type Vertex = i64;
        type Label = i8;

        fn name(&self) -> &str {
            "plateau"
        }
        fn neighbors_into(&self, v: &i64, out: &mut Vec<(i8, i64)>) {
            out.push((-1, v - 1));
            out.push((1, v + 1));
        }
        fn height(&self, v: &i64) -> i64 {
            v.div_euclid(2)
        }
        fn orbit(&self, _: &i64) -> usize {
            0
        }
        fn orbit_count(&self) -> usize {
            1
        }
        fn representatives(&self) -> Vec<i64> {
            vec![0]
        }
        fn height_lipschitz(&self) -> i64 {
            1
        }
        fn max_degree(&self) -> usize {
            2
        }
        fn transport(&self, from: &i64, to: &i64, w: &i64) -> Option<i64> {
            Some(w - from + to)
        }
    }

    #[test]
    fn builtin_models_are_clean() {
        let reports = [
            validate_model(&make_lattice(1), 4),
            validate_model(&make_lattice(2), 4),
            validate_model(&make_lattice(3), 3),
            validate_model(&make_tree3(), 4),
            validate_model(&make_grandparent(), 3),
            validate_model(&make_honeycomb(), 4),
        ];
        for r in &reports {
            assert!(
                r.is_ok(),
                "{}: {:?}",
                r.model,
                &r.violations[..r.violations.len().min(3)]
            );
        }
        assert_eq!(reports[1].observed_d, 1);
        assert_eq!(reports[4].observed_d, 2);
    }

    #[test]
    fn plateau_violates_condition_iii() {
        let r = validate_model(&Plateau, 3);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NoHigherNeighbor { .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NoLowerNeighbor { .. })));
    }
}
