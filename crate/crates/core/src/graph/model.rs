use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::GraphError;

/// The built-in models, by their command-line names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Z1,
    Z2,
    Z3,
    T3,
    Gp,
    Honeycomb,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Z1,
        ModelKind::Z2,
        ModelKind::Z3,
        ModelKind::T3,
        ModelKind::Gp,
        ModelKind::Honeycomb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Z1 => "z1",
            ModelKind::Z2 => "z2",
            ModelKind::Z3 => "z3",
            ModelKind::T3 => "t3",
            ModelKind::Gp => "gp",
            ModelKind::Honeycomb => "honeycomb",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| GraphError::UnknownModel(s.to_string()))
    }
}

/// Runs `$body` with `$g` bound to a reference to the concrete model.
#[macro_export]
macro_rules! with_model {
    ($kind:expr, |$g:ident| $body:expr) => {{
        use $crate::graph::ModelKind as __Kind;
        match $kind {
            __Kind::Z1 => {
                let $g = &$crate::graph::make_lattice(1);
                $body
            }
            __Kind::Z2 => {
                let $g = &$crate::graph::make_lattice(2);
                $body
            }
            __Kind::Z3 => {
                let $g = &$crate::graph::make_lattice(3);
                $body
            }
            __Kind::T3 => {
                let $g = &$crate::graph::make_tree3();
                $body
            }
            __Kind::Gp => {
                let $g = &$crate::graph::make_grandparent();
                $body
            }
            __Kind::Honeycomb => {
                let $g = &$crate::graph::make_honeycomb();
                $body
            }
        }
    }};
}
