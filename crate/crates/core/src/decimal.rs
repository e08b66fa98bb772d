//! Serde helpers writing big integers as decimal strings.

use num_bigint::BigUint;
use serde::ser::{SerializeSeq, Serializer};

pub fn seq<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn rows<S: Serializer>(rows: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        out.serialize_element(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>())?;
    }
    out.end()
}
