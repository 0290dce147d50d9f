//! JSON file formats: lattices, vectors, isometries, embeddings.
//!
//! Integers are written as JSON numbers when they fit in `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Int;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::IntMatrix;

/// An arbitrary-precision integer with a JSON-friendly encoding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                Int::from_str(v.trim()).map(JsonInt).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn to_json_vec(v: &[Int]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn to_json_matrix(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(JsonInt).collect()).collect()
}

pub fn from_json_vec(v: &[JsonInt]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn from_json_matrix(m: &[Vec<JsonInt>]) -> Result<IntMatrix> {
    let rows: Vec<Vec<Int>> = m.iter().map(|r| from_json_vec(r)).collect();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != c) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(IntMatrix::from_rows(rows))
}

/// `{"label": str, "gram": [[int]]}`, with an optional `"split_uu": true`
/// declaring a `U + U` summand in the first four coordinates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LatticeFile {
    pub label: String,
    pub gram: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub split_uu: bool,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeFile {
            label: l.label().unwrap_or("").to_string(),
            gram: to_json_matrix(l.gram()),
            split_uu: l.has_uu_split(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let l = Lattice::with_label(from_json_matrix(&self.gram)?, self.label.clone())?;
        if self.split_uu {
            l.declare_uu_split()
        } else {
            Ok(l)
        }
    }
}

/// `{"lattice": label, "coords": [int]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VectorFile {
    pub lattice: String,
    pub coords: Vec<JsonInt>,
}

impl VectorFile {
    pub fn from_vector(v: &LatticeVector) -> Self {
        VectorFile { lattice: v.lattice().label().unwrap_or("").to_string(), coords: to_json_vec(v.coords()) }
    }

    pub fn to_vector(&self, l: &Lattice) -> Result<LatticeVector> {
        l.vector(from_json_vec(&self.coords))
    }
}

/// `{"lattice": label, "matrix": [[int]]}`; columns are images of basis vectors.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IsometryFile {
    pub lattice: String,
    pub matrix: Vec<Vec<JsonInt>>,
}

/// Integer matrix mapping ambient coordinates of a source sublattice into a
/// target lattice: `{"source": label, "target": label, "matrix": [[int]]}`.
/// With `orthogonal_to`, the source sublattice is the orthogonal complement
/// of that vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EmbeddingFile {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthogonal_to: Option<Vec<JsonInt>>,
    pub matrix: Vec<Vec<JsonInt>>,
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big = Int::from(i64::MAX) * int(1000);
        let s = serde_json::to_string(&vec![JsonInt(int(-3)), JsonInt(big.clone())]).unwrap();
        assert_eq!(s, format!("[-3,\"{big}\"]"));
        let back: Vec<JsonInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[1].0, big);
    }

    #[test]
    fn lattice_file_parses() {
        let f: LatticeFile = parse_json(r#"{"label":"U","gram":[[0,1],[1,0]]}"#).unwrap();
        let l = f.to_lattice().unwrap();
        assert_eq!(l.det(), &int(-1));
        assert!(parse_json::<LatticeFile>("{\"label\": 3").is_err());
    }
}
