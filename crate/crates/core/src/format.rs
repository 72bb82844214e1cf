//! JSON polytope documents.
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "vertices": [
//!     [0, 0],
//!     [2, 1],
//!     [1, 2]
//!   ],
//!   "comment": "optional provenance"
//! }
//! ```
//!
//! Coordinates are plain decimal JSON integers of any size. Fractions and
//! exponent notation are rejected.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::polytope::LatticeSimplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<BigInt>>,
    pub comment: Option<String>,
}

impl PolytopeFile {
    pub fn from_simplex(simplex: &LatticeSimplex, comment: Option<String>) -> Self {
        PolytopeFile {
            ambient_dim: simplex.ambient_dim(),
            vertices: simplex.vertices().to_vec(),
            comment,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::Format("top level must be an object".into()))?;
        let ambient_dim = obj
            .get("ambient_dim")
            .ok_or_else(|| Error::Format("missing field `ambient_dim`".into()))
            .and_then(parse_integer)?;
        let ambient_dim = usize::try_from(&ambient_dim)
            .map_err(|_| Error::Format(format!("ambient_dim {ambient_dim} out of range")))?;
        let rows = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("`vertices` must be an array".into()))?;
        let mut vertices = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Format(format!("vertex {i} is not an array")))?;
            if row.len() != ambient_dim {
                return Err(Error::Format(format!(
                    "vertex {i} has {} coordinates, ambient_dim is {ambient_dim}",
                    row.len()
                )));
            }
            vertices.push(row.iter().map(parse_integer).collect::<Result<Vec<_>>>()?);
        }
        let comment = match obj.get("comment") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::Format("`comment` must be a string".into())),
        };
        Ok(PolytopeFile {
            ambient_dim,
            vertices,
            comment,
        })
    }

    pub fn to_simplex(&self) -> Result<LatticeSimplex> {
        LatticeSimplex::new(self.vertices.clone())
    }

    /// Renders the document, one vertex per line.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"ambient_dim\": {},\n", self.ambient_dim));
        out.push_str("  \"vertices\": [");
        for (i, v) in self.vertices.iter().enumerate() {
            let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
            let sep = if i + 1 == self.vertices.len() {
                ""
            } else {
                ","
            };
            out.push_str(&format!("\n    [{}]{sep}", coords.join(", ")));
        }
        out.push_str(if self.vertices.is_empty() {
            "]"
        } else {
            "\n  ]"
        });
        if let Some(c) = &self.comment {
            let quoted = serde_json::to_string(c).expect("strings always serialize");
            out.push_str(&format!(",\n  \"comment\": {quoted}"));
        }
        out.push_str("\n}\n");
        out
    }
}

fn parse_integer(v: &Value) -> Result<BigInt> {
    let Value::Number(n) = v else {
        return Err(Error::Format(format!("expected an integer, found {v}")));
    };
    let text = n.to_string();
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Format(format!(
            "`{text}` is not a plain decimal integer"
        )));
    }
    BigInt::from_str(&text).map_err(|e| Error::Format(e.to_string()))
}
