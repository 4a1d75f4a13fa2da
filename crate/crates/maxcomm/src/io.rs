//! Algebra documents on disk and machine-readable certificates.
//!
//! A document is JSON of the shape
//! `{ "basis": [ [[entry, ...], ...], ... ], "n": int, "name": string }`
//! where an entry is either a JSON integer or a string holding a decimal
//! integer or a reduced fraction "p/q". Floats are rejected on input and
//! never produced on output, so serialization round-trips bit-exactly.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::exactlinalg::{format_rational, parse_rational, Rational, RationalMatrix};

/// A matrix algebra as stored on disk: ambient size, spanning set, and a
/// free-form name.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDocument {
    pub name: String,
    pub n: usize,
    pub basis: Vec<RationalMatrix>,
}

fn entry_to_value(x: &Rational) -> Value {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        if let Some(small) = x.numer().to_i64() {
            return Value::from(small);
        }
    }
    Value::String(format_rational(x))
}

fn value_to_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(num) => {
            if let Some(int) = num.as_i64() {
                Ok(Rational::from_integer(int.into()))
            } else if let Some(int) = num.as_u64() {
                Ok(Rational::from_integer(int.into()))
            } else {
                Err(Error::Parse(format!(
                    "matrix entries must be integers or \"p/q\" strings, got {num}"
                )))
            }
        }
        Value::String(text) => parse_rational(text),
        other => Err(Error::Parse(format!(
            "matrix entries must be integers or \"p/q\" strings, got {other}"
        ))),
    }
}

fn matrix_to_value(m: &RationalMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| entry_to_value(m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn value_to_matrix(v: &Value) -> Result<RationalMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let mut parsed: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        parsed.push(row.iter().map(value_to_entry).collect::<Result<_>>()?);
    }
    RationalMatrix::from_rows(parsed)
}

impl AlgebraDocument {
    pub fn new(name: impl Into<String>, n: usize, basis: Vec<RationalMatrix>) -> Self {
        AlgebraDocument {
            name: name.into(),
            n,
            basis,
        }
    }

    /// Snapshots an algebra's basis under the given name.
    pub fn from_algebra(name: impl Into<String>, algebra: &MatrixAlgebra) -> Self {
        AlgebraDocument {
            name: name.into(),
            n: algebra.ambient_size(),
            basis: algebra.basis().to_vec(),
        }
    }

    /// Parses and rank-filters the stored span into an algebra.
    pub fn to_algebra(&self) -> Result<MatrixAlgebra> {
        MatrixAlgebra::from_span(self.n, self.basis.clone())
    }

    /// Canonical pretty-printed JSON with keys in alphabetical order and
    /// a trailing newline.
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert(
            "basis".into(),
            Value::Array(self.basis.iter().map(matrix_to_value).collect()),
        );
        doc.insert("n".into(), Value::from(self.n as u64));
        doc.insert("name".into(), Value::String(self.name.clone()));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc))
            .expect("document serialization cannot fail");
        text.push('\n');
        text
    }

    /// Parses a JSON document. The `name` key is optional; unknown keys
    /// are ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("document must be a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("document needs an integer \"n\"".into()))?
            as usize;
        let basis_value = obj
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("document needs a \"basis\" array".into()))?;
        let basis = basis_value
            .iter()
            .map(value_to_matrix)
            .collect::<Result<Vec<_>>>()?;
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        Ok(AlgebraDocument { name, n, basis })
    }
}

/// The full verification record for one algebra. Fields that need the
/// centralizer solve are absent when verification was skipped; the Loewy
/// fields are absent when the algebra is not local.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub n: usize,
    pub dim: usize,
    pub dim_centralizer: Option<usize>,
    pub is_commutative: bool,
    pub is_closed: bool,
    pub is_local: bool,
    pub loewy_signature: Option<Vec<usize>>,
    pub nilpotency_degree: Option<usize>,
    pub maximal_commutative: Option<bool>,
    pub courter_like: Option<bool>,
}

impl Certificate {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("certificate serialization cannot fail");
        text.push('\n');
        text
    }
}

/// Certifies an algebra, including the centralizer solve.
pub fn certify(name: &str, algebra: &MatrixAlgebra) -> Result<Certificate> {
    certify_with(name, algebra, true)
}

/// Certifies an algebra; `run_centralizer` controls whether the
/// centralizer solve (the expensive part) runs. A span that is not
/// multiplicatively closed is an error identifying the first offending
/// product.
pub fn certify_with(
    name: &str,
    algebra: &MatrixAlgebra,
    run_centralizer: bool,
) -> Result<Certificate> {
    if let Some((i, j)) = algebra.closure_failure() {
        return Err(Error::NotClosed { i, j });
    }
    let dim = algebra.dimension();
    let n = algebra.ambient_size();
    let is_commutative = algebra.is_commutative();
    let (dim_centralizer, maximal_commutative, courter_like) = if run_centralizer {
        let c_dim = algebra.centralizer().dimension();
        let maximal = is_commutative && c_dim == dim;
        (Some(c_dim), Some(maximal), Some(maximal && dim < n))
    } else {
        (None, None, None)
    };
    let is_local = algebra.is_local()?;
    let (loewy_signature, nilpotency_degree) = if is_local {
        let signature = algebra.loewy_signature()?;
        let degree = signature.degree();
        (Some(signature.layers().to_vec()), Some(degree))
    } else {
        (None, None)
    };
    Ok(Certificate {
        name: name.to_string(),
        n,
        dim,
        dim_centralizer,
        is_commutative,
        is_closed: true,
        is_local,
        loewy_signature,
        nilpotency_degree,
        maximal_commutative,
        courter_like,
    })
}
