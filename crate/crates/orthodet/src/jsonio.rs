//! JSON exchange formats: representations as
//! `{ "label", "degree", "field": {"d": int|null}, "generators": [matrix...] }`
//! with matrices as arrays of arrays of field-element strings, and
//! automorphism data as a list of word strings like "g0 g1^-1 g0".

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::Matrix;
use crate::numfield::{parse_field_element, FieldDescriptor, NumFieldError};
use crate::repkit::{AutomorphismData, GroupWord, RepKitError, Representation};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Field(#[from] NumFieldError),
    #[error("{0}")]
    Rep(#[from] RepKitError),
    #[error("shape: {0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    d: Option<i64>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    label: String,
    degree: usize,
    field: FieldJson,
    generators: Vec<Vec<Vec<String>>>,
}

fn descriptor(f: &FieldJson) -> Result<FieldDescriptor, NumFieldError> {
    match f.d {
        None => Ok(FieldDescriptor::rational()),
        Some(d) => FieldDescriptor::quadratic(d),
    }
}

pub fn matrix_from_rows(
    rows: &[Vec<String>],
    field: FieldDescriptor,
) -> Result<Matrix, JsonError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(JsonError::Shape("ragged matrix rows".into()));
    }
    let mut parsed = Vec::with_capacity(r);
    for row in rows {
        let mut out = Vec::with_capacity(c);
        for s in row {
            out.push(parse_field_element(s, Some(field))?);
        }
        parsed.push(out);
    }
    Ok(Matrix::from_rows(parsed, field))
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn representation_to_json(rep: &Representation) -> String {
    let doc = RepJson {
        label: rep.label().to_string(),
        degree: rep.degree(),
        field: FieldJson {
            d: rep.field().d(),
        },
        generators: rep.generators().iter().map(matrix_to_rows).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn representation_from_json(text: &str) -> Result<Representation, JsonError> {
    let doc: RepJson = serde_json::from_str(text)?;
    let field = descriptor(&doc.field)?;
    let gens = doc
        .generators
        .iter()
        .map(|g| matrix_from_rows(g, field))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = Representation::new(doc.label, field, gens)?;
    if rep.degree() != doc.degree {
        return Err(JsonError::Shape(format!(
            "declared degree {} does not match generators of size {}",
            doc.degree,
            rep.degree()
        )));
    }
    Ok(rep)
}

pub fn automorphism_to_json(alpha: &AutomorphismData) -> String {
    let words: Vec<String> = alpha.images.iter().map(|w| w.to_string()).collect();
    serde_json::to_string_pretty(&words).expect("serializable")
}

pub fn automorphism_from_json(text: &str) -> Result<AutomorphismData, JsonError> {
    let words: Vec<String> = serde_json::from_str(text)?;
    let images = words
        .iter()
        .map(|s| GroupWord::parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AutomorphismData { images })
}
