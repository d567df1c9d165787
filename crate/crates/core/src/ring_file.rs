//! JSON ring descriptors.
//!
//! Monomial form:
//!
//! ```json
//! {"field": {"char": 2}, "type": "monomial",
//!  "generators": [{"name": "b1", "degree": 1, "truncation": 4}]}
//! ```
//!
//! Table form (basis element 0 must be the unit; products with the unit may be
//! omitted, every other absent product is zero; coefficients are integers or
//! strings such as `"-1/2"`):
//!
//! ```json
//! {"field": {"char": 0}, "type": "table",
//!  "basis": [{"name": "1", "degree": 0}, {"name": "u", "degree": 1}, {"name": "v", "degree": 1},
//!            {"name": "w", "degree": 2}],
//!  "products": [["u", "v", "w", 1], ["v", "u", "w", -1]]}
//! ```

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, GeneratorSpec, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingDescriptor {
    Monomial {
        field: FieldSpec,
        generators: Vec<GeneratorSpec>,
    },
    Table {
        field: FieldSpec,
        basis: Vec<BasisSpec>,
        #[serde(default)]
        products: Vec<(String, String, String, Coefficient)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    fn to_scalar(&self, field: &FieldSpec) -> Result<Scalar> {
        match self {
            Coefficient::Int(v) => Ok(field.from_i64(*v)),
            Coefficient::Text(s) => {
                let r: BigRational = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
                field.from_rational(&r)
            }
        }
    }
}

impl RingDescriptor {
    pub fn field(&self) -> FieldSpec {
        match self {
            RingDescriptor::Monomial { field, .. } | RingDescriptor::Table { field, .. } => *field,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("ring descriptor, line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn build(&self) -> Result<Algebra> {
        self.build_with_cap(DEFAULT_MAX_DIM)
    }

    pub fn build_with_cap(&self, max_dim: usize) -> Result<Algebra> {
        match self {
            RingDescriptor::Monomial { field, generators } => {
                Algebra::monomial_with_cap(*field, generators.clone(), max_dim)
            }
            RingDescriptor::Table { field, basis, products } => {
                let index = |name: &str| {
                    basis
                        .iter()
                        .position(|b| b.name == name)
                        .ok_or_else(|| Error::InvalidPresentation(format!("unknown basis element {name:?}")))
                };
                let mut triples = Vec::with_capacity(products.len());
                for (x, y, z, c) in products {
                    triples.push((index(x)?, index(y)?, index(z)?, c.to_scalar(field)?));
                }
                let basis = basis.iter().map(|b| (b.name.clone(), b.degree)).collect();
                Algebra::table_with_cap(*field, basis, triples, max_dim)
            }
        }
    }
}
