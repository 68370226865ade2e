//! JSON interchange for algebras and elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Parity, Root, RootDatum, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseMatrix, SparseVector};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormEntry {
    pub i: usize,
    pub j: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootJson {
    pub values: Vec<Scalar>,
    pub space: Vec<usize>,
    pub parity: u8,
    pub positive: bool,
    pub simple: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDatumJson {
    pub cartan: Vec<usize>,
    pub roots: Vec<RootJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub base: Vec<usize>,
    pub theta: Vec<usize>,
    pub z: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub form: Vec<FormEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_datum: Option<RootDatumJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub takiff_of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutJson>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &SuperAlgebra, rd: Option<&RootDatum>) -> Self {
        let mut brackets = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for (k, c) in a.bracket_basis(i, j).iter() {
                    brackets.push(BracketEntry { i, j, k, coeff: c.clone() });
                }
            }
        }
        let form = a
            .form()
            .map(|f| f.entries().map(|(i, j, c)| FormEntry { i, j, coeff: c.clone() }).collect())
            .unwrap_or_default();
        let root_datum = rd.map(|rd| RootDatumJson {
            cartan: rd.cartan().to_vec(),
            roots: rd
                .roots()
                .iter()
                .map(|r| RootJson {
                    values: r.values.clone(),
                    space: r.space.clone(),
                    parity: r.parity.bit(),
                    positive: r.positive,
                    simple: r.simple,
                })
                .collect(),
        });
        AlgebraJson {
            name: a.name().to_string(),
            dim: a.dim(),
            parity: a.parities().iter().map(|p| p.bit()).collect(),
            labels: a.labels().to_vec(),
            brackets,
            form,
            root_datum,
            takiff_of: None,
            layout: None,
        }
    }

    /// Algebra (form absent when no entries are listed) and its root datum, if recorded.
    pub fn to_algebra(&self) -> Result<(SuperAlgebra, Option<RootDatum>)> {
        if self.labels.len() != self.dim || self.parity.len() != self.dim {
            return Err(Error::Parse(format!(
                "dim {} disagrees with {} labels / {} parities",
                self.dim,
                self.labels.len(),
                self.parity.len()
            )));
        }
        let brackets = self.brackets.iter().map(|b| (b.i, b.j, SparseVector::single(b.k, b.coeff.clone())));
        let form = if self.form.is_empty() {
            None
        } else {
            let mut f = SparseMatrix::zeros(self.dim, self.dim);
            for e in &self.form {
                f.add_entry(e.i, e.j, &e.coeff)?;
            }
            Some(f)
        };
        let parity = self.parity.iter().map(|&b| Parity::from_bit(b)).collect();
        let alg = SuperAlgebra::new(self.name.clone(), self.labels.clone(), parity, brackets, form)?;
        // a takiff file records the root datum of its base algebra
        let rd = if self.layout.is_some() { None } else { self.root_datum_for(&alg)? };
        Ok((alg, rd))
    }

    /// The recorded root datum, validated against `alg`.
    pub fn root_datum_for(&self, alg: &SuperAlgebra) -> Result<Option<RootDatum>> {
        let Some(r) = &self.root_datum else { return Ok(None) };
        let roots = r
            .roots
            .iter()
            .map(|x| Root {
                values: x.values.clone(),
                space: x.space.clone(),
                parity: Parity::from_bit(x.parity),
                positive: x.positive,
                simple: x.simple,
            })
            .collect();
        Ok(Some(RootDatum::new(alg, r.cartan.clone(), roots)?))
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn resolve_key(a: &SuperAlgebra, key: &str) -> Result<usize> {
    if let Some(i) = a.index_of(key) {
        return Ok(i);
    }
    match key.parse::<usize>() {
        Ok(i) if i < a.dim() => Ok(i),
        _ => Err(Error::Parse(format!("unknown basis element '{key}' in {}", a.name()))),
    }
}

/// Parses `{label-or-index: scalar, ...}`.
pub fn element_from_value(a: &SuperAlgebra, v: &Value) -> Result<SparseVector> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("element must be a JSON object".into()))?;
    let mut out = SparseVector::new();
    for (k, c) in obj {
        let i = resolve_key(a, k)?;
        let c: Scalar = serde_json::from_value(c.clone())?;
        out.add_term(i, &c);
    }
    Ok(out)
}

/// Parses either a bare element or an object of named elements such as `{"e": {...}, "f": {...}}`.
pub fn named_elements_from_value(a: &SuperAlgebra, v: &Value) -> Result<BTreeMap<String, SparseVector>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("element file must be a JSON object".into()))?;
    let nested = !obj.is_empty() && obj.values().all(|x| x.is_object());
    let mut out = BTreeMap::new();
    if nested {
        for (name, x) in obj {
            out.insert(name.clone(), element_from_value(a, x)?);
        }
    } else {
        out.insert("e".to_string(), element_from_value(a, v)?);
    }
    Ok(out)
}

pub fn element_to_value(a: &SuperAlgebra, v: &SparseVector) -> Value {
    let mut m = serde_json::Map::new();
    for (i, c) in v.iter() {
        m.insert(a.label(i).to_string(), Value::String(c.to_string()));
    }
    Value::Object(m)
}
