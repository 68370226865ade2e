use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVector};
use crate::superalg::SuperAlgebra;

/// A linear functional on a bracket-closed span of basis elements that
/// vanishes on brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilCharacter {
    algebra: String,
    domain: BTreeSet<usize>,
    values: BTreeMap<usize, Scalar>,
}

#[derive(Serialize, Deserialize)]
struct NilCharacterJson {
    algebra: String,
    domain: Vec<BasisKey>,
    values: BTreeMap<String, Scalar>,
}

/// A basis element written as an index or a label.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BasisKey {
    Index(usize),
    Label(String),
}

fn resolve(alg: &SuperAlgebra, key: &str) -> Result<usize> {
    alg.index_of(key)
        .or_else(|| key.parse().ok().filter(|&i| i < alg.dim()))
        .ok_or_else(|| Error::Parse(format!("unknown basis element '{key}'")))
}

impl NilCharacter {
    /// Checks closure of the domain and the character property on all domain pairs.
    pub fn new(alg: &SuperAlgebra, domain: impl IntoIterator<Item = usize>, values: BTreeMap<usize, Scalar>) -> Result<Self> {
        let domain: BTreeSet<usize> = domain.into_iter().collect();
        if let Some(&k) = domain.iter().find(|&&k| k >= alg.dim()) {
            return Err(Error::Contract(format!("domain index {k} outside {}", alg.name())));
        }
        if let Some(k) = values.keys().find(|k| !domain.contains(k)) {
            return Err(Error::Contract(format!("value given on {} outside the domain", alg.label(*k))));
        }
        let ch = NilCharacter {
            algebra: alg.name().to_string(),
            domain,
            values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        };
        for &x in &ch.domain {
            for &y in &ch.domain {
                let w = alg.bracket_basis(x, y);
                if let Some(k) = w.indices().find(|k| !ch.domain.contains(k)) {
                    return Err(Error::Algebra(format!(
                        "domain not closed: [{}, {}] has a {} component",
                        alg.label(x),
                        alg.label(y),
                        alg.label(k)
                    )));
                }
                let v = ch.value(w);
                if !v.is_zero() {
                    return Err(Error::Algebra(format!(
                        "not a character: value on [{}, {}] is {v}",
                        alg.label(x),
                        alg.label(y)
                    )));
                }
            }
        }
        Ok(ch)
    }

    pub fn zero(alg: &SuperAlgebra, domain: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(alg, domain, BTreeMap::new())
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn domain(&self) -> &BTreeSet<usize> {
        &self.domain
    }

    pub fn in_domain(&self, k: usize) -> bool {
        self.domain.contains(&k)
    }

    pub fn value_basis(&self, k: usize) -> Scalar {
        self.values.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value on an element; components outside the domain are ignored.
    pub fn value(&self, v: &SparseVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in v.iter() {
            if let Some(x) = self.values.get(&k) {
                acc += &(c * x);
            }
        }
        acc
    }

    pub fn values(&self) -> &BTreeMap<usize, Scalar> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_json(&self, alg: &SuperAlgebra) -> String {
        let j = NilCharacterJson {
            algebra: self.algebra.clone(),
            domain: self.domain.iter().map(|&k| BasisKey::Index(k)).collect(),
            values: self.values.iter().map(|(k, v)| (alg.label(*k).to_string(), v.clone())).collect(),
        };
        serde_json::to_string_pretty(&j).expect("character serializes")
    }

    /// Values may be keyed by label or by index.
    pub fn from_json(alg: &SuperAlgebra, text: &str) -> Result<Self> {
        let j: NilCharacterJson = serde_json::from_str(text)?;
        let mut values = BTreeMap::new();
        for (k, v) in j.values {
            values.insert(resolve(alg, &k)?, v);
        }
        let domain = j
            .domain
            .iter()
            .map(|k| match k {
                BasisKey::Index(i) => Ok(*i),
                BasisKey::Label(l) => resolve(alg, l),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg, domain, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::build_gl;

    #[test]
    fn rejects_value_on_bracket() {
        let (g, _) = build_gl(3, 0).unwrap();
        let e12 = g.index_of("E_12").unwrap();
        let e23 = g.index_of("E_23").unwrap();
        let e13 = g.index_of("E_13").unwrap();
        let ok = NilCharacter::new(&g, [e12, e23, e13], BTreeMap::from([(e12, Scalar::one()), (e23, Scalar::from_int(2))]));
        assert!(ok.is_ok());
        let bad = NilCharacter::new(&g, [e12, e23, e13], BTreeMap::from([(e13, Scalar::one())]));
        assert!(bad.is_err());
        let unclosed = NilCharacter::zero(&g, [e12, e23]);
        assert!(unclosed.is_err());
    }

    #[test]
    fn json_round_trip() {
        let (g, _) = build_gl(2, 1).unwrap();
        let e12 = g.index_of("E_12").unwrap();
        let ch = NilCharacter::new(&g, [e12], BTreeMap::from([(e12, Scalar::i())])).unwrap();
        let back = NilCharacter::from_json(&g, &ch.to_json(&g)).unwrap();
        assert_eq!(back, ch);
    }
}
