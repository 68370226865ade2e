//! Finite-dimensional Lie superalgebras given by structure constants.

mod gl;
mod grading;
pub mod json;
mod roots;
mod span;
mod verify;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::exactlin::{kernel_basis, rank, Scalar, SparseMatrix, SparseVector};

pub use gl::{build_gl, build_gl_with_parities, principal_odd_data, PrincipalData};
pub use grading::{grading_by_adh, Grading};
pub use roots::{weyl_vector, Root, RootDatum, Weight};
pub use span::{subalgebra_from_span, Subalgebra};
pub use verify::{verify_algebra, verify_grading};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }

    /// `(-1)^{p·q}` is negative exactly when both are odd.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// A Lie superalgebra on a labeled basis with sparse structure constants.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    labels: Vec<String>,
    parity: Vec<Parity>,
    table: Vec<Vec<SparseVector>>,
    form: Option<SparseMatrix>,
    label_index: HashMap<String, usize>,
}

impl SuperAlgebra {
    /// Builds an algebra from the brackets of basis pairs; missing pairs are zero.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        parity: Vec<Parity>,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVector)>,
        form: Option<SparseMatrix>,
    ) -> Result<Self> {
        let dim = labels.len();
        if parity.len() != dim {
            return contract(format!("{} labels but {} parities", dim, parity.len()));
        }
        let mut table = vec![vec![SparseVector::new(); dim]; dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim || v.max_index().is_some_and(|k| k >= dim) {
                return contract(format!("bracket entry ({i},{j}) out of range for dimension {dim}"));
            }
            table[i][j] = table[i][j].add(&v);
        }
        if let Some(f) = &form {
            if f.rows() != dim || f.cols() != dim {
                return contract(format!("form is {}x{}, expected {dim}x{dim}", f.rows(), f.cols()));
            }
        }
        let mut label_index = HashMap::new();
        for (k, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), k).is_some() {
                return contract(format!("duplicate label {l}"));
            }
        }
        Ok(SuperAlgebra { name: name.into(), labels, parity, table, form, label_index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn form(&self) -> Option<&SparseMatrix> {
        self.form.as_ref()
    }

    pub fn with_form(mut self, form: Option<SparseMatrix>) -> Self {
        self.form = form;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `[b_i, b_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVector {
        &self.table[i][j]
    }

    /// Overwrites one structure constant pair; used to build corrupted tables in tests.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVector) {
        self.table[i][j] = v;
    }

    pub fn bracket(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let t = &self.table[i][j];
                if !t.is_zero() {
                    out.axpy(&(a * b), t);
                }
            }
        }
        out
    }

    /// `[b_i, y]`
    pub fn bracket_left(&self, i: usize, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, b) in y.iter() {
            out.axpy(b, &self.table[i][j]);
        }
        out
    }

    pub fn form_basis(&self, i: usize, j: usize) -> Scalar {
        self.form.as_ref().map_or_else(Scalar::zero, |f| f.get(i, j))
    }

    pub fn form_value(&self, x: &SparseVector, y: &SparseVector) -> Scalar {
        let Some(f) = &self.form else { return Scalar::zero() };
        let mut acc = Scalar::zero();
        for (i, a) in x.iter() {
            let fx = f.row(i);
            for (j, b) in y.iter() {
                if let Some(v) = fx.get_ref(j) {
                    acc += &(&(a * b) * v);
                }
            }
        }
        acc
    }

    /// Parity of a homogeneous element; `None` for zero or mixed vectors.
    pub fn parity_of(&self, v: &SparseVector) -> Option<Parity> {
        let mut it = v.indices().map(|i| self.parity[i]);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn homogeneous_parity(&self, v: &SparseVector) -> Result<Parity> {
        if v.is_zero() {
            return Ok(Parity::Even);
        }
        self.parity_of(v)
            .ok_or_else(|| Error::Contract(format!("element {} is not parity-homogeneous", self.show(v))))
    }

    /// Matrix of `ad x`; column j is `[x, b_j]`.
    pub fn ad_matrix(&self, x: &SparseVector) -> SparseMatrix {
        let cols: Vec<SparseVector> = (0..self.dim())
            .map(|j| {
                let mut out = SparseVector::new();
                for (i, a) in x.iter() {
                    out.axpy(a, &self.table[i][j]);
                }
                out
            })
            .collect();
        SparseMatrix::from_columns(self.dim(), &cols).expect("bracket stays in range")
    }

    pub fn form_matrix_rank(&self) -> usize {
        self.form.as_ref().map_or(0, rank)
    }

    pub fn basis_element(&self, label: &str) -> Result<SparseVector> {
        self.index_of(label)
            .map(SparseVector::unit)
            .ok_or_else(|| Error::Contract(format!("unknown basis label {label} in {}", self.name)))
    }

    /// Human-readable linear combination of basis labels.
    pub fn show(&self, v: &SparseVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                let l = self.labels.get(i).map_or_else(|| format!("#{i}"), |s| s.clone());
                if c.is_one() {
                    l
                } else {
                    format!("({c})*{l}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `dim ker(ad x)`
pub fn centralizer_dim(a: &SuperAlgebra, x: &SparseVector) -> usize {
    kernel_basis(&a.ad_matrix(x)).len()
}

/// A basis of the centralizer of `x`.
pub fn centralizer_basis(a: &SuperAlgebra, x: &SparseVector) -> Vec<SparseVector> {
    kernel_basis(&a.ad_matrix(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Even.flip(), Parity::Odd);
        assert!(Parity::Odd.koszul(Parity::Odd));
        assert!(!Parity::Odd.koszul(Parity::Even));
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let (g, _) = build_gl(1, 1).unwrap();
        assert_eq!(centralizer_dim(&g, &SparseVector::new()), 4);
    }
}
