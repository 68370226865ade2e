use std::collections::BTreeMap;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse vector over ℚ(i). Zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVector {
    pub fn new() -> Self {
        SparseVector { entries: BTreeMap::new() }
    }

    pub fn unit(i: usize) -> Self {
        Self::single(i, Scalar::one())
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        let mut v = SparseVector::new();
        v.add_term(i, &c);
        v
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let mut v = SparseVector::new();
        for (i, c) in values.iter().enumerate() {
            v.add_term(i, c);
        }
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v = SparseVector::new();
        for (i, c) in pairs {
            v.add_term(i, &c);
        }
        v
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get_ref(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c·other`
    pub fn axpy(&mut self, c: &Scalar, other: &SparseVector) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, &(c * x));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::new();
        }
        SparseVector { entries: self.entries.iter().map(|(&i, x)| (i, x * c)).collect() }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut v = self.clone();
        v.axpy(&Scalar::one(), other);
        v
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut v = self.clone();
        v.axpy(&Scalar::from_int(-1), other);
        v
    }

    pub fn dot(&self, other: &SparseVector) -> Scalar {
        let (small, large) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = Scalar::zero();
        for (i, x) in small.iter() {
            if let Some(y) = large.get_ref(i) {
                acc += &(x * y);
            }
        }
        acc
    }

    /// Relabel indices through `f`; collisions are summed.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVector {
        let mut v = SparseVector::new();
        for (i, c) in self.iter() {
            v.add_term(f(i), c);
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in self.iter() {
            if i < len {
                out[i] = c.clone();
            }
        }
        out
    }
}

impl std::fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

/// Row-major sparse matrix with declared shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVector::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = SparseVector::unit(i);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Result<Self> {
        for r in &rows {
            if let Some(k) = r.max_index() {
                if k >= cols {
                    return Err(Error::Contract(format!("column index {k} out of bounds {cols}")));
                }
            }
        }
        Ok(SparseMatrix { rows: rows.len(), cols, data: rows })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[SparseVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(i, j, c.clone())?;
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMatrix { rows: rows.len(), cols, data: rows.iter().map(|r| SparseVector::from_dense(r)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::Contract(format!("entry ({i},{j}) out of bounds {}x{}", self.rows, self.cols)));
        }
        let cur = self.data[i].get(j);
        self.data[i].add_term(j, &(c - cur));
        Ok(())
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: &Scalar) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::Contract(format!("entry ({i},{j}) out of bounds {}x{}", self.rows, self.cols)));
        }
        self.data[i].add_term(j, c);
        Ok(())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, c)| (i, j, c)))
    }

    pub fn mul_vec(&self, v: &SparseVector) -> Result<SparseVector> {
        if let Some(k) = v.max_index() {
            if k >= self.cols {
                return Err(Error::Contract(format!("vector index {k} exceeds {} columns", self.cols)));
            }
        }
        let mut out = SparseVector::new();
        for (i, r) in self.data.iter().enumerate() {
            out.add_term(i, &r.dot(v));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (i, j, c) in self.entries() {
            t.data[j].add_term(i, c);
        }
        t
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Contract(format!("shape mismatch {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVector::new();
            for (k, c) in r.iter() {
                acc.axpy(c, &other.data[k]);
            }
            out.data[i] = acc;
        }
        Ok(out)
    }
}
