use std::collections::BTreeMap;

use super::scalar::Scalar;
use super::sparse::{SparseMatrix, SparseVector};
use crate::error::{Error, Result};

/// Incremental row echelon form.
///
/// Every stored row is monic at its pivot and has no entries left of it.
/// New vectors are reduced against all stored pivots in increasing order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVector>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        let mut from = 0usize;
        loop {
            let next = v
                .indices()
                .filter(|&i| i >= from)
                .find(|i| self.rows.contains_key(i));
            let Some(p) = next else { break };
            let c = v.get(p);
            v.axpy(&-c, &self.rows[&p]);
            from = p + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the row space. Returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else { return false };
        let inv = lead.inv().expect("nonzero leading entry");
        let r = r.scaled(&inv);
        self.rows.insert(p, r);
        true
    }

    /// Fully reduced rows: each pivot column is zero in every other row.
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVector> {
        let mut out: BTreeMap<usize, SparseVector> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            // later pivots are already fully reduced
            let hits: Vec<usize> = r.indices().filter(|&i| i != p && out.contains_key(&i)).collect();
            for q in hits {
                let c = r.get(q);
                r.axpy(&-c, &out[&q]);
            }
            out.insert(p, r);
        }
        out
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Echelon::new();
    for r in m.row_vectors() {
        e.insert(r);
    }
    e.rank()
}

/// Basis of the right null space `{v : m·v = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVector> {
    let mut e = Echelon::new();
    for r in m.row_vectors() {
        e.insert(r);
    }
    kernel_from_echelon(&e, m.cols())
}

pub(crate) fn kernel_from_echelon(e: &Echelon, cols: usize) -> Vec<SparseVector> {
    let rref = e.reduced_rows();
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !rref.contains_key(c)) {
        let mut v = SparseVector::unit(f);
        for (&p, row) in &rref {
            if let Some(c) = row.get_ref(f) {
                v.add_term(p, &-c);
            }
        }
        out.push(v);
    }
    out
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &SparseVector) -> Result<Option<SparseVector>> {
    if let Some(k) = b.max_index() {
        if k >= m.rows() {
            return Err(Error::Contract(format!("right-hand side index {k} exceeds {} rows", m.rows())));
        }
    }
    let aug = m.cols();
    let mut e = Echelon::new();
    for (i, r) in m.row_vectors().iter().enumerate() {
        let mut row = r.clone();
        row.add_term(aug, &b.get(i));
        e.insert(&row);
    }
    if e.pivots().any(|p| p == aug) {
        return Ok(None);
    }
    let mut x = SparseVector::new();
    for (p, row) in e.reduced_rows() {
        x.add_term(p, &row.get(aug));
    }
    Ok(Some(x))
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates(basis: &[SparseVector], v: &SparseVector) -> Option<SparseVector> {
    let rows = basis
        .iter()
        .chain(std::iter::once(v))
        .filter_map(|b| b.max_index())
        .max()
        .map_or(0, |k| k + 1);
    let m = SparseMatrix::from_columns(rows, basis).ok()?;
    solve(&m, v).ok().flatten()
}

/// Determinant of a square matrix by exact elimination.
pub fn determinant(m: &SparseMatrix) -> Result<Scalar> {
    if m.rows() != m.cols() {
        return Err(Error::Contract("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Scalar>> = m.row_vectors().iter().map(|r| r.to_dense(n)).collect();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let inv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for k in col..n {
                let t = &f * &a[col][k];
                a[r][k] -= &t;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());
    }

    #[test]
    fn row_of_ones() {
        let m = SparseMatrix::from_dense(&[vec![s(1), s(1)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].get(0), -k[0].get(1));
        assert!(m.mul_vec(&k[0]).unwrap().is_zero());
    }

    #[test]
    fn solve_identity_and_zero() {
        let b = SparseVector::from_dense(&[s(3), Scalar::i()]);
        assert_eq!(solve(&SparseMatrix::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&SparseMatrix::zeros(2, 2), &b).unwrap(), None);
        assert!(solve(&SparseMatrix::identity(1), &b).is_err());
    }

    #[test]
    fn determinant_small() {
        let m = SparseMatrix::from_dense(&[vec![s(2), s(1)], vec![s(1), s(1)]]);
        assert_eq!(determinant(&m).unwrap(), s(1));
        let sing = SparseMatrix::from_dense(&[vec![s(2), s(4)], vec![s(1), s(2)]]);
        assert_eq!(determinant(&sing).unwrap(), s(0));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&SparseVector::from_dense(&[s(1), s(2), s(0)])));
        assert!(e.insert(&SparseVector::from_dense(&[s(0), s(1), s(1)])));
        assert!(!e.insert(&SparseVector::from_dense(&[s(1), s(3), s(1)])));
        assert!(e.contains(&SparseVector::from_dense(&[s(2), s(5), s(1)])));
        assert!(!e.contains(&SparseVector::unit(2)) || e.rank() == 3);
        let c = coordinates(
            &[SparseVector::from_dense(&[s(1), s(1)]), SparseVector::from_dense(&[s(1), s(-1)])],
            &SparseVector::from_dense(&[s(3), s(1)]),
        )
        .unwrap();
        assert_eq!(c, SparseVector::from_dense(&[s(2), s(1)]));
    }
}
