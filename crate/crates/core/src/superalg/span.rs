use super::{Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{coordinates, rank, Echelon, Scalar, SparseMatrix, SparseVector};

/// A bracket-closed subspace with its induced structure.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: SuperAlgebra,
    /// Ambient coordinates of each sub-basis element.
    pub basis: Vec<SparseVector>,
    /// Inclusion as an ambient-dim × sub-dim matrix.
    pub embedding: SparseMatrix,
}

impl Subalgebra {
    /// Pushes a sub-algebra element into the ambient algebra.
    pub fn include(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, c) in v.iter() {
            out.axpy(c, &self.basis[i]);
        }
        out
    }

    /// Coordinates of an ambient element lying in the subalgebra.
    pub fn restrict(&self, v: &SparseVector) -> Option<SparseVector> {
        coordinates(&self.basis, v)
    }
}

/// Closes the span of homogeneous generators under the bracket.
///
/// Generators come first in the resulting basis, followed by new brackets in
/// the order they were found. The restricted form is kept only when it is
/// non-degenerate.
pub fn subalgebra_from_span(a: &SuperAlgebra, gens: &[SparseVector]) -> Result<Subalgebra> {
    let mut echelon = Echelon::new();
    let mut basis: Vec<SparseVector> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut parity: Vec<Parity> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let p = a.parity_of(g).ok_or_else(|| Error::Contract(format!("generator {k} is not parity-homogeneous")))?;
        if echelon.insert(g) {
            basis.push(g.clone());
            labels.push(format!("g{k}"));
            parity.push(p);
        }
    }
    // pairs (i, j) with i <= j, revisited as the basis grows
    let mut done = 0usize;
    while done < basis.len() {
        let j = done;
        for i in 0..=j {
            let w = a.bracket(&basis[i], &basis[j]);
            if w.is_zero() || !echelon.insert(&w) {
                continue;
            }
            let label = format!("[{},{}]", labels[i], labels[j]);
            parity.push(parity[i] + parity[j]);
            labels.push(label);
            basis.push(w);
        }
        done += 1;
    }

    let n = basis.len();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = a.bracket(&basis[i], &basis[j]);
            if w.is_zero() {
                continue;
            }
            let c = coordinates(&basis, &w).ok_or_else(|| Error::Algebra("span failed to close under the bracket".into()))?;
            brackets.push((i, j, c));
        }
    }
    let form = a.form().map(|_| {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| a.form_value(&basis[i], &basis[j])).collect()).collect();
        SparseMatrix::from_dense(&rows)
    });
    let form = form.filter(|f| rank(f) == n);
    let embedding = SparseMatrix::from_columns(a.dim(), &basis)?;
    let algebra = SuperAlgebra::new(format!("span in {}", a.name()), labels, parity, brackets, form)?;
    Ok(Subalgebra { algebra, basis, embedding })
}
