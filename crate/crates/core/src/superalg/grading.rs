use num_traits::{Signed, ToPrimitive};

use super::SuperAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Scalar, SparseVector};

/// Eigen-decomposition of `ad h` with integer eigenvalues.
#[derive(Clone, Debug)]
pub struct Grading {
    pub h: SparseVector,
    pub eigenvectors: Vec<SparseVector>,
    pub degrees: Vec<i64>,
    /// Degree of each basis element, when `ad h` is diagonal in the given basis.
    pub basis_degrees: Option<Vec<i64>>,
}

impl Grading {
    pub fn degree_of_basis(&self, i: usize) -> Option<i64> {
        self.basis_degrees.as_ref().map(|d| d[i])
    }

    /// Eigenvectors of the given degree.
    pub fn component(&self, d: i64) -> Vec<&SparseVector> {
        self.eigenvectors.iter().zip(&self.degrees).filter(|(_, &k)| k == d).map(|(v, _)| v).collect()
    }
}

fn integer_eigenvalue(c: &Scalar) -> Result<i64> {
    c.to_i64()
        .ok_or_else(|| Error::Algebra(format!("ad h has eigenvalue {c}, which is not an integer")))
}

/// Grades the algebra by the eigenvalues of `ad h`.
pub fn grading_by_adh(a: &SuperAlgebra, h: &SparseVector) -> Result<Grading> {
    let n = a.dim();
    let ad = a.ad_matrix(h);

    let diagonal = (0..n).all(|j| ad.row_vectors().iter().enumerate().all(|(i, r)| i == j || r.get_ref(j).is_none()));
    if diagonal {
        let degrees = (0..n).map(|i| integer_eigenvalue(&ad.get(i, i))).collect::<Result<Vec<_>>>()?;
        return Ok(Grading {
            h: h.clone(),
            eigenvectors: (0..n).map(SparseVector::unit).collect(),
            degrees: degrees.clone(),
            basis_degrees: Some(degrees),
        });
    }

    // Gershgorin bound on the spectrum
    let bound = ad
        .row_vectors()
        .iter()
        .map(|r| {
            r.iter()
                .map(|(_, c)| (c.re().abs() + c.im().abs()).ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4))
                .sum::<i64>()
        })
        .max()
        .unwrap_or(0);
    let mut eigenvectors = Vec::new();
    let mut degrees = Vec::new();
    for d in -bound..=bound {
        let mut shifted = ad.clone();
        for i in 0..n {
            shifted.add_entry(i, i, &Scalar::from_int(-d))?;
        }
        for v in kernel_basis(&shifted) {
            eigenvectors.push(v);
            degrees.push(d);
        }
    }
    if eigenvectors.len() != n {
        return Err(Error::Algebra(format!(
            "ad h is not diagonalizable with integer eigenvalues: integer eigenspaces span {} of {n} dimensions",
            eigenvectors.len()
        )));
    }
    Ok(Grading { h: h.clone(), eigenvectors, degrees, basis_degrees: None })
}

#[cfg(test)]
mod tests {
    use super::super::{build_gl_with_parities, principal_odd_data, subalgebra_from_span, verify_grading, Parity};
    use super::*;

    #[test]
    fn zero_h_gives_degree_zero() {
        let (g, _) = super::super::build_gl(1, 1).unwrap();
        let gr = grading_by_adh(&g, &SparseVector::new()).unwrap();
        assert!(gr.degrees.iter().all(|&d| d == 0));
    }

    #[test]
    fn gl12_principal_degrees() {
        let (g, rd) = build_gl_with_parities(&[Parity::Odd, Parity::Even, Parity::Odd]).unwrap();
        let pd = principal_odd_data(&g, &rd).unwrap();
        let gr = grading_by_adh(&g, &pd.h).unwrap();
        assert!(gr.degrees.iter().all(|d| (-2..=2).contains(d)));
        assert_eq!(gr.degree_of_basis(g.index_of("E_13").unwrap()), Some(-2));
        assert!(verify_grading(&g, &gr).pass);
    }

    #[test]
    fn osp12_degrees() {
        let (g, rd) = build_gl_with_parities(&[Parity::Odd, Parity::Even, Parity::Odd]).unwrap();
        let pd = principal_odd_data(&g, &rd).unwrap();
        let sub = subalgebra_from_span(&g, &[pd.big_f.clone(), pd.f.clone(), pd.h.clone(), pd.e.clone(), pd.big_e.clone()]).unwrap();
        assert_eq!(sub.algebra.dim(), 5);
        let gr = grading_by_adh(&sub.algebra, &SparseVector::unit(2)).unwrap();
        assert_eq!(gr.basis_degrees, Some(vec![-2, -1, 0, 1, 2]));
    }

    #[test]
    fn half_integer_rejected() {
        let (g, _) = super::super::build_gl(2, 0).unwrap();
        let h = SparseVector::single(0, Scalar::from_ratio(1, 2));
        let err = grading_by_adh(&g, &h).unwrap_err().to_string();
        assert!(err.contains("1/2"), "{err}");
    }
}
