use std::collections::BTreeMap;

use super::NilCharacter;
use crate::exactlin::{kernel_basis, Echelon, Scalar, SparseMatrix, SparseVector};
use crate::fockrep::{ModVec, SuperModule};
use crate::superalg::SuperAlgebra;

/// Truncated solution space of `(x − φ(x))v = 0`.
#[derive(Clone, Debug)]
pub struct WhittakerSpace<I: Ord> {
    pub vectors: Vec<ModVec<I>>,
    pub truncation: usize,
    /// Dimension one truncation lower, when `truncation > 0`.
    pub previous_dim: Option<usize>,
    /// Dimensions at `truncation − 1` and `truncation` agree.
    pub stable: bool,
    /// The returned vectors satisfy the equations for every basis element of the domain.
    pub full_check: bool,
}

impl<I: Ord> WhittakerSpace<I> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Basis elements of the domain that generate it as a Lie superalgebra.
///
/// Elements outside the derived subalgebra come first; any element not yet
/// reached by brackets of the chosen ones is added.
pub fn generating_subset(alg: &SuperAlgebra, domain: &[usize]) -> Vec<usize> {
    let mut derived = Echelon::new();
    for &a in domain {
        for &b in domain {
            derived.insert(alg.bracket_basis(a, b));
        }
    }
    let mut order: Vec<usize> = domain.iter().copied().filter(|&k| !derived.contains(&SparseVector::unit(k))).collect();
    order.extend(domain.iter().copied().filter(|&k| derived.contains(&SparseVector::unit(k))));

    let mut chosen = Vec::new();
    let mut span = Echelon::new();
    let mut elems: Vec<SparseVector> = Vec::new();
    for k in order {
        let u = SparseVector::unit(k);
        if span.contains(&u) {
            continue;
        }
        chosen.push(k);
        // close the span under brackets
        let mut queue = vec![u];
        while let Some(x) = queue.pop() {
            if !span.insert(&x) {
                continue;
            }
            for y in elems.clone() {
                let b = alg.bracket(&x, &y);
                if !b.is_zero() {
                    queue.push(b);
                }
            }
            let b = alg.bracket(&x, &x);
            if !b.is_zero() {
                queue.push(b);
            }
            elems.push(x);
        }
    }
    chosen
}

fn solve_at<M: SuperModule>(m: &M, phi: &NilCharacter, gens: &[usize], trunc: usize) -> Vec<ModVec<M::Index>> {
    let cols = m.basis_up_to(trunc);
    let mut row_of: BTreeMap<(usize, M::Index), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (j, b) in cols.iter().enumerate() {
        let v = ModVec::basis(b.clone());
        for (gi, &x) in gens.iter().enumerate() {
            let mut w = m.act(x, &v);
            w.axpy(&-phi.value_basis(x), &v);
            for (i, c) in w.iter() {
                let n = row_of.len();
                let r = *row_of.entry((gi, i.clone())).or_insert(n);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let mut mat = SparseMatrix::zeros(row_of.len(), cols.len());
    for (r, j, c) in entries {
        mat.add_entry(r, j, &c).expect("in range");
    }
    kernel_basis(&mat)
        .into_iter()
        .map(|k| {
            let mut v = ModVec::new();
            for (j, c) in k.iter() {
                v.add_term(cols[j].clone(), c);
            }
            v
        })
        .collect()
}

/// Basis of `{v : deg v ≤ trunc, xv = φ(x)v for x in the domain of φ}`.
pub fn whittaker_vectors<M: SuperModule>(m: &M, phi: &NilCharacter, trunc: usize) -> WhittakerSpace<M::Index> {
    let domain: Vec<usize> = phi.domain().iter().copied().collect();
    let gens = generating_subset(m.algebra(), &domain);
    let vectors = solve_at(m, phi, &gens, trunc);
    let previous_dim = (trunc > 0).then(|| solve_at(m, phi, &gens, trunc - 1).len());
    let full_check = vectors.iter().all(|v| {
        domain.iter().all(|&x| {
            let mut w = m.act(x, v);
            w.axpy(&-phi.value_basis(x), v);
            w.is_zero()
        })
    });
    WhittakerSpace { stable: previous_dim == Some(vectors.len()), vectors, truncation: trunc, previous_dim, full_check }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockrep::build_fock;
    use crate::superalg::build_gl;
    use crate::takiff::build_takiff;

    #[test]
    fn untwisted_vacuum_line() {
        let (s, rd) = build_gl(2, 1).unwrap();
        let (t, hat) = build_takiff(&s, &rd).unwrap();
        let f = build_fock(&t, &rd, Scalar::one(), None).unwrap();
        let phi = NilCharacter::zero(t.total(), hat.n_hat.iter().copied()).unwrap();
        let gens = generating_subset(t.total(), &hat.n_hat);
        assert!(gens.len() < hat.n_hat.len());
        let ws = whittaker_vectors(&f, &phi, 2);
        assert!(ws.full_check);
        let mut e = Echelon::new();
        for v in &ws.vectors {
            e.insert(&SparseVector::from_pairs(f.basis_up_to(2).iter().enumerate().map(|(j, b)| (j, v.get(b)))));
        }
        let vac = SparseVector::from_pairs(f.basis_up_to(2).iter().enumerate().map(|(j, b)| (j, f.vacuum_vec().get(b))));
        assert!(e.contains(&vac));
    }
}
