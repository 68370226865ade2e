use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fock::{FockBasisIndex, FockModule};
use super::module::{ModVec, SuperModule};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Scalar, SparseMatrix, SparseVector};
use crate::report::Report;
use crate::superalg::{Parity, SuperAlgebra};

/// A finite-dimensional `𝔰`-module given by one action matrix per basis element.
#[derive(Clone, Debug)]
pub struct FinDimModule {
    pub parities: Vec<Parity>,
    /// `matrices[i]` acts by `b_i`; column j is `b_i · v_j`.
    pub matrices: Vec<SparseMatrix>,
}

impl FinDimModule {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// The one-dimensional even trivial module.
    pub fn trivial(s: &SuperAlgebra) -> Self {
        FinDimModule { parities: vec![Parity::Even], matrices: vec![SparseMatrix::zeros(1, 1); s.dim()] }
    }

    /// Natural representation of gl on the superspace with the given parities.
    pub fn natural_gl(s: &SuperAlgebra, parities: &[Parity]) -> Result<Self> {
        let n = parities.len();
        if s.dim() != n * n {
            return Err(Error::Contract(format!("{} is not gl of a {n}-dimensional superspace", s.name())));
        }
        let matrices = (0..n * n)
            .map(|k| {
                let mut m = SparseMatrix::zeros(n, n);
                m.set(k / n, k % n, Scalar::one()).expect("in range");
                m
            })
            .collect();
        Ok(FinDimModule { parities: parities.to_vec(), matrices })
    }

    fn act(&self, i: usize, j: usize) -> SparseVector {
        let m = &self.matrices[i];
        SparseVector::from_pairs((0..m.rows()).map(|r| (r, m.get(r, j))))
    }

    /// Verifies parity and `[ρ(x), ρ(y)] = ρ([x,y])` on all basis pairs.
    pub fn check(&self, s: &SuperAlgebra) -> Result<()> {
        let n = self.dim();
        if self.matrices.len() != s.dim() || self.matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Contract("action matrices have the wrong shape".into()));
        }
        for (i, m) in self.matrices.iter().enumerate() {
            for (r, c, _) in m.entries() {
                if self.parities[r] != self.parities[c] + s.parity(i) {
                    return Err(Error::Algebra(format!("{} does not act with its parity", s.label(i))));
                }
            }
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let xy = self.matrices[i].mul(&self.matrices[j])?;
                let yx = self.matrices[j].mul(&self.matrices[i])?;
                let mut br = SparseMatrix::zeros(n, n);
                for (k, c) in s.bracket_basis(i, j).iter() {
                    for (r, q, v) in self.matrices[k].entries() {
                        br.add_entry(r, q, &(c * v))?;
                    }
                }
                let sign = Scalar::sign(s.parity(i).koszul(s.parity(j)));
                for r in 0..n {
                    for q in 0..n {
                        let lhs = &xy.get(r, q) - &(&sign * &yx.get(r, q));
                        if lhs != br.get(r, q) {
                            return Err(Error::Algebra(format!(
                                "bracket relation fails for ({}, {})",
                                s.label(i),
                                s.label(j)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `L ⊗ 𝔉`, with `𝔠` acting on the Fock factor only.
#[derive(Clone, Debug)]
pub struct TensorModule {
    l: FinDimModule,
    fock: FockModule,
}

/// Builds `L ⊗ 𝔉` after checking that `L` is an `𝔰`-module.
pub fn tensor_with_findim(l: FinDimModule, f: FockModule) -> Result<TensorModule> {
    l.check(f.takiff().base())?;
    Ok(TensorModule { l, fock: f })
}

impl TensorModule {
    pub fn fock(&self) -> &FockModule {
        &self.fock
    }

    pub fn findim(&self) -> &FinDimModule {
        &self.l
    }
}

impl SuperModule for TensorModule {
    type Index = (usize, FockBasisIndex);

    fn algebra(&self) -> &SuperAlgebra {
        self.fock.algebra()
    }

    fn act_basis(&self, k: usize, v: &Self::Index) -> ModVec<Self::Index> {
        let t = self.fock.takiff();
        let g = t.total();
        let (lv, fv) = v;
        let mut out = ModVec::new();
        let sign = Scalar::sign(g.parity(k).koszul(self.l.parities[*lv]));
        for (w, c) in self.fock.act_basis(k, fv).iter() {
            out.add_term((*lv, w.clone()), &(c * &sign));
        }
        if k < t.base_dim() {
            for (r, c) in self.l.act(k, *lv).iter() {
                out.add_term((r, fv.clone()), c);
            }
        }
        out
    }

    fn degree(&self, v: &Self::Index) -> usize {
        v.1.degree()
    }

    fn parity(&self, v: &Self::Index) -> Parity {
        self.l.parities[v.0] + v.1.parity()
    }

    fn basis_up_to(&self, deg: usize) -> Vec<Self::Index> {
        let fb = self.fock.basis_up_to(deg);
        let mut out = Vec::with_capacity(fb.len() * self.l.dim());
        for w in &fb {
            for i in 0..self.l.dim() {
                out.push((i, w.clone()));
            }
        }
        out
    }
}

/// Randomized cyclicity spot-check.
///
/// Each sampled non-zero vector of degree at most `sample_degree` is hit by
/// words of at most `word_len` basis elements of `𝔤`, keeping only images that
/// do not raise the top degree; the resulting span must contain a non-zero
/// vector of degree 0.
pub fn cyclicity_spot_check<M: SuperModule>(m: &M, samples: usize, sample_degree: usize, word_len: usize, seed: u64) -> Report {
    let mut report = Report::new("cyclicity").with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = m.basis_up_to(sample_degree);
    // degree-0 indices get the largest column numbers
    let mut order = basis.clone();
    order.sort_by(|a, b| m.degree(b).cmp(&m.degree(a)).then_with(|| a.cmp(b)));
    let first_zero = order.iter().position(|i| m.degree(i) == 0).unwrap_or(order.len());
    let column: BTreeMap<M::Index, usize> = order.into_iter().enumerate().map(|(j, i)| (i, j)).collect();
    let top = |w: &ModVec<M::Index>| w.iter().map(|(i, _)| m.degree(i)).max().unwrap_or(0);
    let as_sparse = |w: &ModVec<M::Index>| SparseVector::from_pairs(w.iter().map(|(i, c)| (column[i], c.clone())));
    let dim = m.algebra().dim();
    let mut failures = 0;
    let mut witness = None;
    for s in 0..samples {
        let mut v = ModVec::new();
        while v.is_zero() {
            for b in &basis {
                if rng.gen_bool(0.3) {
                    v.add_term(b.clone(), &Scalar::from_int(rng.gen_range(-3..=3)));
                }
            }
        }
        let mut ech = Echelon::new();
        ech.insert(&as_sparse(&v));
        let mut layer = vec![v];
        for _ in 0..word_len {
            let mut next = Vec::new();
            for w in &layer {
                let d = top(w);
                for k in 0..dim {
                    let u = m.act(k, w);
                    // images spanned by earlier ones add nothing new
                    if !u.is_zero() && top(&u) <= d && ech.insert(&as_sparse(&u)) {
                        next.push(u);
                    }
                }
            }
            layer = next;
        }
        if !ech.pivots().any(|p| p >= first_zero) {
            failures += 1;
            witness.get_or_insert_with(|| format!("sample {s}"));
        }
    }
    report.tally("reaches degree 0", samples, failures, witness);
    report
}
