use std::collections::HashMap;
use std::sync::Mutex;

use super::{GradedNilradical, NilCharacter};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVector};
use crate::fockrep::{ModVec, SuperModule};
use crate::superalg::{Parity, SuperAlgebra};

/// Exponents of an ordered PBW monomial in the basis of `𝔭 = ⊕_{i≥0} 𝔤(i)`.
pub type PbwMonomial = Vec<u32>;

/// The generalized Gelfand–Graev module `Q_φ = U(𝔤) ⊗_{U(𝔪)} ℂ_φ`,
/// optionally with `z` acting by a fixed level.
///
/// Realized on ordered PBW monomials in `𝔭`; elements of `𝔪` are moved to
/// the right, where they act by `φ`.
pub struct GelfandGraev {
    algebra: SuperAlgebra,
    phi: NilCharacter,
    /// Basis indices of `𝔭`, in PBW order.
    p_basis: Vec<usize>,
    position: Vec<Option<usize>>,
    central: Option<(usize, Scalar)>,
    cache: Mutex<HashMap<(usize, PbwMonomial), ModVec<PbwMonomial>>>,
}

impl std::fmt::Debug for GelfandGraev {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GelfandGraev").field("algebra", &self.algebra.name()).field("p_basis", &self.p_basis).finish()
    }
}

impl GelfandGraev {
    /// `level` is `(index of z, c)` to pass to the quotient by `z − c`.
    pub fn new(alg: &SuperAlgebra, g: &GradedNilradical, phi: &NilCharacter, level: Option<(usize, Scalar)>) -> Result<Self> {
        if phi.domain().iter().copied().ne(g.m_indices.iter().copied()) {
            return Err(Error::Contract("phi must be defined on m".into()));
        }
        if let Some((z, _)) = &level {
            if (0..alg.dim()).any(|k| !alg.bracket_basis(*z, k).is_zero()) || g.contains(*z) {
                return Err(Error::Contract(format!("{} is not central of degree >= 0", alg.label(*z))));
            }
        }
        let p_basis: Vec<usize> =
            (0..alg.dim()).filter(|&k| !g.contains(k) && level.as_ref().is_none_or(|(z, _)| *z != k)).collect();
        let mut position = vec![None; alg.dim()];
        for (q, &k) in p_basis.iter().enumerate() {
            position[k] = Some(q);
        }
        Ok(GelfandGraev {
            algebra: alg.clone(),
            phi: phi.clone(),
            p_basis,
            position,
            central: level,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn vacuum(&self) -> PbwMonomial {
        vec![0; self.p_basis.len()]
    }

    /// `1 ⊗ 1`, a Whittaker vector by construction.
    pub fn vacuum_vec(&self) -> ModVec<PbwMonomial> {
        ModVec::basis(self.vacuum())
    }

    pub fn p_basis(&self) -> &[usize] {
        &self.p_basis
    }

    pub fn show(&self, m: &PbwMonomial) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(q, &e)| {
                let l = self.algebra.label(self.p_basis[q]);
                if e == 1 { l.to_string() } else { format!("{l}^{e}") }
            })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join(" ") }
    }

    fn left_mul_vec(&self, x: &SparseVector, m: &PbwMonomial) -> ModVec<PbwMonomial> {
        let mut out = ModVec::new();
        for (k, c) in x.iter() {
            out.axpy(c, &self.left_mul(k, m));
        }
        out
    }

    fn left_mul_onto(&self, k: usize, v: &ModVec<PbwMonomial>) -> ModVec<PbwMonomial> {
        let mut out = ModVec::new();
        for (m, c) in v.iter() {
            out.axpy(c, &self.left_mul(k, m));
        }
        out
    }

    fn mono_parity(&self, m: &PbwMonomial) -> Parity {
        let odd = m.iter().enumerate().filter(|(q, &e)| e % 2 == 1 && self.algebra.parity(self.p_basis[*q]).is_odd()).count();
        Parity::from_bit((odd % 2) as u8)
    }

    /// `b_k · m` in normal form.
    fn left_mul(&self, k: usize, m: &PbwMonomial) -> ModVec<PbwMonomial> {
        if let Some((z, c)) = &self.central {
            if k == *z {
                return ModVec::single(m.clone(), c.clone());
            }
        }
        let key = (k, m.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = self.left_mul_uncached(k, m);
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        v
    }

    fn left_mul_uncached(&self, k: usize, m: &PbwMonomial) -> ModVec<PbwMonomial> {
        let alg = &self.algebra;
        let first = m.iter().position(|&e| e > 0);
        let pos = self.position[k];
        let Some(f) = first else {
            return match pos {
                Some(q) => {
                    let mut n = m.clone();
                    n[q] = 1;
                    ModVec::basis(n)
                }
                None => {
                    let v = self.phi.value_basis(k);
                    if v.is_zero() { ModVec::new() } else { ModVec::single(m.clone(), v) }
                }
            };
        };
        if let Some(q) = pos {
            if q < f {
                let mut n = m.clone();
                n[q] = 1;
                return ModVec::basis(n);
            }
            if q == f {
                if !alg.parity(k).is_odd() {
                    let mut n = m.clone();
                    n[q] += 1;
                    return ModVec::basis(n);
                }
                // k·k = ½[k,k] for odd k
                let mut rest = m.clone();
                rest[q] -= 1;
                let half = alg.bracket_basis(k, k).scaled(&Scalar::from_ratio(1, 2));
                return self.left_mul_vec(&half, &rest);
            }
        }
        // k · p·rest = ± p·(k·rest) + [k,p]·rest
        let p = self.p_basis[f];
        let mut rest = m.clone();
        rest[f] -= 1;
        let sign = Scalar::sign(alg.parity(k).koszul(alg.parity(p)));
        let mut out = self.left_mul_onto(p, &self.left_mul(k, &rest)).scaled(&sign);
        out.axpy(&Scalar::one(), &self.left_mul_vec(alg.bracket_basis(k, p), &rest));
        out
    }
}

impl SuperModule for GelfandGraev {
    type Index = PbwMonomial;

    fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    fn act_basis(&self, k: usize, v: &PbwMonomial) -> ModVec<PbwMonomial> {
        self.left_mul(k, v)
    }

    /// PBW length.
    fn degree(&self, v: &PbwMonomial) -> usize {
        v.iter().map(|&e| e as usize).sum()
    }

    fn parity(&self, v: &PbwMonomial) -> Parity {
        self.mono_parity(v)
    }

    fn basis_up_to(&self, deg: usize) -> Vec<PbwMonomial> {
        let mut out: Vec<PbwMonomial> = vec![vec![]];
        for &k in &self.p_basis {
            let cap = if self.algebra.parity(k).is_odd() { 1 } else { deg as u32 };
            let mut next = Vec::new();
            for m in &out {
                let used: u32 = m.iter().sum();
                for e in 0..=cap.min(deg as u32 - used) {
                    let mut n = m.clone();
                    n.push(e);
                    next.push(n);
                }
            }
            out = next;
        }
        out.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then_with(|| a.cmp(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockrep::verify_relations;
    use crate::report::Report;
    use crate::superalg::{build_gl_with_parities, principal_odd_data};
    use crate::takiff::build_takiff;
    use crate::wfinite::{graded_nilradical, nilchar_from_e};

    #[test]
    fn gl12_module_relations() {
        let (s, rd) = build_gl_with_parities(&[Parity::Odd, Parity::Even, Parity::Odd]).unwrap();
        let pd = principal_odd_data(&s, &rd).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        let g = graded_nilradical(&t, &pd.h).unwrap();
        let chi = nilchar_from_e(&t, &g, &pd.e).unwrap();
        let q = GelfandGraev::new(t.total(), &g, &chi, Some((t.z(), Scalar::one()))).unwrap();
        // the vacuum is a Whittaker vector
        for &k in &g.m_indices {
            let got = q.act(k, &q.vacuum_vec());
            assert_eq!(got, q.vacuum_vec().scaled(&chi.value_basis(k)));
        }
        let n = t.total().dim();
        let pairs: Vec<_> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (SparseVector::unit(a), SparseVector::unit(b))))
            .collect();
        let mut r = Report::new("gg");
        verify_relations(&q, &pairs, 1, "brackets", &mut r);
        assert!(r.pass, "{}", r.to_json());
    }
}
