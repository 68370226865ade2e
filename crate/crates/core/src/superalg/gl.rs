use super::{Parity, Root, RootDatum, SuperAlgebra};
use crate::error::{contract, Error, Result};
use crate::exactlin::{Scalar, SparseMatrix, SparseVector};

/// gl(m|n) in the standard ordering: m even indices, then n odd ones.
pub fn build_gl(m: usize, n: usize) -> Result<(SuperAlgebra, RootDatum)> {
    let mut p = vec![Parity::Even; m];
    p.extend(std::iter::repeat_n(Parity::Odd, n));
    build_gl_with_parities(&p)
}

fn unit_label(a: usize, b: usize, size: usize) -> String {
    if size <= 9 {
        format!("E_{a}{b}")
    } else {
        format!("E_{{{a},{b}}}")
    }
}

/// gl over a superspace whose basis vectors have the given parities.
///
/// The ordering fixes the Borel: positive roots come from strictly upper
/// triangular matrix units.
pub fn build_gl_with_parities(p: &[Parity]) -> Result<(SuperAlgebra, RootDatum)> {
    let size = p.len();
    if size == 0 {
        return contract("gl(0|0) is not a valid algebra");
    }
    let m = p.iter().filter(|q| !q.is_odd()).count();
    let n = size - m;
    let standard = p.windows(2).all(|w| w[0] <= w[1]);
    let name = if standard {
        format!("gl({m}|{n})")
    } else {
        let bits: String = p.iter().map(|q| char::from(b'0' + q.bit())).collect();
        format!("gl({m}|{n};{bits})")
    };
    let idx = |a: usize, b: usize| a * size + b;
    let dim = size * size;
    let mut labels = Vec::with_capacity(dim);
    let mut parity = Vec::with_capacity(dim);
    for a in 0..size {
        for b in 0..size {
            labels.push(unit_label(a + 1, b + 1, size));
            parity.push(p[a] + p[b]);
        }
    }
    // [E_ab, E_cd] = δ_bc E_ad − (−1)^{p(E_ab)p(E_cd)} δ_da E_cb
    let mut brackets = Vec::new();
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                for d in 0..size {
                    let mut v = SparseVector::new();
                    if b == c {
                        v.add_term(idx(a, d), &Scalar::one());
                    }
                    if d == a {
                        let s = Scalar::sign(!parity[idx(a, b)].koszul(parity[idx(c, d)]));
                        v.add_term(idx(c, b), &s);
                    }
                    if !v.is_zero() {
                        brackets.push((idx(a, b), idx(c, d), v));
                    }
                }
            }
        }
    }
    // supertrace form: (E_ab|E_ba) = (−1)^{p(a)}
    let mut form = SparseMatrix::zeros(dim, dim);
    for a in 0..size {
        for b in 0..size {
            form.set(idx(a, b), idx(b, a), Scalar::sign(p[a].is_odd()))?;
        }
    }
    let alg = SuperAlgebra::new(name, labels, parity.clone(), brackets, Some(form))?;

    let cartan: Vec<usize> = (0..size).map(|a| idx(a, a)).collect();
    let mut roots = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a == b {
                continue;
            }
            let values = (0..size)
                .map(|k| Scalar::from_int(i64::from(k == a) - i64::from(k == b)))
                .collect();
            roots.push(Root {
                values,
                space: vec![idx(a, b)],
                parity: parity[idx(a, b)],
                positive: a < b,
                simple: b == a + 1,
            });
        }
    }
    let rd = RootDatum::new(&alg, cartan, roots)?;
    Ok((alg, rd))
}

/// An osp(1|2) quintuple `⟨F, f, h, e, E⟩` with `[h,e] = e`, `[e,f] = h`, `E = e²`, `F = −f²`.
#[derive(Clone, Debug)]
pub struct PrincipalData {
    pub e: SparseVector,
    pub h: SparseVector,
    pub f: SparseVector,
    pub big_e: SparseVector,
    pub big_f: SparseVector,
}

/// Principal odd nilpotent `e = Σ E_{a+1,a}` of gl with alternating parities.
///
/// Requires consecutive basis vectors of opposite parity, so that every
/// subdiagonal unit is odd, and an odd number of them.
pub fn principal_odd_data(alg: &SuperAlgebra, rd: &RootDatum) -> Result<PrincipalData> {
    let size = rd.rank();
    let diag = |a: usize| rd.cartan()[a];
    let unit = |a: usize, b: usize| -> Result<usize> {
        let la = super::gl::unit_label(a + 1, b + 1, size);
        alg.index_of(&la).ok_or_else(|| Error::Contract(format!("{} has no basis element {la}", alg.name())))
    };
    if size.is_multiple_of(2) {
        return contract("principal odd data needs an odd number of basis vectors");
    }
    let mut e = SparseVector::new();
    for a in 0..size - 1 {
        let k = unit(a + 1, a)?;
        if !alg.parity(k).is_odd() {
            return contract("consecutive basis vectors must have opposite parity");
        }
        e.add_term(k, &Scalar::one());
    }
    let mid = Scalar::from_ratio(size as i64 + 1, 2);
    let hv: Vec<Scalar> = (0..size).map(|a| &Scalar::from_int(a as i64 + 1) - &mid).collect();
    let h = SparseVector::from_pairs((0..size).map(|a| (diag(a), hv[a].clone())));
    // [e, f] = h on the diagonal reads h_a = c_{a−1} + c_a
    let mut f = SparseVector::new();
    let mut prev = Scalar::zero();
    for (a, ha) in hv.iter().enumerate().take(size - 1) {
        let c = ha - &prev;
        f.add_term(unit(a, a + 1)?, &c);
        prev = c;
    }
    if prev != hv[size - 1] {
        return Err(Error::Algebra("no f completes the osp(1|2) triple".into()));
    }
    let half = Scalar::from_ratio(1, 2);
    let big_e = alg.bracket(&e, &e).scaled(&half);
    let big_f = alg.bracket(&f, &f).scaled(&-half);
    Ok(PrincipalData { e, h, f, big_e, big_f })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl11_brackets_and_form() {
        let (g, _) = build_gl(1, 1).unwrap();
        let e12 = g.index_of("E_12").unwrap();
        let e21 = g.index_of("E_21").unwrap();
        let expect = SparseVector::from_pairs([(g.index_of("E_11").unwrap(), Scalar::one()), (g.index_of("E_22").unwrap(), Scalar::one())]);
        assert_eq!(*g.bracket_basis(e12, e21), expect);
        assert_eq!(g.form_basis(e12, e21), Scalar::one());
        assert_eq!(g.form_basis(e21, e12), Scalar::from_int(-1));
    }

    #[test]
    fn principal_gl12() {
        let (g, rd) = build_gl_with_parities(&[Parity::Odd, Parity::Even, Parity::Odd]).unwrap();
        let pd = principal_odd_data(&g, &rd).unwrap();
        let u = |l: &str| g.basis_element(l).unwrap();
        assert_eq!(pd.f, u("E_23").sub(&u("E_12")));
        assert_eq!(pd.big_e, u("E_31"));
        assert_eq!(pd.big_f, u("E_13"));
        assert_eq!(g.bracket(&pd.e, &pd.f), pd.h);
        assert_eq!(g.bracket(&pd.h, &pd.e), pd.e);
    }

    #[test]
    fn even_size_rejected() {
        let (g, rd) = build_gl_with_parities(&[Parity::Even, Parity::Odd]).unwrap();
        assert!(principal_odd_data(&g, &rd).is_err());
        assert!(build_gl(0, 0).is_err());
    }
}
