use std::collections::BTreeMap;

use super::NilCharacter;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::report::{Report, Tally};
use crate::superalg::{Root, RootDatum};
use crate::takiff::TakiffAlgebra;

/// Ways of writing an even positive root as a sum of two odd simple roots.
#[derive(Clone, Debug)]
pub struct OddSplitting {
    /// Root-datum ids of `α`, `α₁`, `α₂` with `α = α₁ + α₂`.
    pub root: usize,
    pub first: usize,
    pub second: usize,
}

fn sum(a: &Root, b: &Root) -> Vec<Scalar> {
    a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect()
}

/// For each even positive root, the first splitting into odd simple roots (if any).
pub fn odd_splittings(rd: &RootDatum) -> Vec<OddSplitting> {
    let roots = rd.roots();
    let odd_simple: Vec<usize> = (0..roots.len()).filter(|&k| roots[k].simple && roots[k].parity.is_odd()).collect();
    let mut out = Vec::new();
    for (k, r) in roots.iter().enumerate() {
        if !r.positive || r.parity.is_odd() {
            continue;
        }
        let found = odd_simple
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| odd_simple[i..].iter().map(move |&b| (a, b)))
            .find(|&(a, b)| sum(&roots[a], &roots[b]) == r.values);
        if let Some((a, b)) = found {
            out.push(OddSplitting { root: k, first: a, second: b });
        }
    }
    out
}

/// `((α₁|α₂)/c)·κ⁻¹` where `[E_α₁, E_α₂] = κ·X` for the basis root vector `X` of `α`.
fn correction_factor(t: &TakiffAlgebra, rd: &RootDatum, sp: &OddSplitting, c: &Scalar) -> Result<Scalar> {
    let roots = rd.roots();
    let (x, x1, x2) = (roots[sp.root].vector(), roots[sp.first].vector(), roots[sp.second].vector());
    let kappa = t.base().bracket_basis(x1, x2).get(x);
    let kinv = kappa.inv().ok_or_else(|| {
        Error::Algebra(format!("[{}, {}] has no {} component", t.base().label(x1), t.base().label(x2), t.base().label(x)))
    })?;
    let pair = rd.pair(&roots[sp.first].values, &roots[sp.second].values)?;
    let cinv = c.inv().ok_or_else(|| Error::Contract("the level c must be non-zero".into()))?;
    Ok(&(&pair * &cinv) * &kinv)
}

fn even_positive(t: &TakiffAlgebra, rd: &RootDatum) -> Vec<usize> {
    rd.positive_roots().filter(|r| !r.parity.is_odd()).map(|r| t.plain(r.vector())).collect()
}

fn odd_positive_bar(t: &TakiffAlgebra, rd: &RootDatum) -> Vec<usize> {
    rd.positive_roots().filter(|r| r.parity.is_odd()).map(|r| t.bar(r.vector())).collect()
}

/// Extends `η` on `𝔫̄_0̄` to `η̂` on `𝔫̂_0̄ = 𝔫_0̄ ⊕ 𝔫̄_0̄`:
/// `η̂([E_α₁,E_α₂]) = ((α₁|α₂)/c) η(Ē_α₁) η(Ē_α₂)` for odd simple `α₁, α₂`, zero on other even root vectors.
pub fn hat_eta(t: &TakiffAlgebra, rd: &RootDatum, eta: &NilCharacter, c: &Scalar) -> Result<NilCharacter> {
    let bad: Vec<&str> = rd
        .positive_roots()
        .filter(|r| r.parity.is_odd() && !r.simple && !eta.value_basis(t.bar(r.vector())).is_zero())
        .map(|r| t.total().label(t.bar(r.vector())))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Contract(format!("eta is non-zero on non-simple odd roots: {}", bad.join(", "))));
    }
    let mut values: BTreeMap<usize, Scalar> = eta.values().clone();
    let roots = rd.roots();
    for sp in odd_splittings(rd) {
        let k = correction_factor(t, rd, &sp, c)?;
        let v = &(&k * &eta.value_basis(t.bar(roots[sp.first].vector()))) * &eta.value_basis(t.bar(roots[sp.second].vector()));
        values.insert(t.plain(roots[sp.root].vector()), v);
    }
    let mut domain = even_positive(t, rd);
    domain.extend(odd_positive_bar(t, rd));
    NilCharacter::new(t.total(), domain, values)
}

/// `ζ_χ(X) = χ(X) − ((α₁|α₂)/c) χ(X̄₁) χ(X̄₂)` on decomposable `X = [X₁, X₂]`, `χ(X)` otherwise.
pub fn zeta_from_chi(t: &TakiffAlgebra, rd: &RootDatum, chi: &NilCharacter, c: &Scalar) -> Result<NilCharacter> {
    if c.is_zero() {
        return Err(Error::Contract("the level c must be non-zero".into()));
    }
    let roots = rd.roots();
    let splits: BTreeMap<usize, OddSplitting> = odd_splittings(rd).into_iter().map(|s| (s.root, s)).collect();
    let mut values = BTreeMap::new();
    let domain = even_positive(t, rd);
    for (k, r) in roots.iter().enumerate() {
        if !r.positive || r.parity.is_odd() {
            continue;
        }
        let x = t.plain(r.vector());
        let mut v = chi.value_basis(x);
        if let Some(sp) = splits.get(&k) {
            let f = correction_factor(t, rd, sp, c)?;
            let a = chi.value_basis(t.bar(roots[sp.first].vector()));
            let b = chi.value_basis(t.bar(roots[sp.second].vector()));
            v -= &(&(&f * &a) * &b);
        }
        values.insert(x, v);
    }
    NilCharacter::new(t.total(), domain, values)
}

/// Simple roots of the even root system `Φ⁺_0̄`.
pub fn even_simple_roots(rd: &RootDatum) -> Vec<usize> {
    let roots = rd.roots();
    let even: Vec<usize> = (0..roots.len()).filter(|&k| roots[k].positive && !roots[k].parity.is_odd()).collect();
    even.iter()
        .copied()
        .filter(|&k| !even.iter().any(|&a| even.iter().any(|&b| sum(&roots[a], &roots[b]) == roots[k].values)))
        .collect()
}

/// Kostant regularity of `ζ`: non-zero on every simple root vector of `𝔫_0̄`,
/// and each even simple root is `α₁ + α₂` (distinct isotropic odd simples) or `2α₁` (non-isotropic).
pub fn regularity_check(t: &TakiffAlgebra, rd: &RootDatum, zeta: &NilCharacter) -> Result<Report> {
    let mut report = Report::new("regularity");
    let roots = rd.roots();
    let simples = even_simple_roots(rd);
    let g = t.total();
    let mut nonzero = Tally::default();
    for &k in &simples {
        let x = t.plain(roots[k].vector());
        let v = zeta.value_basis(x);
        nonzero.case(!v.is_zero(), || format!("zeta vanishes on {}", g.label(x)));
    }
    nonzero.into_report(&mut report, "non-zero on even simple root vectors");

    let odd_simple: Vec<usize> = (0..roots.len()).filter(|&k| roots[k].simple && roots[k].parity.is_odd()).collect();
    let mut shape = Tally::default();
    for &k in &simples {
        let mut ok = false;
        for &a in &odd_simple {
            for &b in &odd_simple {
                if sum(&roots[a], &roots[b]) != roots[k].values {
                    continue;
                }
                let aa = rd.pair(&roots[a].values, &roots[a].values)?;
                let bb = rd.pair(&roots[b].values, &roots[b].values)?;
                ok |= if a == b { !aa.is_zero() } else { aa.is_zero() && bb.is_zero() };
            }
        }
        shape.case(ok, || format!("{} is not a sum of two odd simple roots of the expected kind", g.label(t.plain(roots[k].vector()))));
    }
    shape.into_report(&mut report, "even simple roots split into odd simples");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{build_gl_with_parities, Parity};
    use crate::takiff::build_takiff;

    fn gl21() -> (TakiffAlgebra, RootDatum) {
        let (s, rd) = build_gl_with_parities(&[Parity::Even, Parity::Odd, Parity::Even]).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        (t, rd)
    }

    fn eta(t: &TakiffAlgebra, a: Scalar, b: Scalar) -> NilCharacter {
        let i = t.bar(t.base().index_of("E_12").unwrap());
        let j = t.bar(t.base().index_of("E_23").unwrap());
        NilCharacter::new(t.total(), [i, j], BTreeMap::from([(i, a), (j, b)])).unwrap()
    }

    #[test]
    fn hat_eta_value() {
        let (t, rd) = gl21();
        let e = eta(&t, Scalar::one(), Scalar::one());
        let h = hat_eta(&t, &rd, &e, &Scalar::one()).unwrap();
        let x = t.base().index_of("E_13").unwrap();
        assert_eq!(h.value_basis(t.plain(x)), Scalar::one());
        let z = zeta_from_chi(&t, &rd, &h, &Scalar::one()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn zero_eta() {
        let (t, rd) = gl21();
        let e = eta(&t, Scalar::zero(), Scalar::zero());
        assert!(hat_eta(&t, &rd, &e, &Scalar::one()).unwrap().is_zero());
    }

    #[test]
    fn structure_and_regularity() {
        let (t, rd) = gl21();
        assert_eq!(even_simple_roots(&rd).len(), 1);
        let chi = eta(&t, Scalar::one(), Scalar::from_int(2));
        let z = zeta_from_chi(&t, &rd, &chi, &Scalar::one()).unwrap();
        let r = regularity_check(&t, &rd, &z).unwrap();
        assert!(r.pass, "{}", r.to_json());
        let zero = NilCharacter::zero(t.total(), z.domain().iter().copied()).unwrap();
        assert!(!regularity_check(&t, &rd, &zero).unwrap().pass);
    }
}
