use rayon::prelude::*;

use super::fock::FockModule;
use super::module::{ModVec, SuperModule};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVector};
use crate::report::{Report, Tally};
use crate::superalg::weyl_vector;
use crate::wfinite::NilCharacter;

/// `x(yv) − (−1)^{p(x)p(y)} y(xv) − [x,y]v` for homogeneous `x`, `y`.
pub fn bracket_defect<M: SuperModule>(m: &M, x: &SparseVector, y: &SparseVector, v: &ModVec<M::Index>) -> ModVec<M::Index> {
    let g = m.algebra();
    let px = g.parity_of(x).unwrap_or(crate::superalg::Parity::Even);
    let py = g.parity_of(y).unwrap_or(crate::superalg::Parity::Even);
    let xy = m.act_element(x, &m.act_element(y, v));
    let yx = m.act_element(y, &m.act_element(x, v));
    let br = m.act_element(&g.bracket(x, y), v);
    let mut d = xy;
    d.axpy(&-Scalar::sign(px.koszul(py)), &yx);
    d.axpy(&Scalar::from_int(-1), &br);
    d
}

/// Checks the bracket relation for every pair in `pairs` on every basis vector up to `max_degree`.
pub fn verify_relations<M: SuperModule>(
    m: &M,
    pairs: &[(SparseVector, SparseVector)],
    max_degree: usize,
    name: &str,
    report: &mut Report,
) {
    let basis = m.basis_up_to(max_degree);
    let g = m.algebra();
    let tally = basis
        .par_iter()
        .map(|b| {
            let v = ModVec::basis(b.clone());
            let mut t = Tally::default();
            for (x, y) in pairs {
                let d = bracket_defect(m, x, y, &v);
                t.case(d.is_zero(), || format!("[{}, {}] on {:?}", g.show(x), g.show(y), b));
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    tally.into_report(report, name);
}

/// The commutation table of `𝔠 = 𝔰̄ + ℂz` realized by the module (the relations of the Fock construction).
pub fn verify_c_relations(f: &FockModule, max_degree: usize) -> Report {
    let mut report = Report::new("c-relations");
    let t = f.takiff();
    let n = t.base_dim();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            pairs.push((SparseVector::unit(t.bar(a)), SparseVector::unit(t.bar(b))));
        }
        pairs.push((SparseVector::unit(t.bar(a)), SparseVector::unit(t.z())));
    }
    verify_relations(f, &pairs, max_degree, "bar brackets", &mut report);
    report
}

/// Both identities behind the lifting formula on all basis vectors up to `max_degree`:
/// `[φ(s), φ(ū_k)] = φ([s, ū_k])` and `[φ(s), φ(t)] = φ([s, t])`.
pub fn verify_lift_identities(f: &FockModule, max_degree: usize) -> Report {
    let mut report = Report::new("fock-lift");
    let t = f.takiff();
    let n = t.base_dim();
    let lower = f.dual_bases().lower();
    let mut eq5 = Vec::new();
    let mut eq6 = Vec::new();
    for s in 0..n {
        for u in &lower {
            eq5.push((SparseVector::unit(t.plain(s)), t.bar_vec(u)));
        }
        for r in 0..n {
            eq6.push((SparseVector::unit(t.plain(s)), SparseVector::unit(t.plain(r))));
        }
    }
    verify_relations(f, &eq5, max_degree, "lift vs bar", &mut report);
    verify_relations(f, &eq6, max_degree, "lift vs lift", &mut report);
    report
}

/// `H|0⟩ = ρ(H)|0⟩`, `𝔫̂|0⟩ = 0` and `z|0⟩ = c|0⟩` on the untwisted module.
pub fn verify_highest_weight(f: &FockModule) -> Result<Report> {
    if f.eta().is_some_and(|e| !e.is_zero()) {
        return Err(Error::Contract("highest weight check needs the untwisted Fock space".into()));
    }
    let mut report = Report::new("highest-weight");
    let t = f.takiff();
    let rd = f.root_datum();
    let g = t.total();
    let vac = f.vacuum_vec();
    let rho = weyl_vector(rd);
    let mut cartan = Tally::default();
    for (k, &h) in rd.cartan().iter().enumerate() {
        let got = f.act(t.plain(h), &vac);
        cartan.case(got == vac.scaled(&rho.values[k]), || format!("{} acts by {:?}, rho = {}", g.label(h), got, rho.values[k]));
    }
    cartan.into_report(&mut report, "cartan eigenvalues");
    let mut kill = Tally::default();
    for r in rd.positive_roots() {
        for &x in &r.space {
            for k in [t.plain(x), t.bar(x)] {
                let got = f.act(k, &vac);
                kill.case(got.is_zero(), || format!("{} |0> = {:?}", g.label(k), got));
            }
        }
    }
    kill.into_report(&mut report, "positive part annihilates");
    let zc = f.act(t.z(), &vac);
    report.record("central charge", zc == vac.scaled(f.level()), format!("z acts by {}", f.level()), None);
    Ok(report)
}

/// `(X − χ̂(X))|0⟩ = 0` for every even positive root vector and local
/// nilpotency of `X − χ̂(X)` on basis vectors up to `max_degree`.
pub fn verify_whittaker_covariance(f: &FockModule, chi_hat: &NilCharacter, max_degree: usize, max_power: usize) -> Result<Report> {
    let t = f.takiff();
    let rd = f.root_datum();
    let g = t.total();
    if let Some(eta) = f.eta() {
        let bad: Vec<String> = rd
            .positive_roots()
            .filter(|r| r.parity.is_odd() && !r.simple)
            .filter(|r| !eta.value_basis(t.bar(r.vector())).is_zero())
            .map(|r| g.label(t.bar(r.vector())).to_string())
            .collect();
        if !bad.is_empty() {
            return Err(Error::Contract(format!("eta is non-zero on non-simple odd roots: {}", bad.join(", "))));
        }
    }
    let mut report = Report::new("whittaker-covariance");
    let vac = f.vacuum_vec();
    let xs: Vec<usize> = rd.positive_roots().filter(|r| !r.parity.is_odd()).map(|r| t.plain(r.vector())).collect();
    let shifted = |x: usize, v: &ModVec<_>| {
        let mut w = f.act(x, v);
        w.axpy(&-chi_hat.value_basis(x), v);
        w
    };
    let mut vacuum = Tally::default();
    for &x in &xs {
        let w = shifted(x, &vac);
        vacuum.case(w.is_zero(), || format!("({} - {}) |0> = {:?}", g.label(x), chi_hat.value_basis(x), w));
    }
    vacuum.into_report(&mut report, "vacuum eigenvector");

    let basis = f.basis_up_to(max_degree);
    let mut nil = Tally::default();
    let mut worst = 0usize;
    for &x in &xs {
        for b in &basis {
            let mut v = ModVec::basis(b.clone());
            let mut k = 0;
            while !v.is_zero() && k < max_power {
                v = shifted(x, &v);
                k += 1;
            }
            worst = worst.max(k);
            nil.case(v.is_zero(), || format!("{} - chi not nilpotent within {max_power} steps on {:?}", g.label(x), b));
        }
    }
    report.record(
        "local nilpotency",
        nil.failures == 0,
        format!("{} cases, {} failures, max power {worst}", nil.tested, nil.failures),
        nil.witness,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockrep::build_fock;
    use crate::superalg::build_gl;
    use crate::takiff::build_takiff;

    fn fock(m: usize, n: usize, c: Scalar) -> FockModule {
        let (s, rd) = build_gl(m, n).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        build_fock(&t, &rd, c, None).unwrap()
    }

    #[test]
    fn gl11_relations_and_lift() {
        let f = fock(1, 1, Scalar::one());
        let r = verify_c_relations(&f, 3);
        assert!(r.pass, "{}", r.to_json());
        let r = verify_lift_identities(&f, 3);
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn gl11_highest_weight() {
        let f = fock(1, 1, Scalar::from_int(2));
        let r = verify_highest_weight(&f).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn wrong_prefactor_caught() {
        let f = fock(1, 1, Scalar::one()).with_lift_prefactor(Scalar::one());
        let r = verify_lift_identities(&f, 2);
        assert!(!r.pass);
    }
}
