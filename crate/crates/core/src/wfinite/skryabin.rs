use std::collections::{BTreeMap, BTreeSet};

use super::NilCharacter;
use crate::error::{Error, Result};
use crate::exactlin::{rank, solve, Scalar, SparseMatrix, SparseVector};
use crate::report::{Report, Tally};
use crate::superalg::{grading_by_adh, Grading, Parity, SuperAlgebra};
use crate::takiff::TakiffAlgebra;

/// `𝔪 = ⊕_{i≤−1} 𝔤(i)` for a grading that is diagonal in the basis.
#[derive(Clone, Debug)]
pub struct GradedNilradical {
    /// Degree of every basis element of the ambient algebra.
    pub basis_degrees: Vec<i64>,
    pub m_indices: Vec<usize>,
    /// `u₁ … u_m`: even elements of `𝔪` first, then odd ones.
    pub u_basis: Vec<usize>,
    pub u_parity: Vec<Parity>,
    pub x_duals: Option<Vec<SparseVector>>,
}

impl GradedNilradical {
    pub fn new(alg: &SuperAlgebra, grading: &Grading) -> Result<Self> {
        let degrees = grading
            .basis_degrees
            .clone()
            .ok_or_else(|| Error::Contract("the grading must be diagonal in the basis".into()))?;
        let m_indices: Vec<usize> = (0..alg.dim()).filter(|&k| degrees[k] < 0).collect();
        for &a in &m_indices {
            for &b in &m_indices {
                let d = degrees[a] + degrees[b];
                if let Some(k) = alg.bracket_basis(a, b).indices().find(|&k| degrees[k] != d) {
                    return Err(Error::Algebra(format!(
                        "[{}, {}] has a component {} outside degree {d}",
                        alg.label(a),
                        alg.label(b),
                        alg.label(k)
                    )));
                }
            }
        }
        let mut u_basis: Vec<usize> = m_indices.iter().copied().filter(|&k| !alg.parity(k).is_odd()).collect();
        u_basis.extend(m_indices.iter().copied().filter(|&k| alg.parity(k).is_odd()));
        let u_parity = u_basis.iter().map(|&k| alg.parity(k)).collect();
        Ok(GradedNilradical { basis_degrees: degrees, m_indices, u_basis, u_parity, x_duals: None })
    }

    pub fn with_duals(mut self, xs: Vec<SparseVector>) -> Self {
        self.x_duals = Some(xs);
        self
    }

    pub fn dim(&self) -> usize {
        self.u_basis.len()
    }

    /// `d_s = −deg(u_s)`.
    pub fn depth(&self, s: usize) -> i64 {
        -self.basis_degrees[self.u_basis[s]]
    }

    pub fn contains(&self, k: usize) -> bool {
        self.basis_degrees[k] < 0
    }

    /// The common degree of the components, `None` for mixed or zero elements.
    pub fn degree_of(&self, v: &SparseVector) -> Option<i64> {
        let mut it = v.indices().map(|k| self.basis_degrees[k]);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Whether `v ∈ 𝔪(d)` (zero counts).
    pub fn in_component(&self, v: &SparseVector, d: i64) -> bool {
        d < 0 && v.indices().all(|k| self.basis_degrees[k] == d)
    }
}

/// Grades `𝔤` by `ad(h⊗1)`; `bar(x)` has the degree of `x` and `z` degree 0.
pub fn graded_nilradical(t: &TakiffAlgebra, h: &SparseVector) -> Result<GradedNilradical> {
    let grading = grading_by_adh(t.total(), &t.plain_vec(h))?;
    GradedNilradical::new(t.total(), &grading)
}

/// `ψ(x) = (e|∂x/∂θ)` on all of `𝔤`: the pairing of `e` with the barred part.
fn psi(t: &TakiffAlgebra, e: &SparseVector, x: &SparseVector) -> Scalar {
    let mut acc = Scalar::zero();
    for (k, c) in x.iter() {
        if t.is_bar(k) {
            let i = t.base_index(k).expect("bar index");
            acc += &(c * &t.base().form_value(e, &SparseVector::unit(i)));
        }
    }
    acc
}

fn check_e(t: &TakiffAlgebra, g: &GradedNilradical, e: &SparseVector) -> Result<()> {
    if e.is_zero() {
        return Err(Error::Contract("e is zero".into()));
    }
    if t.base().parity_of(e) != Some(Parity::Odd) {
        return Err(Error::Contract("e must be odd and homogeneous".into()));
    }
    if g.degree_of(&t.plain_vec(e)) != Some(1) {
        return Err(Error::Contract("e must have degree 1 for ad h".into()));
    }
    Ok(())
}

/// `χ^e(x⊗θ) = (e|x)`, `χ^e(x⊗1) = 0` on `𝔪`.
pub fn nilchar_from_e(t: &TakiffAlgebra, g: &GradedNilradical, e: &SparseVector) -> Result<NilCharacter> {
    check_e(t, g, e)?;
    let values: BTreeMap<usize, Scalar> =
        g.m_indices.iter().map(|&k| (k, psi(t, e, &SparseVector::unit(k)))).filter(|(_, v)| !v.is_zero()).collect();
    NilCharacter::new(t.total(), g.m_indices.iter().copied(), values)
}

/// Homogeneous `x_j` with `χ^e([u_i, x_j]) = δ_ij` and `deg(x_j) = −1 + d_j`.
pub fn solve_dual_elements(t: &TakiffAlgebra, g: &GradedNilradical, e: &SparseVector) -> Result<Vec<SparseVector>> {
    check_e(t, g, e)?;
    let alg = t.total();
    let ee = t.plain_vec(e);
    let images: Vec<SparseVector> = g.u_basis.iter().map(|&u| alg.bracket_left(u, &ee)).collect();
    let r = rank(&SparseMatrix::from_rows(alg.dim(), images)?);
    if r != g.dim() {
        return Err(Error::Algebra(format!("ad e is not injective on m (rank {r} of {})", g.dim())));
    }
    let class = |s: usize| (g.depth(s), g.u_parity[s]);
    let mut out = Vec::with_capacity(g.dim());
    for s in 0..g.dim() {
        let peers: Vec<usize> = (0..g.dim()).filter(|&q| class(q) == class(s)).collect();
        let target_deg = -1 + g.depth(s);
        let cands: Vec<usize> =
            (0..alg.dim()).filter(|&k| g.basis_degrees[k] == target_deg && alg.parity(k) == g.u_parity[s]).collect();
        let rows: Vec<Vec<Scalar>> = peers
            .iter()
            .map(|&q| cands.iter().map(|&k| psi(t, e, alg.bracket_basis(g.u_basis[q], k))).collect())
            .collect();
        let m = SparseMatrix::from_dense(&rows);
        let rhs = SparseVector::from_pairs(peers.iter().enumerate().map(|(r, &q)| (r, Scalar::from_int(i64::from(q == s)))));
        let sol = if cands.is_empty() { None } else { solve(&m, &rhs)? };
        let sol = sol.ok_or_else(|| Error::Algebra(format!("pairing is singular for u = {}", alg.label(g.u_basis[s]))))?;
        out.push(SparseVector::from_pairs(sol.iter().map(|(i, c)| (cands[i], c.clone()))));
    }
    Ok(out)
}

/// Skryabin conditions for `phi` on the graded nilradical and its duals, plus the degree constraint on the duals.
pub fn verify_skryabin_conditions(alg: &SuperAlgebra, g: &GradedNilradical, phi: &NilCharacter) -> Result<Report> {
    let xs = g.x_duals.as_ref().ok_or_else(|| Error::Contract("dual elements have not been solved".into()))?;
    let domain: BTreeSet<usize> = g.m_indices.iter().copied().collect();
    if phi.domain() != &domain {
        return Err(Error::Contract("phi must be defined on m".into()));
    }
    let mut report = Report::new("skryabin");
    let mut degs = Tally::default();
    for (s, x) in xs.iter().enumerate() {
        let ok = x.is_zero() || g.degree_of(x) == Some(-1 + g.depth(s));
        let ok = ok && alg.parity_of(x).is_none_or(|p| p == g.u_parity[s]);
        degs.case(ok, || format!("x_{} = {} is not homogeneous of degree {}", s + 1, alg.show(x), -1 + g.depth(s)));
    }
    degs.into_report(&mut report, "dual degrees");

    let mut one = Tally::default();
    let mut zero = Tally::default();
    for (i, &u) in g.u_basis.iter().enumerate() {
        for (j, x) in xs.iter().enumerate() {
            let w = alg.bracket_left(u, x);
            let inm1 = g.in_component(&w, -1);
            if i == j {
                let v = phi.value(&w);
                one.case(inm1 && v.is_one(), || {
                    format!("[u_{0}, x_{0}] = {1}: in m(-1) {inm1}, phi = {v}", i + 1, alg.show(&w))
                });
            } else if inm1 {
                let v = phi.value(&w);
                zero.case(v.is_zero(), || format!("phi([u_{}, x_{}]) = {v}", i + 1, j + 1));
            }
        }
    }
    one.into_report(&mut report, "phi([u_i, x_i]) = 1");
    let (tested, failures, witness) = (zero.tested, zero.failures, zero.witness);
    report.record(
        "phi([u_i, x_j]) = 0",
        failures == 0,
        format!("{tested} cases in m(-1) of {} off-diagonal pairs, {failures} failures", g.dim() * g.dim().saturating_sub(1)),
        witness,
    );

    let mut three = Tally::default();
    for &k in &g.m_indices {
        if g.basis_degrees[k] <= -2 {
            let v = phi.value_basis(k);
            three.case(v.is_zero(), || format!("phi({}) = {v} in degree {}", alg.label(k), g.basis_degrees[k]));
        }
    }
    three.into_report(&mut report, "phi vanishes in degree <= -2");
    Ok(report)
}
