use std::cmp::Ordering;

use rayon::prelude::*;

use super::{GradedNilradical, NilCharacter};
use crate::error::{Error, Result};
use crate::fockrep::{ModVec, SuperModule};
use crate::report::{Report, Tally};

/// `a ∈ ℤ≥0^{m'} × {0,1}^{m−m'}` with `wt a = Σ d_s a_s` and `|a| = Σ a_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub exponents: Vec<u32>,
    pub weight: u64,
    pub size: u64,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>, g: &GradedNilradical) -> Result<Self> {
        if exponents.len() != g.dim() {
            return Err(Error::Contract(format!("multi-index needs {} entries", g.dim())));
        }
        if let Some(s) = (0..g.dim()).find(|&s| g.u_parity[s].is_odd() && exponents[s] > 1) {
            return Err(Error::Contract(format!("odd position {} has exponent {}", s + 1, exponents[s])));
        }
        let weight = exponents.iter().enumerate().map(|(s, &a)| g.depth(s) as u64 * u64::from(a)).sum();
        let size = exponents.iter().map(|&a| u64::from(a)).sum();
        Ok(MultiIndex { exponents, weight, size })
    }
}

impl Ord for MultiIndex {
    /// `wt` ascending, then `|a|` descending, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| other.size.cmp(&self.size))
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All multi-indices of weight at most `max_weight`, in increasing order.
pub fn multi_indices(g: &GradedNilradical, max_weight: u64) -> Vec<MultiIndex> {
    let mut acc: Vec<(Vec<u32>, u64)> = vec![(vec![], 0)];
    for s in 0..g.dim() {
        let d = g.depth(s) as u64;
        let cap = if g.u_parity[s].is_odd() { 1 } else { u32::MAX };
        let mut next = Vec::new();
        for (e, w) in &acc {
            let mut a = 0u32;
            while a <= cap && w + d * u64::from(a) <= max_weight {
                let mut n = e.clone();
                n.push(a);
                next.push((n, w + d * u64::from(a)));
                a += 1;
            }
        }
        acc = next;
    }
    let mut out: Vec<MultiIndex> = acc.into_iter().map(|(e, _)| MultiIndex::new(e, g).expect("valid by construction")).collect();
    out.sort();
    out
}

/// `x^b v = x_1^{b_1} ⋯ x_m^{b_m} v`.
fn apply_x<M: SuperModule>(m: &M, g: &GradedNilradical, b: &MultiIndex, v: &ModVec<M::Index>) -> ModVec<M::Index> {
    let xs = g.x_duals.as_ref().expect("checked by caller");
    let mut w = v.clone();
    for s in (0..g.dim()).rev() {
        for _ in 0..b.exponents[s] {
            w = m.act_element(&xs[s], &w);
        }
    }
    w
}

/// `u^a w = (u_1 − φ(u_1))^{a_1} ⋯ u_m^{a_m} w`, shifts only on even `u`.
fn apply_u<M: SuperModule>(m: &M, g: &GradedNilradical, phi: &NilCharacter, a: &MultiIndex, w: &ModVec<M::Index>) -> ModVec<M::Index> {
    let mut w = w.clone();
    for s in (0..g.dim()).rev() {
        let k = g.u_basis[s];
        let shift = if g.u_parity[s].is_odd() { None } else { Some(phi.value_basis(k)) };
        for _ in 0..a.exponents[s] {
            let mut n = m.act(k, &w);
            if let Some(c) = &shift {
                n.axpy(&-c.clone(), &w);
            }
            w = n;
        }
    }
    w
}

/// `u^a x^a v = c_a v` with `c_a ≠ 0` and `u^a x^b v = 0` for `a > b`, over all
/// multi-indices of weight at most `max_weight`.
pub fn appendix_pairing_check<M: SuperModule>(
    m: &M,
    g: &GradedNilradical,
    phi: &NilCharacter,
    v: &ModVec<M::Index>,
    max_weight: u64,
) -> Result<Report> {
    if g.x_duals.is_none() {
        return Err(Error::Contract("dual elements have not been solved".into()));
    }
    if v.is_zero() {
        return Err(Error::Contract("no Whittaker vector supplied".into()));
    }
    for &k in &g.m_indices {
        let mut w = m.act(k, v);
        w.axpy(&-phi.value_basis(k), v);
        if !w.is_zero() {
            return Err(Error::Contract(format!("the supplied vector is not a Whittaker vector: fails at {}", m.algebra().label(k))));
        }
    }
    let idx = multi_indices(g, max_weight);
    let xb: Vec<ModVec<M::Index>> = idx.par_iter().map(|b| apply_x(m, g, b, v)).collect();
    let results: Vec<(Tally, Tally, Option<String>)> = idx
        .par_iter()
        .enumerate()
        .map(|(ia, a)| {
            let mut diag = Tally::default();
            let mut lower = Tally::default();
            let mut scalar = None;
            for (ib, b) in idx.iter().enumerate().take(ia + 1) {
                let w = apply_u(m, g, phi, a, &xb[ib]);
                if ia == ib {
                    let c = w.ratio_to(v).filter(|c| !c.is_zero());
                    diag.case(c.is_some(), || format!("u^a x^a v is not a non-zero multiple of v for a = {:?}", a.exponents));
                    scalar = c.map(|c| format!("{:?}:{c}", a.exponents));
                } else {
                    lower.case(w.is_zero(), || format!("u^a x^b v != 0 for a = {:?} > b = {:?}", a.exponents, b.exponents));
                }
            }
            (diag, lower, scalar)
        })
        .collect();
    let mut diag = Tally::default();
    let mut lower = Tally::default();
    let mut scalars = Vec::new();
    for (d, l, s) in results {
        diag = diag.merge(d);
        lower = lower.merge(l);
        scalars.extend(s);
    }
    let mut report = Report::new("appendix");
    report.record(
        "u^a x^a v = c v, c != 0",
        diag.failures == 0,
        format!("{} cases, {} failures; scalars {}", diag.tested, diag.failures, scalars.join(", ")),
        diag.witness,
    );
    lower.into_report(&mut report, "u^a x^b v = 0 for a > b");
    Ok(report)
}
