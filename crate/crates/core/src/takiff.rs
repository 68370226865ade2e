//! Central extension `𝔤 = 𝔰⊗Λ(θ) ⊕ ℂz` of a Takiff superalgebra.
//!
//! Basis layout of `𝔤`: all `b⊗1`, then all `b⊗θ` (written `bar(b)`), then `z`.

use rayon::prelude::*;

use crate::error::{contract, Error, Result};
use crate::exactlin::{rank, Scalar, SparseMatrix, SparseVector};
use crate::report::{Report, Tally};
use crate::superalg::json::{AlgebraJson, LayoutJson};
use crate::superalg::{verify_algebra, Parity, RootDatum, SuperAlgebra};

#[derive(Clone, Debug)]
pub struct TakiffAlgebra {
    base: SuperAlgebra,
    total: SuperAlgebra,
}

/// `𝔤 = 𝔫̂^− ⊕ 𝔥̂ ⊕ 𝔫̂` as index sets of the total basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatDecomposition {
    pub n_hat: Vec<usize>,
    pub h_hat: Vec<usize>,
    pub n_minus_hat: Vec<usize>,
}

impl TakiffAlgebra {
    pub fn base(&self) -> &SuperAlgebra {
        &self.base
    }

    pub fn total(&self) -> &SuperAlgebra {
        &self.total
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// Index of `b_i⊗1`.
    pub fn plain(&self, i: usize) -> usize {
        i
    }

    /// Index of `b_i⊗θ`.
    pub fn bar(&self, i: usize) -> usize {
        self.base.dim() + i
    }

    pub fn z(&self) -> usize {
        2 * self.base.dim()
    }

    pub fn is_bar(&self, k: usize) -> bool {
        k >= self.base.dim() && k < self.z()
    }

    /// Base index of `b⊗1` or `b⊗θ`; `None` for `z`.
    pub fn base_index(&self, k: usize) -> Option<usize> {
        let n = self.base.dim();
        (k < 2 * n).then(|| k % n)
    }

    pub fn plain_vec(&self, x: &SparseVector) -> SparseVector {
        x.clone()
    }

    pub fn bar_vec(&self, x: &SparseVector) -> SparseVector {
        x.map_indices(|i| self.bar(i))
    }

    pub fn layout(&self) -> LayoutJson {
        let n = self.base.dim();
        LayoutJson { base: (0..n).collect(), theta: (n..2 * n).collect(), z: 2 * n }
    }

    pub fn to_json(&self) -> AlgebraJson {
        self.to_json_with(None)
    }

    /// Serializes the total algebra; `rd` is a root datum of the base and is stored in base indices.
    pub fn to_json_with(&self, rd: Option<&RootDatum>) -> AlgebraJson {
        let mut j = AlgebraJson::from_algebra(&self.total, None);
        j.root_datum = rd.and_then(|rd| AlgebraJson::from_algebra(&self.base, Some(rd)).root_datum);
        j.takiff_of = Some(self.base.name().to_string());
        j.layout = Some(self.layout());
        j
    }

    /// Rebuilds the base algebra and its form from a serialized total algebra.
    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let layout = j.layout.as_ref().ok_or_else(|| Error::Parse("missing takiff layout".into()))?;
        let n = layout.base.len();
        let expected = LayoutJson { base: (0..n).collect(), theta: (n..2 * n).collect(), z: 2 * n };
        if *layout != expected || j.dim != 2 * n + 1 {
            return Err(Error::Parse("unsupported takiff layout".into()));
        }
        let (total, _) = j.to_algebra()?;
        let labels = total.labels()[..n].to_vec();
        let parity: Vec<Parity> = total.parities()[..n].to_vec();
        let mut brackets = Vec::new();
        let mut form = SparseMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let v = total.bracket_basis(a, b);
                if v.indices().any(|k| k >= n) {
                    return Err(Error::Parse("bracket of plain elements leaves the base".into()));
                }
                brackets.push((a, b, v.clone()));
                // [a⊗θ, b⊗θ] = (−1)^{p(b)} (a|b) z
                let zc = total.bracket_basis(n + a, n + b).get(2 * n);
                form.set(a, b, &zc * &Scalar::sign(parity[b].is_odd()))?;
            }
        }
        let name = j.takiff_of.clone().unwrap_or_else(|| format!("base of {}", j.name));
        let base = SuperAlgebra::new(name, labels, parity, brackets, Some(form))?;
        let rebuilt = build_total(&base);
        for a in 0..total.dim() {
            for b in 0..total.dim() {
                if rebuilt.bracket_basis(a, b) != total.bracket_basis(a, b) {
                    return Err(Error::Parse(format!(
                        "bracket [{}, {}] does not match the takiff structure",
                        total.label(a),
                        total.label(b)
                    )));
                }
            }
        }
        Ok(TakiffAlgebra { base, total })
    }

    /// Like `from_json`, also returning the base root datum when the file records one.
    pub fn from_json_with_root_datum(j: &AlgebraJson) -> Result<(Self, Option<RootDatum>)> {
        let t = Self::from_json(j)?;
        let rd = j.root_datum_for(&t.base)?;
        Ok((t, rd))
    }

    fn split(&self, x: &SparseVector) -> Result<(SparseVector, SparseVector)> {
        let n = self.base.dim();
        let mut plain = SparseVector::new();
        let mut bar = SparseVector::new();
        for (k, c) in x.iter() {
            if k < n {
                plain.add_term(k, c);
            } else if k < 2 * n {
                bar.add_term(k - n, c);
            } else {
                return contract("element has a z component");
            }
        }
        Ok((plain, bar))
    }

    /// `(s₁⊗f₁|s₂⊗f₂)' = (−1)^{p(f₁)p(s₂)} (s₁|s₂) ∫f₁∧f₂`
    pub fn odd_form_prime(&self, x: &SparseVector, y: &SparseVector) -> Result<Scalar> {
        let (x0, x1) = self.split(x)?;
        let (y0, y1) = self.split(y)?;
        let mut acc = self.base.form_value(&x0, &y1);
        for (j, c) in y0.iter() {
            let s = Scalar::sign(self.base.parity(j).is_odd());
            acc += &(&(c * &s) * &self.base.form_value(&x1, &SparseVector::unit(j)));
        }
        Ok(acc)
    }

    /// `D = ∂/∂θ` acting from the left: `D(s⊗θ) = (−1)^{p(s)} s⊗1`, `D(s⊗1) = 0`.
    pub fn derivation(&self, x: &SparseVector) -> Result<SparseVector> {
        let (_, x1) = self.split(x)?;
        let mut out = SparseVector::new();
        for (i, c) in x1.iter() {
            out.add_term(i, &(c * &Scalar::sign(self.base.parity(i).is_odd())));
        }
        Ok(out)
    }

    /// `α_D(x, y) = (D(x)|y)'`, the z-coefficient of `[x, y]`.
    pub fn cocycle_alpha_d(&self, x: &SparseVector, y: &SparseVector) -> Result<Scalar> {
        self.odd_form_prime(&self.derivation(x)?, y)
    }
}

fn build_total(s: &SuperAlgebra) -> SuperAlgebra {
    let n = s.dim();
    let z = 2 * n;
    let mut labels: Vec<String> = s.labels().to_vec();
    labels.extend(s.labels().iter().map(|l| format!("bar({l})")));
    labels.push("z".into());
    let mut parity: Vec<Parity> = s.parities().to_vec();
    parity.extend(s.parities().iter().map(|p| p.flip()));
    parity.push(Parity::Even);
    let bar = |v: &SparseVector| v.map_indices(|i| i + n);
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = s.bracket_basis(a, b);
            if !ab.is_zero() {
                brackets.push((a, b, ab.clone()));
                brackets.push((a, n + b, bar(ab)));
                // [a⊗θ, b⊗1] = (−1)^{p(b)} [a,b]⊗θ
                brackets.push((n + a, b, bar(ab).scaled(&Scalar::sign(s.parity(b).is_odd()))));
            }
            let f = s.form_basis(a, b);
            if !f.is_zero() {
                brackets.push((n + a, n + b, SparseVector::single(z, &f * &Scalar::sign(s.parity(b).is_odd()))));
            }
        }
    }
    SuperAlgebra::new(format!("takiff({})", s.name()), labels, parity, brackets, None).expect("layout is consistent")
}

/// Builds `𝔤` and its hatted triangular decomposition.
pub fn build_takiff(s: &SuperAlgebra, rd: &RootDatum) -> Result<(TakiffAlgebra, HatDecomposition)> {
    let form = s.form().ok_or_else(|| Error::Algebra(format!("{} carries no invariant form", s.name())))?;
    let r = rank(form);
    if r != s.dim() {
        return Err(Error::Algebra(format!("form on {} is degenerate (rank {r} of {})", s.name(), s.dim())));
    }
    let t = TakiffAlgebra { base: s.clone(), total: build_total(s) };
    let both = |idx: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = idx.to_vec();
        v.extend(idx.iter().map(|&i| t.bar(i)));
        v
    };
    let pos: Vec<usize> = rd.positive_roots().flat_map(|r| r.space.iter().copied()).collect();
    let neg: Vec<usize> = rd.negative_roots().flat_map(|r| r.space.iter().copied()).collect();
    let mut h_hat = both(rd.cartan());
    h_hat.push(t.z());
    let hat = HatDecomposition { n_hat: both(&pos), h_hat, n_minus_hat: both(&neg) };
    Ok((t, hat))
}

/// The dual bases `{u^j}`, `{u_j}` with `(u^i|u_j) = δ_ij`.
#[derive(Clone, Debug)]
pub struct DualBases {
    /// `E_α` for each positive root, in root-datum order.
    pub e: Vec<SparseVector>,
    /// `F_α` rescaled so that `(E_α|F_α) = 1`.
    pub f: Vec<SparseVector>,
    /// Orthonormal Cartan basis.
    pub h: Vec<SparseVector>,
    pub e_parity: Vec<Parity>,
    /// Index into `RootDatum::roots()` of each positive root used.
    pub root_ids: Vec<usize>,
}

impl DualBases {
    /// `{E_α} ∪ {F_α} ∪ {H_i}`
    pub fn upper(&self) -> Vec<SparseVector> {
        self.e.iter().chain(&self.f).chain(&self.h).cloned().collect()
    }

    /// `{F_α} ∪ {(−1)^{p(E_α)} E_α} ∪ {H_i}`
    pub fn lower(&self) -> Vec<SparseVector> {
        let signed = self.e.iter().zip(&self.e_parity).map(|(e, p)| e.scaled(&Scalar::sign(p.is_odd())));
        self.f.iter().cloned().chain(signed).chain(self.h.iter().cloned()).collect()
    }

    pub fn pairing_matrix(&self, s: &SuperAlgebra) -> SparseMatrix {
        let up = self.upper();
        let lo = self.lower();
        let rows: Vec<Vec<Scalar>> = up.iter().map(|u| lo.iter().map(|l| s.form_value(u, l)).collect()).collect();
        SparseMatrix::from_dense(&rows)
    }
}

/// Normalized root vectors and an orthonormal Cartan basis over ℚ(i).
pub fn dual_bases(s: &SuperAlgebra, rd: &RootDatum) -> Result<DualBases> {
    if s.form().is_none() {
        return Err(Error::Algebra(format!("{} carries no invariant form", s.name())));
    }
    let mut db = DualBases { e: vec![], f: vec![], h: vec![], e_parity: vec![], root_ids: vec![] };
    for (k, r) in rd.roots().iter().enumerate().filter(|(_, r)| r.positive) {
        let neg = rd.negative_of(r).ok_or_else(|| Error::Algebra("positive root without negative".into()))?;
        let e = SparseVector::unit(r.vector());
        let f_raw = SparseVector::unit(neg.vector());
        let p = s.form_value(&e, &f_raw);
        let inv = p.inv().ok_or_else(|| {
            Error::Algebra(format!("root vector {} pairs to zero with its negative", s.label(r.vector())))
        })?;
        db.e.push(e);
        db.f.push(f_raw.scaled(&inv));
        db.e_parity.push(r.parity);
        db.root_ids.push(k);
    }
    // Gram-Schmidt, then normalize with square roots in ℚ(i)
    let mut ortho: Vec<(SparseVector, Scalar)> = Vec::new();
    for &c in rd.cartan() {
        let mut v = SparseVector::unit(c);
        for (u, nu) in &ortho {
            let coef = &s.form_value(u, &v) / nu;
            v.axpy(&-coef, u);
        }
        let nv = s.form_value(&v, &v);
        if nv.is_zero() {
            return Err(Error::Algebra("form restricted to the Cartan subalgebra has an isotropic direction".into()));
        }
        ortho.push((v, nv));
    }
    for (v, nv) in ortho {
        let root = nv
            .sqrt_rational()
            .ok_or_else(|| Error::Algebra(format!("cannot normalize a Cartan element of norm {nv} over Q(i)")))?;
        db.h.push(v.scaled(&root.inv().expect("nonzero norm")));
    }
    Ok(db)
}

/// Structural checks of the extension: algebra axioms of `𝔤`, centrality,
/// the cocycle, the odd form, the hatted decomposition and the dual bases.
pub fn verify_takiff(t: &TakiffAlgebra, hat: &HatDecomposition, rd: &RootDatum) -> Report {
    let mut report = Report::new("takiff");
    report.absorb(verify_algebra(t.total()));
    let g = t.total();
    let n = t.base_dim();
    let dim = g.dim();

    let mut central = Tally::default();
    for b in 0..dim {
        central.case(g.bracket_basis(t.z(), b).is_zero() && g.bracket_basis(b, t.z()).is_zero(), || g.label(b).to_string());
    }
    central.into_report(&mut report, "z central");

    let mut skew = Tally::default();
    let mut zcoef = Tally::default();
    for x in 0..2 * n {
        for y in 0..2 * n {
            let ux = SparseVector::unit(x);
            let uy = SparseVector::unit(y);
            let a = t.cocycle_alpha_d(&ux, &uy).expect("no z component");
            let b = t.cocycle_alpha_d(&uy, &ux).expect("no z component");
            let s = -Scalar::sign(g.parity(x).koszul(g.parity(y)));
            skew.case(a == &s * &b, || format!("({}, {})", g.label(x), g.label(y)));
            zcoef.case(g.bracket_basis(x, y).get(t.z()) == a, || format!("({}, {})", g.label(x), g.label(y)));
        }
    }
    skew.into_report(&mut report, "cocycle superskew");
    zcoef.into_report(&mut report, "cocycle is bracket z-part");

    // ([x,y]₀|w)' = (x|[y,w]₀)'
    let strip = |v: &SparseVector| SparseVector::from_pairs(v.iter().filter(|(k, _)| *k != t.z()).map(|(k, c)| (k, c.clone())));
    let inv = (0..2 * n)
        .into_par_iter()
        .map(|x| {
            let mut tl = Tally::default();
            for y in 0..2 * n {
                let xy = strip(g.bracket_basis(x, y));
                for w in 0..2 * n {
                    let yw = strip(g.bracket_basis(y, w));
                    let l = t.odd_form_prime(&xy, &SparseVector::unit(w)).expect("stripped");
                    let r = t.odd_form_prime(&SparseVector::unit(x), &yw).expect("stripped");
                    tl.case(l == r, || format!("({}, {}, {})", g.label(x), g.label(y), g.label(w)));
                }
            }
            tl
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    inv.into_report(&mut report, "odd form invariant");

    let mut part: Vec<usize> = hat.n_hat.iter().chain(&hat.h_hat).chain(&hat.n_minus_hat).copied().collect();
    part.sort_unstable();
    let partitions = part == (0..dim).collect::<Vec<_>>();
    report.record("hat partition", partitions, format!("{} indices", part.len()), None);
    let mut closure = Tally::default();
    for &x in hat.n_hat.iter().chain(&hat.h_hat) {
        for &y in &hat.n_hat {
            let v = g.bracket_basis(x, y);
            closure.case(v.indices().all(|k| hat.n_hat.contains(&k)), || format!("[{}, {}]", g.label(x), g.label(y)));
        }
    }
    closure.into_report(&mut report, "hat closure");

    match dual_bases(t.base(), rd) {
        Ok(db) => {
            let m = db.pairing_matrix(t.base());
            let ok = m == SparseMatrix::identity(m.rows());
            report.record("dual bases", ok, format!("{} pairs", m.rows()), (!ok).then(|| "pairing matrix is not the identity".into()));
        }
        Err(e) => report.record("dual bases", false, e.to_string(), None),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::build_gl;

    fn gl11() -> (TakiffAlgebra, HatDecomposition, RootDatum) {
        let (s, rd) = build_gl(1, 1).unwrap();
        let (t, h) = build_takiff(&s, &rd).unwrap();
        (t, h, rd)
    }

    #[test]
    fn gl11_takiff_is_nine_dimensional_and_valid() {
        let (t, h, rd) = gl11();
        assert_eq!(t.total().dim(), 9);
        let r = verify_takiff(&t, &h, &rd);
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn odd_form_examples() {
        let (t, _, _) = gl11();
        let s = t.base();
        let e12 = s.index_of("E_12").unwrap();
        let e21 = s.index_of("E_21").unwrap();
        let x = SparseVector::unit(t.plain(e12));
        let ybar = SparseVector::unit(t.bar(e21));
        assert_eq!(t.odd_form_prime(&x, &ybar).unwrap(), Scalar::one());
        let xbar = SparseVector::unit(t.bar(e21));
        let y = SparseVector::unit(t.plain(e12));
        assert_eq!(t.odd_form_prime(&xbar, &y).unwrap(), Scalar::one());
        assert!(t.odd_form_prime(&x, &y).unwrap().is_zero());
        assert!(t.odd_form_prime(&SparseVector::unit(t.z()), &y).is_err());
    }

    #[test]
    fn cocycle_signs() {
        let (t, _, _) = gl11();
        let s = t.base();
        let e12 = SparseVector::unit(t.bar(s.index_of("E_12").unwrap()));
        let e21 = SparseVector::unit(t.bar(s.index_of("E_21").unwrap()));
        // the left derivative passes θ across the odd E_12
        assert_eq!(t.cocycle_alpha_d(&e12, &e21).unwrap(), Scalar::from_int(-1));
        assert_eq!(t.total().bracket(&e12, &e21), SparseVector::single(t.z(), Scalar::from_int(-1)));
        let plain = SparseVector::unit(t.plain(0));
        assert!(t.cocycle_alpha_d(&plain, &e21).unwrap().is_zero());
    }

    #[test]
    fn one_dimensional_even_base_gives_heisenberg() {
        let (s, rd) = build_gl(1, 0).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        assert_eq!(t.total().dim(), 3);
        let xbar = SparseVector::unit(t.bar(0));
        assert_eq!(t.total().bracket(&xbar, &xbar), SparseVector::unit(t.z()));
        assert!(verify_algebra(t.total()).pass);
    }

    #[test]
    fn orthonormal_cartan_cocycle() {
        let (s, rd) = build_gl(2, 1).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        let db = dual_bases(&s, &rd).unwrap();
        for (i, hi) in db.h.iter().enumerate() {
            for (j, hj) in db.h.iter().enumerate() {
                let v = t.cocycle_alpha_d(&t.bar_vec(hi), &t.bar_vec(hj)).unwrap();
                assert_eq!(v, Scalar::from_int(i64::from(i == j)));
            }
        }
        assert_eq!(db.upper().len(), 9);
        assert_eq!(db.pairing_matrix(&s), SparseMatrix::identity(9));
    }

    #[test]
    fn json_round_trip() {
        let (t, _, rd) = gl11();
        let j = t.to_json_with(Some(&rd));
        let (back, back_rd) = TakiffAlgebra::from_json_with_root_datum(&AlgebraJson::parse(&j.to_string_pretty()).unwrap()).unwrap();
        assert_eq!(back_rd.unwrap().roots().len(), rd.roots().len());
        assert_eq!(back.base().dim(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(back.base().form_basis(a, b), t.base().form_basis(a, b));
            }
        }
    }

    #[test]
    fn missing_form_rejected() {
        let (s, rd) = build_gl(1, 1).unwrap();
        assert!(build_takiff(&s.with_form(None), &rd).is_err());
    }
}
