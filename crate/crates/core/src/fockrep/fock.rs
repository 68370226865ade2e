use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::module::{ModVec, SuperModule};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVector};
use crate::superalg::{weyl_vector, Parity, RootDatum, SuperAlgebra, Weight};
use crate::takiff::{dual_bases, DualBases, TakiffAlgebra};
use crate::wfinite::NilCharacter;

/// Monomial `F̄^poly · Π grass · Π cliff |0⟩`.
///
/// `poly[j]` is the exponent of the even variable attached to the j-th odd
/// positive root, bit j of `grass` the odd variable of the j-th even positive
/// root, and bit k of `cliff` the k-th Clifford creation letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockBasisIndex {
    pub poly: Vec<u32>,
    pub grass: u64,
    pub cliff: u64,
}

impl FockBasisIndex {
    pub fn vacuum(n_poly: usize) -> Self {
        FockBasisIndex { poly: vec![0; n_poly], grass: 0, cliff: 0 }
    }

    pub fn degree(&self) -> usize {
        self.poly.iter().map(|&e| e as usize).sum::<usize>() + self.grass.count_ones() as usize + self.cliff.count_ones() as usize
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(((self.grass.count_ones() + self.cliff.count_ones()) % 2) as u8)
    }
}

fn sign_below(bits: u64, j: usize) -> bool {
    (bits & ((1u64 << j) - 1)).count_ones() % 2 == 1
}

/// Elementary operators on the monomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Op {
    Id,
    MulPoly(usize),
    DerPoly(usize),
    MulGrass(usize),
    DerGrass(usize),
    /// Clifford annihilator `H̄_{2k−1} + iH̄_{2k}`.
    Ann(usize),
    /// Clifford creator `H̄_{2k−1} − iH̄_{2k}`.
    Cre(usize),
    /// Leftover generator `H̄_ℓ` when the rank is odd.
    Odd,
}

type Linear = Vec<(Op, Scalar)>;
type Quadratic = Vec<(Op, Op, Scalar)>;

/// The Fock space `𝔉_c`, optionally twisted by a character `η` of `𝔫̄_0̄`.
#[derive(Clone, Debug)]
pub struct FockModule {
    takiff: TakiffAlgebra,
    rd: RootDatum,
    c: Scalar,
    eta: Option<NilCharacter>,
    db: DualBases,
    /// Root-datum ids of the variables.
    poly_roots: Vec<usize>,
    grass_roots: Vec<usize>,
    pairs: usize,
    leftover: bool,
    bar_ops: Vec<Linear>,
    lift_ops: Vec<Quadratic>,
    prefactor: Scalar,
}

impl FockModule {
    pub fn takiff(&self) -> &TakiffAlgebra {
        &self.takiff
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn level(&self) -> &Scalar {
        &self.c
    }

    pub fn eta(&self) -> Option<&NilCharacter> {
        self.eta.as_ref()
    }

    pub fn dual_bases(&self) -> &DualBases {
        &self.db
    }

    pub fn vacuum(&self) -> FockBasisIndex {
        FockBasisIndex::vacuum(self.poly_roots.len())
    }

    pub fn vacuum_vec(&self) -> ModVec<FockBasisIndex> {
        ModVec::basis(self.vacuum())
    }

    /// Number of Clifford creation letters.
    pub fn clifford_letters(&self) -> usize {
        self.pairs + usize::from(self.leftover)
    }

    pub fn poly_roots(&self) -> &[usize] {
        &self.poly_roots
    }

    pub fn grass_roots(&self) -> &[usize] {
        &self.grass_roots
    }

    /// Replaces the `1/2c` in the lifting formula; used to check that verifiers catch a wrong prefactor.
    pub fn with_lift_prefactor(mut self, prefactor: Scalar) -> Self {
        self.prefactor = prefactor;
        self.lift_ops = build_lift_ops(self.takiff.base(), &self.db, &self.bar_ops, &self.prefactor);
        self
    }

    /// Weight of a monomial: `ρ_c − Σ (exponent)·α`.
    pub fn weight(&self, idx: &FockBasisIndex) -> Weight {
        let mut w = weyl_vector(&self.rd).with_level(self.c.clone());
        for (j, &e) in idx.poly.iter().enumerate() {
            if e > 0 {
                w = w.shifted(&self.rd.roots()[self.poly_roots[j]].values, &Scalar::from_int(-(e as i64)));
            }
        }
        for (j, &r) in self.grass_roots.iter().enumerate() {
            if idx.grass >> j & 1 == 1 {
                w = w.shifted(&self.rd.roots()[r].values, &Scalar::from_int(-1));
            }
        }
        w
    }

    /// Offset of a monomial below `ρ_c`, in simple-root coordinates.
    pub fn offset(&self, idx: &FockBasisIndex) -> Vec<i64> {
        let mut off = vec![0i64; self.rd.simple_count()];
        let mut add = |r: usize, k: i64| {
            let co = self.rd.simple_coords_int(&self.rd.roots()[r].values).expect("roots are integral in simple coordinates");
            for (o, x) in off.iter_mut().zip(co) {
                *o += k * x;
            }
        };
        for (j, &e) in idx.poly.iter().enumerate() {
            if e > 0 {
                add(self.poly_roots[j], e as i64);
            }
        }
        for (j, &r) in self.grass_roots.iter().enumerate() {
            if idx.grass >> j & 1 == 1 {
                add(r, 1);
            }
        }
        off
    }

    pub(crate) fn apply_op(&self, op: Op, idx: &FockBasisIndex) -> Option<(Scalar, FockBasisIndex)> {
        let mut out = idx.clone();
        let minus = |neg: bool| Scalar::sign(neg);
        match op {
            Op::Id => Some((Scalar::one(), out)),
            Op::MulPoly(j) => {
                out.poly[j] += 1;
                Some((Scalar::one(), out))
            }
            Op::DerPoly(j) => {
                let e = idx.poly[j];
                if e == 0 {
                    return None;
                }
                out.poly[j] -= 1;
                Some((Scalar::from_int(e as i64), out))
            }
            Op::MulGrass(j) => {
                if idx.grass >> j & 1 == 1 {
                    return None;
                }
                out.grass |= 1 << j;
                Some((minus(sign_below(idx.grass, j)), out))
            }
            Op::DerGrass(j) => {
                if idx.grass >> j & 1 == 0 {
                    return None;
                }
                out.grass &= !(1 << j);
                Some((minus(sign_below(idx.grass, j)), out))
            }
            Op::Cre(k) => {
                if idx.cliff >> k & 1 == 1 {
                    return None;
                }
                out.cliff |= 1 << k;
                let neg = (idx.grass.count_ones() % 2 == 1) ^ sign_below(idx.cliff, k);
                Some((minus(neg), out))
            }
            Op::Ann(k) => {
                if idx.cliff >> k & 1 == 0 {
                    return None;
                }
                out.cliff &= !(1 << k);
                let neg = (idx.grass.count_ones() % 2 == 1) ^ sign_below(idx.cliff, k);
                Some((&minus(neg) * &(&Scalar::from_int(2) * &self.c), out))
            }
            Op::Odd => {
                let k = self.pairs;
                let neg = (idx.grass.count_ones() % 2 == 1) ^ sign_below(idx.cliff, k);
                if idx.cliff >> k & 1 == 0 {
                    out.cliff |= 1 << k;
                    Some((minus(neg), out))
                } else {
                    out.cliff &= !(1 << k);
                    Some((&minus(neg) * &(&self.c * &Scalar::from_ratio(1, 2)), out))
                }
            }
        }
    }

    fn apply_linear(&self, ops: &Linear, v: &ModVec<FockBasisIndex>) -> ModVec<FockBasisIndex> {
        let mut out = ModVec::new();
        for (idx, c) in v.iter() {
            for (op, k) in ops {
                if let Some((s, j)) = self.apply_op(*op, idx) {
                    out.add_term(j, &(&(c * k) * &s));
                }
            }
        }
        out
    }

    /// `φ_η(x̄)` for `x ∈ 𝔰`.
    pub fn act_bar(&self, x: &SparseVector, v: &ModVec<FockBasisIndex>) -> ModVec<FockBasisIndex> {
        let ops = bar_linear(&self.takiff, &self.db, &self.var_map(), &self.c, self.eta.as_ref(), self.pairs, self.leftover, x);
        self.apply_linear(&ops, v)
    }

    /// `φ(s)` from the lifting formula, for `s ∈ 𝔰`.
    pub fn lift_action(&self, s: &SparseVector, v: &ModVec<FockBasisIndex>) -> ModVec<FockBasisIndex> {
        let mut out = ModVec::new();
        for (i, c) in s.iter() {
            out.axpy(c, &self.act(self.takiff.plain(i), v));
        }
        out
    }

    fn var_map(&self) -> HashMap<usize, Var> {
        var_map(&self.poly_roots, &self.grass_roots)
    }

    pub fn vector_to_json(&self, v: &ModVec<FockBasisIndex>) -> Vec<ModuleTermJson> {
        let g = self.takiff.base();
        let neg_label = |r: usize| {
            let root = &self.rd.roots()[r];
            let neg = self.rd.negative_of(root).expect("negative root");
            format!("bar({})", g.label(neg.vector()))
        };
        let letter = |k: usize| if k < self.pairs { format!("b{}", k + 1) } else { "g".to_string() };
        v.iter()
            .map(|(idx, c)| ModuleTermJson {
                poly: idx
                    .poly
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| (neg_label(self.poly_roots[j]), e))
                    .collect(),
                grass: (0..self.grass_roots.len()).filter(|j| idx.grass >> j & 1 == 1).map(|j| neg_label(self.grass_roots[j])).collect(),
                cliff: (0..self.clifford_letters()).filter(|k| idx.cliff >> k & 1 == 1).map(letter).collect(),
                coeff: c.clone(),
            })
            .collect()
    }
}

/// One term of a serialized module vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleTermJson {
    pub poly: BTreeMap<String, u32>,
    pub grass: Vec<String>,
    pub cliff: Vec<String>,
    pub coeff: Scalar,
}

#[derive(Clone, Copy, Debug)]
enum Var {
    Poly(usize),
    Grass(usize),
}

fn var_map(poly: &[usize], grass: &[usize]) -> HashMap<usize, Var> {
    let mut m = HashMap::new();
    for (j, &r) in poly.iter().enumerate() {
        m.insert(r, Var::Poly(j));
    }
    for (j, &r) in grass.iter().enumerate() {
        m.insert(r, Var::Grass(j));
    }
    m
}

/// Expands `φ_η(x̄)` through `x = Σ_j (u^j|x) u_j`.
#[allow(clippy::too_many_arguments)]
fn bar_linear(
    t: &TakiffAlgebra,
    db: &DualBases,
    vars: &HashMap<usize, Var>,
    c: &Scalar,
    eta: Option<&NilCharacter>,
    pairs: usize,
    leftover: bool,
    x: &SparseVector,
) -> Linear {
    let s = t.base();
    let mut acc: BTreeMap<Op, Scalar> = BTreeMap::new();
    let mut push = |op: Op, k: Scalar| {
        if k.is_zero() {
            return;
        }
        let e = acc.entry(op).or_insert_with(Scalar::zero);
        *e += &k;
    };
    for (a, root) in db.root_ids.iter().enumerate() {
        let var = vars[root];
        // coefficient on F_α is (E_α|x); φ(F̄_α) multiplies
        let cf = s.form_value(&db.e[a], x);
        // coefficient on E_α is (−1)^{p(E_α)} (F_α|x); φ(Ē_α) = (−1)^{p(E_α)} c ∂
        let ce = s.form_value(&db.f[a], x);
        let (mul, der) = match var {
            Var::Poly(j) => (Op::MulPoly(j), Op::DerPoly(j)),
            Var::Grass(j) => (Op::MulGrass(j), Op::DerGrass(j)),
        };
        push(mul, cf);
        push(der, &ce * c);
    }
    let half = Scalar::from_ratio(1, 2);
    let half_over_i = &half / &Scalar::i();
    for (i, h) in db.h.iter().enumerate() {
        let ch = s.form_value(h, x);
        if ch.is_zero() {
            continue;
        }
        let k = i / 2;
        if leftover && i == 2 * pairs {
            push(Op::Odd, ch);
        } else if i % 2 == 0 {
            push(Op::Ann(k), &ch * &half);
            push(Op::Cre(k), &ch * &half);
        } else {
            push(Op::Ann(k), &ch * &half_over_i);
            push(Op::Cre(k), -(&ch * &half_over_i));
        }
    }
    if let Some(eta) = eta {
        push(Op::Id, eta.value(&t.bar_vec(x)));
    }
    acc.into_iter().collect()
}

/// `φ(s) = (1/2c) Σ_j φ(overline{[s,u^j]}) φ(ū_j)` for each basis element `s`.
fn build_lift_ops(s: &SuperAlgebra, db: &DualBases, bar_ops: &[Linear], prefactor: &Scalar) -> Vec<Quadratic> {
    let upper = db.upper();
    let lower = db.lower();
    let expand = |x: &SparseVector| -> Linear {
        let mut acc: BTreeMap<Op, Scalar> = BTreeMap::new();
        for (i, c) in x.iter() {
            for (op, k) in &bar_ops[i] {
                let e = acc.entry(*op).or_insert_with(Scalar::zero);
                *e += &(c * k);
            }
        }
        acc.into_iter().filter(|(_, k)| !k.is_zero()).collect()
    };
    let lower_ops: Vec<Linear> = lower.iter().map(expand).collect();
    (0..s.dim())
        .map(|i| {
            let mut acc: BTreeMap<(Op, Op), Scalar> = BTreeMap::new();
            for (uj, lo) in upper.iter().zip(&lower_ops) {
                let left = expand(&s.bracket_left(i, uj));
                for (o1, k1) in &left {
                    for (o2, k2) in lo {
                        let e = acc.entry((*o1, *o2)).or_insert_with(Scalar::zero);
                        *e += &(&(k1 * k2) * prefactor);
                    }
                }
            }
            acc.into_iter().filter(|(_, k)| !k.is_zero()).map(|((a, b), k)| (a, b, k)).collect()
        })
        .collect()
}

/// Builds `𝔉_c` (or `𝔉_c^η` when `eta` is given) over the Takiff extension.
pub fn build_fock(t: &TakiffAlgebra, rd: &RootDatum, c: Scalar, eta: Option<NilCharacter>) -> Result<FockModule> {
    if c.is_zero() {
        return Err(Error::Contract("the level c must be non-zero (non-critical level)".into()));
    }
    if let Some(eta) = &eta {
        for &k in eta.domain() {
            let ok = t.is_bar(k)
                && rd.root_of_vector(t.base_index(k).expect("bar index")).is_some_and(|r| r.positive && r.parity.is_odd());
            if !ok {
                return Err(Error::Contract(format!(
                    "eta must live on the even part of bar(n); got {}",
                    t.total().label(k)
                )));
            }
        }
    }
    let db = dual_bases(t.base(), rd)?;
    let mut poly_roots = Vec::new();
    let mut grass_roots = Vec::new();
    for (&r, p) in db.root_ids.iter().zip(&db.e_parity) {
        if p.is_odd() {
            poly_roots.push(r);
        } else {
            grass_roots.push(r);
        }
    }
    let ell = db.h.len();
    let pairs = ell / 2;
    let leftover = ell % 2 == 1;
    if grass_roots.len() > 63 || pairs + 1 > 63 {
        return Err(Error::Contract("algebra too large for the Fock basis encoding".into()));
    }
    let vars = var_map(&poly_roots, &grass_roots);

    // the annihilating subspace must be isotropic for α_D
    let mut iso: Vec<SparseVector> = db.e.iter().map(|e| t.bar_vec(e)).collect();
    for k in 0..pairs {
        let a = db.h[2 * k].add(&db.h[2 * k + 1].scaled(&Scalar::i()));
        iso.push(t.bar_vec(&a));
    }
    for x in &iso {
        for y in &iso {
            if !t.cocycle_alpha_d(x, y)?.is_zero() {
                return Err(Error::Algebra("annihilating subspace is not isotropic".into()));
            }
        }
    }

    let bar_ops: Vec<Linear> = (0..t.base_dim())
        .map(|i| bar_linear(t, &db, &vars, &c, eta.as_ref(), pairs, leftover, &SparseVector::unit(i)))
        .collect();
    let prefactor = (&Scalar::from_int(2) * &c).inv().expect("c is non-zero");
    let lift_ops = build_lift_ops(t.base(), &db, &bar_ops, &prefactor);
    Ok(FockModule {
        takiff: t.clone(),
        rd: rd.clone(),
        c,
        eta,
        db,
        poly_roots,
        grass_roots,
        pairs,
        leftover,
        bar_ops,
        lift_ops,
        prefactor,
    })
}

impl SuperModule for FockModule {
    type Index = FockBasisIndex;

    fn algebra(&self) -> &SuperAlgebra {
        self.takiff.total()
    }

    fn act_basis(&self, k: usize, v: &FockBasisIndex) -> ModVec<FockBasisIndex> {
        let t = &self.takiff;
        let mut out = ModVec::new();
        if k == t.z() {
            out.add_term(v.clone(), &self.c);
            return out;
        }
        let i = t.base_index(k).expect("basis index in range");
        if t.is_bar(k) {
            for (op, c) in &self.bar_ops[i] {
                if let Some((s, j)) = self.apply_op(*op, v) {
                    out.add_term(j, &(c * &s));
                }
            }
        } else {
            for (o1, o2, c) in &self.lift_ops[i] {
                let Some((s2, j2)) = self.apply_op(*o2, v) else { continue };
                let Some((s1, j1)) = self.apply_op(*o1, &j2) else { continue };
                out.add_term(j1, &(&(c * &s2) * &s1));
            }
        }
        out
    }

    fn degree(&self, v: &FockBasisIndex) -> usize {
        v.degree()
    }

    fn parity(&self, v: &FockBasisIndex) -> Parity {
        v.parity()
    }

    fn basis_up_to(&self, deg: usize) -> Vec<FockBasisIndex> {
        let np = self.poly_roots.len();
        let ng = self.grass_roots.len();
        let nc = self.clifford_letters();
        let mut polys: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..np {
            let mut next = Vec::new();
            for p in &polys {
                let used: u32 = p.iter().sum();
                for e in 0..=(deg as u32 - used.min(deg as u32)) {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
            polys = next;
        }
        let mut out = Vec::new();
        for p in &polys {
            let used: usize = p.iter().map(|&e| e as usize).sum();
            for g in 0..(1u64 << ng) {
                let ug = used + g.count_ones() as usize;
                if ug > deg {
                    continue;
                }
                for cl in 0..(1u64 << nc) {
                    if ug + cl.count_ones() as usize <= deg {
                        out.push(FockBasisIndex { poly: p.clone(), grass: g, cliff: cl });
                    }
                }
            }
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        out
    }
}

/// `2^⌊(ℓ+1)/2⌋` at non-zero level, 1 otherwise.
pub fn clifford_module_dim(ell: usize, level_nonzero: bool) -> usize {
    if level_nonzero {
        1 << ell.div_ceil(2)
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::build_gl;
    use crate::takiff::build_takiff;

    fn fock(m: usize, n: usize, c: Scalar) -> FockModule {
        let (s, rd) = build_gl(m, n).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        build_fock(&t, &rd, c, None).unwrap()
    }

    #[test]
    fn zero_level_rejected() {
        let (s, rd) = build_gl(1, 1).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        assert!(build_fock(&t, &rd, Scalar::zero(), None).is_err());
    }

    #[test]
    fn creation_then_annihilation_gl11() {
        let f = fock(1, 1, Scalar::one());
        let s = f.takiff().base();
        let e12 = s.index_of("E_12").unwrap();
        let e21 = s.index_of("E_21").unwrap();
        let t = f.takiff();
        let v = f.act(t.bar(e21), &f.vacuum_vec());
        assert_eq!(v.len(), 1);
        assert_eq!(v.iter().next().unwrap().0.degree(), 1);
        // [Ē_α, F̄_α] = (−1)^{p(E_α)} c, and Ē_α kills the vacuum
        let back = f.act(t.bar(e12), &v);
        assert_eq!(back, f.vacuum_vec().scaled(&Scalar::from_int(-1)));
    }

    #[test]
    fn clifford_dimensions() {
        assert_eq!(clifford_module_dim(2, true), 2);
        assert_eq!(clifford_module_dim(3, true), 4);
        assert_eq!(clifford_module_dim(5, false), 1);
        let f = fock(2, 1, Scalar::one());
        assert_eq!(1 << f.clifford_letters(), clifford_module_dim(3, true));
    }

    #[test]
    fn basis_enumeration_counts() {
        // gl(1|1): one poly variable, no grass, one Clifford letter
        let f = fock(1, 1, Scalar::one());
        assert_eq!(f.basis_up_to(0).len(), 1);
        assert_eq!(f.basis_up_to(1).len(), 3);
        assert_eq!(f.basis_up_to(2).len(), 5);
    }
}
