//! Truncated formal characters and the character identities of the Fock space.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::fockrep::{build_fock, clifford_module_dim, FockModule, SuperModule};
use crate::report::Report;
use crate::superalg::{weyl_vector, RootDatum, SuperAlgebra, Weight};
use crate::takiff::build_takiff;

/// `Σ mult · e^{anchor − Σ offset_k α_k}` over offsets of height at most `truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    anchor: Weight,
    truncation: usize,
    simple: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    offset: Vec<i64>,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    anchor: Weight,
    truncation: usize,
    terms: Vec<TermJson>,
}

fn height(off: &[i64]) -> i64 {
    off.iter().sum()
}

impl FormalCharacter {
    /// The zero character.
    pub fn zero(anchor: Weight, simple: usize, truncation: usize) -> Self {
        FormalCharacter { anchor, truncation, simple, terms: BTreeMap::new() }
    }

    /// `e^{anchor}`.
    pub fn unit(anchor: Weight, simple: usize, truncation: usize) -> Self {
        let mut ch = Self::zero(anchor, simple, truncation);
        ch.add_term(vec![0; simple], 1);
        ch
    }

    /// `1 + e^{−α}` (odd variable) or `Σ_k e^{−kα}` (even variable) for a positive root
    /// with simple coordinates `coords`.
    pub fn one_variable(rank: usize, coords: &[i64], even: bool, truncation: usize) -> Self {
        let mut ch = Self::unit(Weight::zero(rank), coords.len(), truncation);
        let h = height(coords);
        let top = if even { truncation as i64 / h.max(1) } else { 1 };
        for k in 1..=top {
            ch.add_term(coords.iter().map(|c| k * c).collect(), 1);
        }
        ch
    }

    pub fn anchor(&self) -> &Weight {
        &self.anchor
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn simple_count(&self) -> usize {
        self.simple
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `mult` at `offset`; offsets beyond the truncation are dropped.
    pub fn add_term(&mut self, offset: Vec<i64>, mult: i64) {
        assert_eq!(offset.len(), self.simple, "offset length");
        let h = height(&offset);
        if mult == 0 || h < 0 || h as usize > self.truncation {
            return;
        }
        let e = self.terms.entry(offset.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&offset);
        }
    }

    pub fn coefficient(&self, offset: &[i64]) -> i64 {
        self.terms.get(offset).copied().unwrap_or(0)
    }

    /// Multiplicity of an absolute weight, 0 outside the support window.
    pub fn coefficient_at(&self, rd: &RootDatum, mu: &Weight) -> i64 {
        if mu.level != self.anchor.level {
            return 0;
        }
        let diff = self.anchor.sub(mu);
        match rd.simple_coords_int(&diff.values) {
            Some(off) => self.coefficient(&off),
            None => 0,
        }
    }

    pub fn weight_of(&self, rd: &RootDatum, offset: &[i64]) -> Weight {
        let mut w = self.anchor.clone();
        for (r, &k) in rd.simple_roots().zip(offset) {
            if k != 0 {
                w = w.shifted(&r.values, &Scalar::from_int(-k));
            }
        }
        w
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut ch = Self::zero(self.anchor.clone(), self.simple, self.truncation);
        for (o, m) in &self.terms {
            ch.add_term(o.clone(), k * m);
        }
        ch
    }

    /// Same character with a smaller truncation.
    pub fn truncated(&self, truncation: usize) -> Self {
        let mut ch = Self::zero(self.anchor.clone(), self.simple, truncation.min(self.truncation));
        for (o, m) in &self.terms {
            ch.add_term(o.clone(), *m);
        }
        ch
    }

    pub fn to_json(&self) -> String {
        let j = CharacterJson {
            anchor: self.anchor.clone(),
            truncation: self.truncation,
            terms: self.terms.iter().map(|(o, m)| TermJson { offset: o.clone(), mult: *m }).collect(),
        };
        serde_json::to_string_pretty(&j).expect("character serializes")
    }

    pub fn from_json(text: &str, simple: usize) -> Result<Self> {
        let j: CharacterJson = serde_json::from_str(text)?;
        let mut ch = Self::zero(j.anchor, simple, j.truncation);
        for t in j.terms {
            if t.offset.len() != simple {
                return Err(Error::Parse(format!("offset {:?} should have {simple} entries", t.offset)));
            }
            if t.offset.iter().any(|&x| x < 0) {
                return Err(Error::Parse(format!("offset {:?} has a negative entry", t.offset)));
            }
            ch.add_term(t.offset, t.mult);
        }
        Ok(ch)
    }

    /// Tab-separated table: height, offset, weight, multiplicity.
    pub fn to_tsv(&self, rd: &RootDatum) -> String {
        let mut out = String::from("height\toffset\tweight\tmult\n");
        let mut rows: Vec<(&Vec<i64>, &i64)> = self.terms.iter().collect();
        rows.sort_by_key(|(o, _)| (height(o), (*o).clone()));
        for (o, m) in rows {
            let w = self.weight_of(rd, o);
            let ws: Vec<String> = w.values.iter().map(|s| s.to_string()).collect();
            let os: Vec<String> = o.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}\t{}\t({})\t{m}", height(o), os.join(","), ws.join(", "));
        }
        out
    }
}

/// Convolution truncated to the smaller truncation; anchors add.
pub fn char_product(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    if a.simple != b.simple || a.anchor.values.len() != b.anchor.values.len() {
        return Err(Error::Contract("characters live on different Cartan subalgebras".into()));
    }
    let mut out = FormalCharacter::zero(a.anchor.add(&b.anchor), a.simple, a.truncation.min(b.truncation));
    for (oa, ma) in &a.terms {
        for (ob, mb) in &b.terms {
            let o: Vec<i64> = oa.iter().zip(ob).map(|(x, y)| x + y).collect();
            out.add_term(o, ma * mb);
        }
    }
    Ok(out)
}

fn positive_coords(rd: &RootDatum) -> Vec<(Vec<i64>, bool)> {
    rd.positive_roots()
        .map(|r| (rd.simple_coords_int(&r.values).expect("positive roots are integral"), !r.parity.is_odd()))
        .collect()
}

fn product_of(rd: &RootDatum, base: FormalCharacter, factors: impl IntoIterator<Item = (Vec<i64>, bool)>) -> FormalCharacter {
    let t = base.truncation;
    factors.into_iter().fold(base, |acc, (co, even)| {
        char_product(&acc, &FormalCharacter::one_variable(rd.rank(), &co, even, t)).expect("same Cartan")
    })
}

/// Which Verma module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VermaKind {
    /// Over the Takiff extension: `dim W_λ · e^λ Π_{α>0} (1+e^{−α})/(1−e^{−α})`.
    Hatted,
    /// Over the base algebra: `e^λ Π_{even} 1/(1−e^{−α}) Π_{odd} (1+e^{−β})`.
    Base,
}

pub fn verma_character(rd: &RootDatum, lam: &Weight, trunc: usize, kind: VermaKind) -> Result<FormalCharacter> {
    let r = rd.simple_count();
    match kind {
        VermaKind::Hatted => {
            if lam.level.is_zero() {
                return Err(Error::Contract("the hatted Verma character needs a non-zero level".into()));
            }
            let dim_w = clifford_module_dim(rd.rank(), true) as i64;
            let mut factors = Vec::new();
            for (co, _) in positive_coords(rd) {
                factors.push((co.clone(), false));
                factors.push((co, true));
            }
            Ok(product_of(rd, FormalCharacter::unit(lam.clone(), r, trunc), factors).scaled(dim_w))
        }
        VermaKind::Base => Ok(product_of(rd, FormalCharacter::unit(lam.clone(), r, trunc), positive_coords(rd))),
    }
}

/// `2^⌊(ℓ+1)/2⌋ e^{ρ_c} Π_{even} (1+e^{−α}) / Π_{odd} (1−e^{−β})`.
pub fn fock_character_formula(rd: &RootDatum, c: &Scalar, trunc: usize) -> FormalCharacter {
    let rho_c = weyl_vector(rd).with_level(c.clone());
    let factors = positive_coords(rd).into_iter().map(|(co, even)| (co, !even));
    let dim = clifford_module_dim(rd.rank(), !c.is_zero()) as i64;
    product_of(rd, FormalCharacter::unit(rho_c, rd.simple_count(), trunc), factors).scaled(dim)
}

/// Census of monomial basis vectors by weight, up to height `trunc` below `ρ_c`.
pub fn fock_character(f: &FockModule, trunc: usize) -> Result<FormalCharacter> {
    if f.eta().is_some_and(|e| !e.is_zero()) {
        return Err(Error::Contract("twisted Fock spaces are not weight modules".into()));
    }
    let rd = f.root_datum();
    let anchor = weyl_vector(rd).with_level(f.level().clone());
    let mut ch = FormalCharacter::zero(anchor, rd.simple_count(), trunc);
    // every variable has height at least 1; Clifford letters have height 0
    for idx in f.basis_up_to(trunc + f.clifford_letters()) {
        let off = f.offset(&idx);
        if height(&off) as usize <= trunc {
            ch.add_term(off, 1);
        }
    }
    Ok(ch)
}

/// First weight (by height, then offset) where the two characters differ,
/// within the smaller truncation.
pub fn first_mismatch(rd: &RootDatum, a: &FormalCharacter, b: &FormalCharacter) -> Option<(Weight, i64, i64)> {
    let t = a.truncation.min(b.truncation);
    let mut cands: Vec<(i64, Weight)> = Vec::new();
    for ch in [a, b] {
        for o in ch.terms.keys() {
            if height(o) as usize <= t {
                cands.push((height(o), ch.weight_of(rd, o)));
            }
        }
    }
    cands.sort();
    cands.dedup();
    cands.into_iter().find_map(|(_, w)| {
        let (x, y) = (a.coefficient_at(rd, &w), b.coefficient_at(rd, &w));
        (x != y).then_some((w, x, y))
    })
}

fn compare_into(report: &mut Report, name: &str, rd: &RootDatum, a: &FormalCharacter, b: &FormalCharacter) {
    let t = a.truncation.min(b.truncation);
    let n = a.terms.len().max(b.terms.len());
    match first_mismatch(rd, a, b) {
        None => report.record(name, true, format!("{n} weights agree to height {t}"), None),
        Some((w, x, y)) => {
            let ws: Vec<String> = w.values.iter().map(|s| s.to_string()).collect();
            report.record(name, false, format!("first mismatch at height <= {t}"), Some(format!("weight ({}): {x} vs {y}", ws.join(", "))));
        }
    }
}

fn factorization(s: &SuperAlgebra, rd: &RootDatum, lam: &Weight, trunc: usize, rho_shift: bool) -> Result<Report> {
    if lam.level.is_zero() {
        return Err(Error::Contract("factorization needs a non-zero level".into()));
    }
    let mut report = Report::new("factorization");
    let (t, _) = build_takiff(s, rd)?;
    let f = build_fock(&t, rd, lam.level.clone(), None)?;
    let fock = fock_character(&f, trunc)?;
    let mut mu = lam.clone().with_level(Scalar::zero());
    if rho_shift {
        mu = mu.sub(&weyl_vector(rd));
    }
    let base = verma_character(rd, &mu, trunc, VermaKind::Base)?;
    let lhs = verma_character(rd, lam, trunc, VermaKind::Hatted)?;
    let rhs = char_product(&fock, &base)?;
    compare_into(&mut report, "fock census", rd, &fock, &fock_character_formula(rd, &lam.level, trunc));
    compare_into(&mut report, "verma = fock * base verma", rd, &lhs, &rhs);
    Ok(report)
}

/// `ch M(λ) = ch 𝔉_c · ch M_𝔰(λ|_𝔥 − ρ)` coefficientwise up to height `trunc`.
pub fn verify_factorization(s: &SuperAlgebra, rd: &RootDatum, lam: &Weight, trunc: usize) -> Result<Report> {
    factorization(s, rd, lam, trunc, true)
}

/// The same comparison without the `−ρ` shift; must fail.
pub fn verify_factorization_unshifted(s: &SuperAlgebra, rd: &RootDatum, lam: &Weight, trunc: usize) -> Result<Report> {
    factorization(s, rd, lam, trunc, false)
}

/// Evaluates `2^⌊(ℓ+1)/2⌋ e^{ρ_c} Π_{even}(1+e^{−α}) / Π_{odd}(1−e^{−β}) · ch L_𝔰`
/// and compares with `ch_l` when given.
pub fn verify_ch7(
    rd: &RootDatum,
    ch_ls: &FormalCharacter,
    lam: &Weight,
    trunc: usize,
    ch_l: Option<&FormalCharacter>,
) -> Result<(FormalCharacter, Report)> {
    if lam.level.is_zero() {
        return Err(Error::Contract("the character formula needs a non-zero level".into()));
    }
    let mut report = Report::new("ch7");
    let expected = lam.clone().with_level(Scalar::zero()).sub(&weyl_vector(rd));
    let anchored = ch_ls.is_zero() || ch_ls.anchor == expected;
    report.record("anchor", anchored, "ch L_s is anchored at lambda - rho", None);
    let rhs = char_product(&fock_character_formula(rd, &lam.level, trunc), ch_ls)?;
    if let Some(l) = ch_l {
        compare_into(&mut report, "ch L = rhs", rd, l, &rhs);
    }
    Ok((rhs, report))
}
