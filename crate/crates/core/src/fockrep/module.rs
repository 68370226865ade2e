use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::exactlin::{Scalar, SparseVector};
use crate::superalg::{Parity, SuperAlgebra};

/// Finite linear combination of module basis indices. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ModVec<I: Ord> {
    terms: BTreeMap<I, Scalar>,
}

impl<I: Ord + Clone> Default for ModVec<I> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: Ord + Clone> ModVec<I> {
    pub fn new() -> Self {
        ModVec { terms: BTreeMap::new() }
    }

    pub fn basis(i: I) -> Self {
        Self::single(i, Scalar::one())
    }

    pub fn single(i: I, c: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(i, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, i: &I) -> Scalar {
        self.terms.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&I, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, i: I, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    pub fn axpy(&mut self, c: &Scalar, other: &ModVec<I>) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i.clone(), &(c * x));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut v = Self::new();
        v.axpy(c, self);
        v
    }

    pub fn sub(&self, other: &ModVec<I>) -> Self {
        let mut v = self.clone();
        v.axpy(&Scalar::from_int(-1), other);
        v
    }

    /// `c` with `self = c·other`, if the two are proportional.
    pub fn ratio_to(&self, other: &ModVec<I>) -> Option<Scalar> {
        let (i, x) = other.terms.iter().next()?;
        let c = &self.get(i) / x;
        (self.sub(&other.scaled(&c)).is_zero()).then_some(c)
    }
}

impl<I: Ord + Debug> Debug for ModVec<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// A module over a Lie superalgebra with a graded basis and exact action.
pub trait SuperModule: Sync {
    type Index: Ord + Clone + Debug + Send + Sync;

    /// The algebra acting.
    fn algebra(&self) -> &SuperAlgebra;

    /// `b_k · v` for a basis vector `v`.
    fn act_basis(&self, k: usize, v: &Self::Index) -> ModVec<Self::Index>;

    fn degree(&self, v: &Self::Index) -> usize;

    fn parity(&self, v: &Self::Index) -> Parity;

    /// All basis indices of degree at most `deg`, in a deterministic order.
    fn basis_up_to(&self, deg: usize) -> Vec<Self::Index>;

    fn act(&self, k: usize, v: &ModVec<Self::Index>) -> ModVec<Self::Index> {
        let mut out = ModVec::new();
        for (i, c) in v.iter() {
            out.axpy(c, &self.act_basis(k, i));
        }
        out
    }

    fn act_element(&self, x: &SparseVector, v: &ModVec<Self::Index>) -> ModVec<Self::Index> {
        let mut out = ModVec::new();
        for (k, c) in x.iter() {
            out.axpy(c, &self.act(k, v));
        }
        out
    }

    fn vec_parity(&self, v: &ModVec<Self::Index>) -> Option<Parity> {
        let mut it = v.iter().map(|(i, _)| self.parity(i));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}
