use serde::{Deserialize, Serialize};

use super::{Parity, SuperAlgebra};
use crate::error::{contract, Error, Result};
use crate::exactlin::{solve, Scalar, SparseMatrix, SparseVector};

/// A covector on the Cartan basis together with its value on `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub values: Vec<Scalar>,
    pub level: Scalar,
}

impl Weight {
    pub fn new(values: Vec<Scalar>, level: Scalar) -> Self {
        Weight { values, level }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { values: vec![Scalar::zero(); rank], level: Scalar::zero() }
    }

    pub fn with_level(mut self, level: Scalar) -> Self {
        self.level = level;
        self
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            level: &self.level + &other.level,
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
            level: &self.level - &other.level,
        }
    }

    /// `self + k·covector`, level untouched.
    pub fn shifted(&self, covector: &[Scalar], k: &Scalar) -> Weight {
        Weight {
            values: self.values.iter().zip(covector).map(|(a, b)| a + &(b * k)).collect(),
            level: self.level.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub values: Vec<Scalar>,
    pub space: Vec<usize>,
    pub parity: Parity,
    pub positive: bool,
    pub simple: bool,
}

impl Root {
    /// The (first) basis vector spanning the root space.
    pub fn vector(&self) -> usize {
        self.space[0]
    }
}

/// Cartan subalgebra, roots and a choice of positive system.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan: Vec<usize>,
    roots: Vec<Root>,
    gram_inv: Option<Vec<Vec<Scalar>>>,
}

impl RootDatum {
    /// Validates `[h, x] = α(h)x` on every root space and records the dual form on `𝔥*`.
    pub fn new(alg: &SuperAlgebra, cartan: Vec<usize>, roots: Vec<Root>) -> Result<Self> {
        for r in &roots {
            if r.values.len() != cartan.len() {
                return contract("root covector length differs from Cartan rank");
            }
            for &x in &r.space {
                if alg.parity(x) != r.parity {
                    return Err(Error::Algebra(format!("root vector {} has the wrong parity", alg.label(x))));
                }
                for (k, &h) in cartan.iter().enumerate() {
                    let lhs = alg.bracket_basis(h, x);
                    let rhs = SparseVector::single(x, r.values[k].clone());
                    if *lhs != rhs {
                        return Err(Error::Algebra(format!(
                            "[{}, {}] is not {} times the root vector",
                            alg.label(h),
                            alg.label(x),
                            r.values[k]
                        )));
                    }
                }
            }
        }
        let spanned = cartan.len() + roots.iter().map(|r| r.space.len()).sum::<usize>();
        if spanned != alg.dim() {
            return Err(Error::Algebra(format!("Cartan and root spaces span {spanned} of {} dimensions", alg.dim())));
        }
        for r in roots.iter().filter(|r| r.positive) {
            let neg: Vec<Scalar> = r.values.iter().map(|v| -v).collect();
            if !roots.iter().any(|s| !s.positive && s.values == neg) {
                return Err(Error::Algebra("positive root without matching negative".into()));
            }
        }
        let gram_inv = cartan_gram_inverse(alg, &cartan);
        Ok(RootDatum { cartan, roots, gram_inv })
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    /// Dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn negative_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots.iter().filter(|r| !r.positive)
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots.iter().filter(|r| r.simple)
    }

    pub fn odd_simple_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.simple_roots().filter(|r| r.parity.is_odd())
    }

    pub fn find(&self, values: &[Scalar]) -> Option<&Root> {
        self.roots.iter().find(|r| r.values == values)
    }

    pub fn negative_of(&self, r: &Root) -> Option<&Root> {
        let neg: Vec<Scalar> = r.values.iter().map(|v| -v).collect();
        self.find(&neg)
    }

    pub fn root_of_vector(&self, x: usize) -> Option<&Root> {
        self.roots.iter().find(|r| r.space.contains(&x))
    }

    /// `(λ|μ)` via the inverse Gram matrix of the form on the Cartan.
    pub fn pair(&self, lam: &[Scalar], mu: &[Scalar]) -> Result<Scalar> {
        let g = self
            .gram_inv
            .as_ref()
            .ok_or_else(|| Error::Algebra("form is degenerate on the Cartan subalgebra".into()))?;
        let mut acc = Scalar::zero();
        for (i, a) in lam.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in mu.iter().enumerate() {
                acc += &(&(a * b) * &g[i][j]);
            }
        }
        Ok(acc)
    }

    /// Coefficients of a covector in the simple-root basis.
    pub fn simple_coords(&self, values: &[Scalar]) -> Option<Vec<Scalar>> {
        let simples: Vec<&Root> = self.simple_roots().collect();
        let cols: Vec<SparseVector> = simples.iter().map(|r| SparseVector::from_dense(&r.values)).collect();
        let m = SparseMatrix::from_columns(self.rank(), &cols).ok()?;
        let x = solve(&m, &SparseVector::from_dense(values)).ok()??;
        Some(x.to_dense(simples.len()))
    }

    /// Integer simple-root coordinates, when they exist.
    pub fn simple_coords_int(&self, values: &[Scalar]) -> Option<Vec<i64>> {
        self.simple_coords(values)?.iter().map(|c| c.to_i64()).collect()
    }

    pub fn simple_count(&self) -> usize {
        self.simple_roots().count()
    }
}

fn cartan_gram_inverse(alg: &SuperAlgebra, cartan: &[usize]) -> Option<Vec<Vec<Scalar>>> {
    alg.form()?;
    let n = cartan.len();
    let rows: Vec<Vec<Scalar>> = cartan
        .iter()
        .map(|&a| cartan.iter().map(|&b| alg.form_basis(a, b)).collect())
        .collect();
    let g = SparseMatrix::from_dense(&rows);
    let mut inv = vec![vec![Scalar::zero(); n]; n];
    for j in 0..n {
        let col = solve(&g, &SparseVector::unit(j)).ok()??;
        for (i, row) in inv.iter_mut().enumerate() {
            row[j] = col.get(i);
        }
    }
    Some(inv)
}

/// `ρ = ½(Σ even positive roots − Σ odd positive roots)`, at level zero.
pub fn weyl_vector(rd: &RootDatum) -> Weight {
    let mut values = vec![Scalar::zero(); rd.rank()];
    let half = Scalar::from_ratio(1, 2);
    for r in rd.positive_roots() {
        let c = if r.parity.is_odd() { -half.clone() } else { half.clone() };
        for (acc, v) in values.iter_mut().zip(&r.values) {
            *acc += &(v * &c);
        }
    }
    Weight::new(values, Scalar::zero())
}
