#![allow(dead_code)]

use proptest::prelude::*;
use stl_core::exactlin::Scalar;

/// Gaussian rationals with small numerators and denominators.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::i())
    })
}

/// Mostly-zero entries, so that kernels are non-trivial.
pub fn sparse_entry() -> impl Strategy<Value = Scalar> {
    prop_oneof![3 => Just(Scalar::zero()), 1 => scalar()]
}

/// Dense Gauss–Jordan rank, written independently of the library eliminator.
pub fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].inv().unwrap();
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = &a[i][col] * &inv;
                for j in 0..ncols {
                    let t = &f * &a[r][j];
                    a[i][j] -= &t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Leibniz expansion.
pub fn leibniz_det(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Scalar::zero();
    permute(&mut perm, 0, a, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, a: &[Vec<Scalar>], total: &mut Scalar) {
    if k == p.len() {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = Scalar::sign(inversions % 2 == 1);
        for (i, &j) in p.iter().enumerate() {
            term = &term * &a[i][j];
        }
        *total += &term;
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, a, total);
        p.swap(k, i);
    }
}

/// Number of ways to write `target` as a sum of `parts` with multiplicity
/// (at most once when the flag is set, freely otherwise).
pub fn partition_count(target: &[i64], parts: &[(Vec<i64>, bool)]) -> i64 {
    fn go(t: &[i64], parts: &[(Vec<i64>, bool)], i: usize) -> i64 {
        if t.iter().any(|&x| x < 0) {
            return 0;
        }
        if i == parts.len() {
            return i64::from(t.iter().all(|&x| x == 0));
        }
        let (p, once) = &parts[i];
        let mut acc = 0;
        let mut cur = t.to_vec();
        let mut k = 0;
        loop {
            acc += go(&cur, parts, i + 1);
            k += 1;
            if (*once && k > 1) || p.iter().all(|&x| x == 0) {
                break;
            }
            for (c, x) in cur.iter_mut().zip(p) {
                *c -= x;
            }
            if cur.iter().any(|&x| x < 0) {
                break;
            }
        }
        acc
    }
    go(target, parts, 0)
}
