use rayon::prelude::*;

use super::{Grading, SuperAlgebra};
use crate::exactlin::{rank, Scalar, SparseVector};
use crate::report::{Report, Tally};

/// Exact check of every structural axiom on all basis pairs and triples.
pub fn verify_algebra(a: &SuperAlgebra) -> Report {
    let mut report = Report::new("algebra");
    let n = a.dim();
    let p = |i: usize| a.parity(i);

    let mut anti = Tally::default();
    let mut grading = Tally::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = a.bracket_basis(i, j);
            let rhs = a.bracket_basis(j, i).scaled(&-Scalar::sign(p(i).koszul(p(j))));
            anti.case(*lhs == rhs, || format!("[{}, {}]", a.label(i), a.label(j)));
            let want = p(i) + p(j);
            grading.case(lhs.indices().all(|k| p(k) == want), || format!("[{}, {}] = {}", a.label(i), a.label(j), a.show(lhs)));
        }
    }
    anti.into_report(&mut report, "super-anticommutativity");
    grading.into_report(&mut report, "parity grading");

    // [x,[y,w]] = [[x,y],w] + (−1)^{p(x)p(y)} [y,[x,w]]
    let jacobi = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            for j in 0..n {
                let xy = a.bracket_basis(i, j);
                let s = Scalar::sign(p(i).koszul(p(j)));
                for k in 0..n {
                    let lhs = a.bracket_left(i, a.bracket_basis(j, k));
                    let mut rhs = SparseVector::new();
                    for (m, c) in xy.iter() {
                        rhs.axpy(c, a.bracket_basis(m, k));
                    }
                    rhs.axpy(&s, &a.bracket_left(j, a.bracket_basis(i, k)));
                    t.case(lhs == rhs, || format!("({}, {}, {})", a.label(i), a.label(j), a.label(k)));
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    jacobi.into_report(&mut report, "super Jacobi");

    if a.form().is_some() {
        let mut even = Tally::default();
        let mut sym = Tally::default();
        for i in 0..n {
            for j in 0..n {
                let f = a.form_basis(i, j);
                even.case(p(i) == p(j) || f.is_zero(), || format!("({}|{})", a.label(i), a.label(j)));
                let g = &a.form_basis(j, i) * &Scalar::sign(p(i).koszul(p(j)));
                sym.case(f == g, || format!("({}|{})", a.label(i), a.label(j)));
            }
        }
        even.into_report(&mut report, "form even");
        sym.into_report(&mut report, "form supersymmetric");

        let inv = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut t = Tally::default();
                for j in 0..n {
                    let xy = a.bracket_basis(i, j);
                    for k in 0..n {
                        let lhs = a.form_value(xy, &SparseVector::unit(k));
                        let rhs = a.form_value(&SparseVector::unit(i), a.bracket_basis(j, k));
                        t.case(lhs == rhs, || format!("([{}, {}]|{})", a.label(i), a.label(j), a.label(k)));
                    }
                }
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge);
        inv.into_report(&mut report, "form invariant");

        let r = a.form().map_or(0, rank);
        report.record(
            "form non-degenerate",
            r == n,
            format!("rank {r} of {n}"),
            (r != n).then(|| format!("form rank {r}")),
        );
    }
    report
}

/// Checks `[h, x] = d·x` on the eigenbasis and `[𝔤(i), 𝔤(j)] ⊆ 𝔤(i+j)`.
pub fn verify_grading(a: &SuperAlgebra, g: &Grading) -> Report {
    let mut report = Report::new("grading");
    let mut eig = Tally::default();
    for (v, d) in g.eigenvectors.iter().zip(&g.degrees) {
        let hv = a.bracket(&g.h, v);
        eig.case(hv == v.scaled(&Scalar::from_int(*d)), || a.show(v));
    }
    eig.into_report(&mut report, "eigenvectors");
    let mut add = Tally::default();
    for (u, du) in g.eigenvectors.iter().zip(&g.degrees) {
        for (v, dv) in g.eigenvectors.iter().zip(&g.degrees) {
            let w = a.bracket(u, v);
            let hw = a.bracket(&g.h, &w);
            add.case(hw == w.scaled(&Scalar::from_int(du + dv)), || format!("[{}, {}]", a.show(u), a.show(v)));
        }
    }
    add.into_report(&mut report, "additive degrees");
    report
}

#[cfg(test)]
mod tests {
    use super::super::build_gl;
    use super::*;

    #[test]
    fn gl11_passes() {
        let (g, _) = build_gl(1, 1).unwrap();
        let r = verify_algebra(&g);
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn tampered_gl11_fails() {
        let (mut g, _) = build_gl(1, 1).unwrap();
        let e12 = g.index_of("E_12").unwrap();
        let e21 = g.index_of("E_21").unwrap();
        g.set_bracket(e12, e21, SparseVector::new());
        let r = verify_algebra(&g);
        assert!(!r.pass);
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.iter().any(|n| *n == "super Jacobi" || *n == "form invariant"), "{failed:?}");
    }
}
