mod common;

use common::partition_count;
use proptest::prelude::*;
use stl_core::charfun::{
    char_product, fock_character, fock_character_formula, verify_factorization, verma_character, FormalCharacter,
    VermaKind,
};
use stl_core::exactlin::Scalar;
use stl_core::fockrep::{build_fock, clifford_module_dim, verify_highest_weight, verify_lift_identities, SuperModule};
use stl_core::superalg::{build_gl, weyl_vector, RootDatum, Weight};
use stl_core::takiff::build_takiff;

fn positive(rd: &RootDatum) -> Vec<(Vec<i64>, bool)> {
    rd.positive_roots().map(|r| (rd.simple_coords_int(&r.values).unwrap(), !r.parity.is_odd())).collect()
}

/// All offsets of height at most `h` in `k` simple coordinates.
fn offsets(k: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|o: Vec<i64>| {
                let used: i64 = o.iter().sum();
                (0..=h - used).map(move |x| {
                    let mut n = o.clone();
                    n.push(x);
                    n
                })
            })
            .collect();
    }
    out
}

#[test]
fn clifford_dimension() {
    for ell in 0..=6 {
        assert_eq!(clifford_module_dim(ell, true), 1 << ell.div_ceil(2));
        assert_eq!(clifford_module_dim(ell, false), 1);
    }
    for (m, n) in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
        let (s, rd) = build_gl(m, n).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        let f = build_fock(&t, &rd, Scalar::one(), None).unwrap();
        let letters = f.clifford_letters();
        let pure = f.basis_up_to(letters).into_iter().filter(|b| b.poly.iter().all(|&e| e == 0) && b.grass == 0).count();
        assert_eq!(pure, clifford_module_dim(m + n, true), "gl({m}|{n})");
    }
}

#[test]
fn fock_census_against_partitions() {
    for (m, n, h) in [(1, 1, 6), (2, 1, 4), (1, 2, 3)] {
        let (s, rd) = build_gl(m, n).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        let f = build_fock(&t, &rd, Scalar::one(), None).unwrap();
        let census = fock_character(&f, h as usize).unwrap();
        let formula = fock_character_formula(&rd, &Scalar::one(), h as usize);
        // even roots at most once, odd roots freely
        let parts = positive(&rd);
        let dim = clifford_module_dim(m + n, true) as i64;
        for o in offsets(rd.simple_count(), h) {
            let want = dim * partition_count(&o, &parts);
            assert_eq!(census.coefficient(&o), want, "gl({m}|{n}) at {o:?}");
            assert_eq!(formula.coefficient(&o), want);
        }
    }
}

#[test]
fn verma_characters_against_partitions() {
    let (_, rd) = build_gl(2, 1).unwrap();
    let lam = weyl_vector(&rd).with_level(Scalar::from_int(2));
    let hatted = verma_character(&rd, &lam, 4, VermaKind::Hatted).unwrap();
    let base = verma_character(&rd, &lam.clone().with_level(Scalar::zero()), 4, VermaKind::Base).unwrap();
    let pos = positive(&rd);
    let hatted_parts: Vec<(Vec<i64>, bool)> = pos.iter().flat_map(|(c, _)| [(c.clone(), true), (c.clone(), false)]).collect();
    let base_parts: Vec<(Vec<i64>, bool)> = pos.iter().map(|(c, even)| (c.clone(), !even)).collect();
    let dim = clifford_module_dim(3, true) as i64;
    for o in offsets(2, 4) {
        assert_eq!(hatted.coefficient(&o), dim * partition_count(&o, &hatted_parts));
        assert_eq!(base.coefficient(&o), partition_count(&o, &base_parts));
    }
}

#[test]
fn factorization_and_canary() {
    use stl_core::charfun::verify_factorization_unshifted;
    for (m, n, h) in [(1, 1, 6), (2, 1, 4)] {
        let (s, rd) = build_gl(m, n).unwrap();
        for c in [Scalar::one(), Scalar::from_ratio(-1, 2)] {
            let lam = weyl_vector(&rd).with_level(c);
            assert!(verify_factorization(&s, &rd, &lam, h).unwrap().pass);
            let bad = verify_factorization_unshifted(&s, &rd, &lam, h).unwrap();
            assert!(!bad.pass);
        }
    }
}

#[test]
fn highest_weight_and_lift() {
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        let (s, rd) = build_gl(m, n).unwrap();
        let (t, _) = build_takiff(&s, &rd).unwrap();
        let f = build_fock(&t, &rd, Scalar::from_int(2), None).unwrap();
        assert!(verify_highest_weight(&f).unwrap().pass, "gl({m}|{n})");
        assert!(verify_lift_identities(&f, 1).pass);
    }
}

#[test]
fn zero_level_rejected() {
    let (s, rd) = build_gl(1, 1).unwrap();
    let (t, _) = build_takiff(&s, &rd).unwrap();
    assert!(build_fock(&t, &rd, Scalar::zero(), None).is_err());
    let lam = Weight::zero(2);
    assert!(verma_character(&rd, &lam, 2, VermaKind::Hatted).is_err());
}

fn character(k: usize) -> impl Strategy<Value = FormalCharacter> {
    proptest::collection::vec((proptest::collection::vec(0i64..3, k), -3i64..=3), 0..6).prop_map(move |terms| {
        let mut ch = FormalCharacter::zero(Weight::zero(3), k, 4);
        for (o, m) in terms {
            ch.add_term(o, m);
        }
        ch
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_commutative_and_associative(a in character(2), b in character(2), c in character(2)) {
        prop_assert_eq!(char_product(&a, &b).unwrap(), char_product(&b, &a).unwrap());
        let ab_c = char_product(&char_product(&a, &b).unwrap(), &c).unwrap();
        let a_bc = char_product(&a, &char_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn unit_is_neutral(a in character(2)) {
        let one = FormalCharacter::unit(Weight::zero(3), 2, 4);
        prop_assert_eq!(char_product(&a, &one).unwrap(), a);
    }
}
