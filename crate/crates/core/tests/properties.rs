use std::sync::Arc;

use catrep::cyclotomic::{root_of_unity, CycNumber};
use catrep::intertwiners::{self, OneIntertwiner};
use catrep::reps::{self, CatRep, UpTo};
use catrep::twovect::{self, NatMatrix, TwoMorphism};
use catrep::xmod::{self, CrossedModule};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn cyc(n: u32) -> impl Strategy<Value = CycNumber> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 1..=n as usize).prop_map(move |cs| {
        let coeffs = cs.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect();
        CycNumber::from_coeffs(n, coeffs).unwrap()
    })
}

fn nat(rows: usize, cols: usize) -> impl Strategy<Value = NatMatrix> {
    prop::collection::vec(0usize..=2, rows * cols).prop_map(move |e| NatMatrix::new(rows, cols, e).unwrap())
}

fn modules() -> Vec<Arc<CrossedModule>> {
    vec![
        Arc::new(xmod::g23()),
        Arc::new(xmod::wreath(2, 2)),
        Arc::new(xmod::wreath(2, 3)),
        Arc::new(xmod::identity_xmod(&catrep::groups::cyclic(2))),
    ]
}

fn some_reps() -> Vec<CatRep> {
    modules()
        .into_iter()
        .flat_map(|m| (1..=2).flat_map(move |n| reps::enumerate_reps(&m, n, UpTo::Equality)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_conductors_agree_in_the_lcm(a in cyc(4), b in cyc(6)) {
        let sum = &a + &b;
        prop_assert_eq!(sum.conductor(), 12);
        prop_assert_eq!(&sum - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in cyc(12), b in cyc(12)) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn powers_of_roots_add_exponents(n in 1u32..=12, j in -20i64..20, k in -20i64..20) {
        let z = root_of_unity(n, 1).unwrap();
        prop_assert_eq!(&z.pow(j).unwrap() * &z.pow(k).unwrap(), z.pow(j + k).unwrap());
    }

    #[test]
    fn associator_is_invertible_and_natural_in_shape(a in nat(2, 2), b in nat(2, 3), c in nat(3, 1)) {
        let ab_c = a.hcompose(&b).unwrap().hcompose(&c).unwrap();
        let a_bc = a.hcompose(&b.hcompose(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        let fwd = twovect::associator(&a, &b, &c).unwrap();
        let back = twovect::associator_inverse(&a, &b, &c).unwrap();
        prop_assert!(fwd.vcompose(&back).unwrap().is_identity());
        prop_assert!(back.vcompose(&fwd).unwrap().is_identity());
    }

    #[test]
    fn tensorator_is_invertible(a in nat(2, 1), b in nat(1, 2), c in nat(1, 2), d in nat(2, 2)) {
        let t = twovect::tensorator(&a, &b, &c, &d).unwrap();
        prop_assert!(t.vcompose(&t.transpose()).unwrap().is_identity());
        prop_assert!(t.transpose().vcompose(&t).unwrap().is_identity());
    }

    #[test]
    fn identity_two_morphisms_are_units(a in nat(2, 3), b in nat(3, 2)) {
        let ab = a.hcompose(&b).unwrap();
        let id = TwoMorphism::identity(&a).hcompose(&TwoMorphism::identity(&b)).unwrap();
        prop_assert_eq!(id, TwoMorphism::identity(&ab));
    }

    #[test]
    fn products_and_sums_of_reps(i in 0usize..64, j in 0usize..64) {
        let all = some_reps();
        let (r, t) = (&all[i % all.len()], &all[j % all.len()]);
        if r.same_xmod(t) {
            let prod = reps::boxtimes_rep(r, t).unwrap();
            prod.revalidate().unwrap();
            let (parts, pi) = prod.decompose().unwrap();
            prop_assert!(parts.iter().all(CatRep::is_indecomposable));
            let sum = parts[1..].iter().fold(parts[0].clone(), |acc, p| reps::boxplus_rep(&acc, p).unwrap());
            prop_assert_eq!(prod.relabel(&pi), sum);
            prop_assert!(intertwiners::is_isomorphic(&prod, &reps::boxtimes_rep(t, r).unwrap()).unwrap().is_some());
        }
    }

    #[test]
    fn isomorphism_is_symmetric_with_inverse_witnesses(i in 0usize..64, j in 0usize..64) {
        let all = some_reps();
        let (r, t) = (&all[i % all.len()], &all[j % all.len()]);
        if r.same_xmod(t) {
            let there = intertwiners::is_isomorphic(r, t).unwrap();
            let back = intertwiners::is_isomorphic(t, r).unwrap();
            prop_assert_eq!(there.is_some(), back.is_some());
            if let Some(h) = there {
                let k = h.inverse().unwrap();
                prop_assert_eq!(intertwiners::hcompose_intertwiners(&h, &k).unwrap(), OneIntertwiner::identity(r));
                prop_assert_eq!(intertwiners::hcompose_intertwiners(&k, &h).unwrap(), OneIntertwiner::identity(t));
            }
        }
    }

    #[test]
    fn indecomposables_follow_from_the_first_character(i in 0usize..64) {
        let all = some_reps();
        let r = &all[i % all.len()];
        if r.is_indecomposable() {
            prop_assert_eq!(r.characters_from_first().unwrap(), r.chars().to_vec());
        }
    }
}
