mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use ssgenus4::weil_enum::{
    achievable_multiples, enumerate_products, filter_by_serre, reduced_frobver_factors,
    reduced_frobver_poly, resultant, simple_ss_factors, sx_check,
};
use ssgenus4::{IntPoly, WeilPoly};

#[test]
fn catalog_is_supersingular_for_every_degree() {
    for n in common::odd_degrees(3, 63) {
        let cat = simple_ss_factors(n).unwrap();
        let degrees: Vec<usize> = cat.iter().map(WeilPoly::degree).collect();
        assert_eq!(degrees, vec![2, 2, 2, 4, 4, 4, 4, 4, 8, 8, 8, 8]);
        for p in &cat {
            assert_eq!(sx_check(p, 2), Ok(true), "n={n} {p:?}");
            // constant term q^g
            assert_eq!(p.poly().coeff(0), BigInt::from(1) << (n as usize * p.g()));
        }
    }
}

#[test]
fn negative_control_fails_criterion() {
    for n in common::odd_degrees(3, 63) {
        let q = BigInt::from(1) << n;
        let t = BigInt::from(1) << ((n - 1) / 2);
        let p = WeilPoly::new(n, IntPoly::new(vec![q, t, BigInt::from(1)]), None).unwrap();
        assert_eq!(sx_check(&p, 2), Ok(false));
    }
}

#[test]
fn serre_survivors_realize_every_multiple() {
    for n in [3u32, 5, 7] {
        let ms = enumerate_products(n, 8).unwrap();
        let kept = filter_by_serre(&ms, 4, n);
        assert_eq!(kept.len(), ms.len());
        assert_eq!(
            achievable_multiples(&kept, n),
            (-4..=4).collect::<BTreeSet<i64>>()
        );
        for m in &kept {
            assert_eq!(m.total_degree, 8);
            assert!(reduced_frobver_poly(m).is_ok(), "{m:?}");
        }
        let unit = BigInt::from(1) << n.div_ceil(2);
        let top: Vec<String> = kept
            .iter()
            .filter(|m| m.a1 == &unit * 3)
            .map(|m| m.label())
            .collect();
        assert!(top.contains(&"L2tp^3*L2z".to_string()));
        let bottom: Vec<String> = kept
            .iter()
            .filter(|m| m.a1 == &unit * -3)
            .map(|m| m.label())
            .collect();
        assert!(bottom.contains(&"L2tm^3*L2z".to_string()));
    }
}

#[test]
fn enumeration_is_sorted_and_deterministic() {
    let a = enumerate_products(5, 8).unwrap();
    let b = enumerate_products(5, 8).unwrap();
    assert_eq!(a, b);
    assert!(a
        .windows(2)
        .all(|w| (w[0].a1.clone(), w[0].label()) <= (w[1].a1.clone(), w[1].label())));
    let labels: BTreeSet<String> = a.iter().map(|m| m.label()).collect();
    assert_eq!(labels.len(), a.len());
}

#[test]
fn mirror_multiset_resultant_is_two() {
    for n in [3u32, 5, 11, 63] {
        let ms = enumerate_products(n, 8).unwrap();
        let mirror = ms.iter().find(|m| m.label() == "L2tm^3*L2z").unwrap();
        let x = IntPoly::linear(0);
        assert_eq!(
            reduced_frobver_poly(mirror).unwrap(),
            IntPoly::linear(2).pow(3).mul(&x)
        );
        let factors = reduced_frobver_factors(mirror).unwrap();
        assert_eq!(factors.len(), 2);
        let r = resultant(&factors[0], &factors[1]).unwrap();
        assert_eq!(r.magnitude(), &2u32.into());
    }
}

proptest! {
    #[test]
    fn resultant_is_product_over_roots(
        roots in prop::collection::vec(-6i64..6, 1..5),
        other in prop::collection::vec(-9i64..9, 1..5),
        lead in 1i64..4,
    ) {
        let p = roots.iter().fold(IntPoly::from_i64s(&[lead]), |acc, &r| acc.mul(&IntPoly::linear(r)));
        let mut rc = other.clone();
        rc.push(1);
        let r = IntPoly::from_i64s(&rc);
        let expect: BigInt = roots.iter().map(|&a| r.eval(&BigInt::from(a))).product::<BigInt>()
            * BigInt::from(lead).pow(r.degree().unwrap() as u32);
        prop_assert_eq!(resultant(&p, &r).unwrap(), expect);
    }
}
