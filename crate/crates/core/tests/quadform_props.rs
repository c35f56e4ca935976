mod common;

use ssgenus4::curve_count;
use ssgenus4::gf2;
use ssgenus4::quadform::{
    self, classify_form, eval_q, kernel_w, linearized_l, polarize, radical_oracle,
};
use ssgenus4::{CurveParams, Fe};

#[test]
fn kernel_equals_brute_force_radical() {
    for n in [3u32, 5, 7, 9, 11] {
        let f = common::field(n);
        let mut rng = common::rng(17 * n as u64);
        let trials = if n <= 7 { 100 } else { 10 };
        for _ in 0..trials {
            let spec = common::form(&mut rng, &f);
            assert_eq!(
                kernel_w(&f, &spec),
                radical_oracle(&f, &spec).unwrap(),
                "n={n} {spec:?}"
            );
        }
    }
}

#[test]
fn radical_dimension_parity_and_bounds() {
    for n in common::odd_degrees(3, 31) {
        let f = common::field(n);
        let mut rng = common::rng(n as u64);
        for _ in 0..200 {
            let mut spec = common::form(&mut rng, &f);
            if spec.f.is_zero() {
                spec.f = Fe::ONE;
            }
            let p = quadform::classify_form_bounded(&f, &spec, 0);
            assert_eq!(p.w % 2, 1, "n={n}");
            assert_eq!(p.rank_b, n - p.w);
            assert_eq!(p.rank_b % 2, 0);
            if n >= 7 {
                assert!([1, 3, 5].contains(&p.w), "n={n} w={}", p.w);
            } else {
                assert!(p.w <= n);
            }
            assert_eq!(p.dim_w0 == p.w, p.q_vanishes_on_w);
            assert_eq!(p.dim_w0 + 1 == p.w, !p.q_vanishes_on_w);
            let expected = if p.q_vanishes_on_w {
                1u128 << ((n + p.w) / 2)
            } else {
                0
            };
            assert_eq!(p.predicted_abs_s, expected);
        }
    }
}

#[test]
fn q_is_additive_on_the_radical() {
    for n in [5u32, 7, 11, 13, 21] {
        let f = common::field(n);
        let mut rng = common::rng(99 + n as u64);
        for _ in 0..100 {
            let spec = common::form(&mut rng, &f);
            let basis: Vec<u64> = kernel_w(&f, &spec).iter().map(|e| e.bits()).collect();
            let elems: Vec<Fe> = gf2::span_elements(&basis).map(Fe::from_bits).collect();
            for &u in &elems {
                for &v in &elems {
                    assert_eq!(
                        eval_q(&f, &spec, f.add(u, v)),
                        eval_q(&f, &spec, u) ^ eval_q(&f, &spec, v)
                    );
                }
            }
        }
    }
}

#[test]
fn zero_counts_follow_rank() {
    for n in [3u32, 5, 7, 9, 11] {
        let f = common::field(n);
        let mut rng = common::rng(7 * n as u64);
        for _ in 0..60 {
            let spec = common::form(&mut rng, &f);
            let p = classify_form(&f, &spec);
            let m = p.m.unwrap() as i64;
            let half = 1i64 << (n - 1);
            if p.rank_q % 2 == 1 {
                assert_eq!(m, half);
            } else {
                let dev = 1i64 << ((n - 2 + p.w) / 2);
                assert!(m == half + dev || m == half - dev, "n={n} m={m} w={}", p.w);
            }
        }
    }
}

#[test]
fn squared_sum_identity() {
    for n in common::odd_degrees(3, 13) {
        let f = common::field(n);
        let mut rng = common::rng(5 * n as u64);
        for _ in 0..100 {
            let p: CurveParams = common::curve(&mut rng, &f);
            let s = curve_count::char_sum_s(&f, &p).unwrap();
            let basis: Vec<u64> = kernel_w(&f, &p.form()).iter().map(|e| e.bits()).collect();
            let radical_sum: i64 = gf2::span_elements(&basis)
                .map(|u| 1 - 2 * eval_q(&f, &p.form(), Fe::from_bits(u)) as i64)
                .sum();
            assert_eq!(s * s, f.order() as i64 * radical_sum, "n={n} {p:?}");
        }
    }
}

#[test]
fn polarization_is_symplectic_and_l_is_additive() {
    for n in [3u32, 9, 15] {
        let f = common::field(n);
        let mut rng = common::rng(3 + n as u64);
        let spec = common::form(&mut rng, &f);
        for _ in 0..1000 {
            let (x, y) = (common::elem(&mut rng, &f), common::elem(&mut rng, &f));
            assert_eq!(polarize(&f, &spec, x, x), 0);
            assert_eq!(polarize(&f, &spec, x, Fe::ZERO), 0);
            assert_eq!(polarize(&f, &spec, x, y), polarize(&f, &spec, y, x));
            assert_eq!(
                linearized_l(&f, &spec, f.add(x, y)),
                f.add(linearized_l(&f, &spec, x), linearized_l(&f, &spec, y))
            );
            // B(x, y) = Tr(x^8 L(y))
            let x8 = f.frobenius_iter(x, 3);
            assert_eq!(
                polarize(&f, &spec, x, y),
                f.trace(f.mul(x8, linearized_l(&f, &spec, y)))
            );
        }
        assert_eq!(linearized_l(&f, &spec, Fe::ZERO), Fe::ZERO);
    }
}
