#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use ssgenus4::{CurveParams, Fe, FieldSpec, QuadraticFormSpec};

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn elem(rng: &mut Xoshiro256PlusPlus, field: &FieldSpec) -> Fe {
    Fe::from_bits(rng.random::<u64>() & field.element_mask())
}

pub fn nonzero(rng: &mut Xoshiro256PlusPlus, field: &FieldSpec) -> Fe {
    loop {
        let e = elem(rng, field);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn curve(rng: &mut Xoshiro256PlusPlus, field: &FieldSpec) -> CurveParams {
    let f = nonzero(rng, field);
    CurveParams::new(
        f,
        elem(rng, field),
        elem(rng, field),
        elem(rng, field),
        elem(rng, field),
    )
    .unwrap()
}

pub fn form(rng: &mut Xoshiro256PlusPlus, field: &FieldSpec) -> QuadraticFormSpec {
    QuadraticFormSpec::new(
        elem(rng, field),
        elem(rng, field),
        elem(rng, field),
        elem(rng, field),
    )
}

pub fn field(n: u32) -> FieldSpec {
    FieldSpec::with_default_modulus(n).unwrap()
}

pub fn odd_degrees(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|n| n % 2 == 1)
}
