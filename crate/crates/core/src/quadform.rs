//! The quadratic form `Q(x) = Tr(f x^9 + a x^5 + b x^3 + c x)` over GF(2^n),
//! its polarization `B`, the radical `W` and the resulting prediction of the
//! character-sum magnitude.
//!
//! `B(x, u) = Tr(x^8 L(u))` with the linearized polynomial
//! `L(u) = f u + f^8 u^64 + a^2 u^2 + a^8 u^32 + b^4 u^4 + b^8 u^16`, so the
//! radical of `B` is the kernel of `L`, an F2-subspace of dimension at most 6.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{Fe, FieldSpec};
use crate::gf2;

/// Largest `n` for which [`radical_oracle`] enumerates the field.
pub const RADICAL_ORACLE_MAX_N: u32 = 17;

/// Default bound on `n` for filling [`FormProfile::m`] by enumeration.
pub const DEFAULT_ZERO_COUNT_MAX_N: u32 = 13;

// Beyond this many radical dimensions (only reachable when f = a = b = 0),
// vanishing is decided on a basis: Q is additive on the radical of B.
const ENUMERATE_RADICAL_MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadformError {
    #[error("GF(2^{n}) is too large for the brute-force radical (limit n <= {limit})")]
    FieldTooLarge { n: u32, limit: u32 },
}

/// Coefficients of `Q(x) = Tr(f x^9 + a x^5 + b x^3 + c x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QuadraticFormSpec {
    pub f: Fe,
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
}

impl QuadraticFormSpec {
    pub fn new(f: Fe, a: Fe, b: Fe, c: Fe) -> Self {
        QuadraticFormSpec { f, a, b, c }
    }
}

/// `(x^3, x^5, x^9)`.
#[inline]
pub fn odd_powers(field: &FieldSpec, x: Fe) -> (Fe, Fe, Fe) {
    let x2 = field.square(x);
    let x3 = field.mul(x2, x);
    let x4 = field.square(x2);
    let x5 = field.mul(x4, x);
    let x9 = field.mul(field.square(x4), x);
    (x3, x5, x9)
}

/// `f x^9 + a x^5 + b x^3 + c x`, the argument of the trace in `Q`.
#[inline]
pub fn form_polynomial(field: &FieldSpec, spec: &QuadraticFormSpec, x: Fe) -> Fe {
    let (x3, x5, x9) = odd_powers(field, x);
    field.mul(spec.f, x9) + field.mul(spec.a, x5) + field.mul(spec.b, x3) + field.mul(spec.c, x)
}

pub fn eval_q(field: &FieldSpec, spec: &QuadraticFormSpec, x: Fe) -> u8 {
    field.trace(form_polynomial(field, spec, x))
}

/// `B(x, y) = Q(x + y) + Q(x) + Q(y)`.
pub fn polarize(field: &FieldSpec, spec: &QuadraticFormSpec, x: Fe, y: Fe) -> u8 {
    eval_q(field, spec, x + y) ^ eval_q(field, spec, x) ^ eval_q(field, spec, y)
}

pub fn linearized_l(field: &FieldSpec, spec: &QuadraticFormSpec, u: Fe) -> Fe {
    let frob = |v: Fe, k: u64| field.frobenius_iter(v, k);
    let f8 = frob(spec.f, 3);
    let a2 = frob(spec.a, 1);
    let a8 = frob(spec.a, 3);
    let b4 = frob(spec.b, 2);
    let b8 = frob(spec.b, 3);
    field.mul(spec.f, u)
        + field.mul(f8, frob(u, 6))
        + field.mul(a2, frob(u, 1))
        + field.mul(a8, frob(u, 5))
        + field.mul(b4, frob(u, 2))
        + field.mul(b8, frob(u, 4))
}

/// Echelon basis of `ker L`, from the matrix of `L` on the polynomial basis.
pub fn kernel_w(field: &FieldSpec, spec: &QuadraticFormSpec) -> Vec<Fe> {
    let columns: Vec<u64> = (0..field.n())
        .map(|i| linearized_l(field, spec, Fe::from_bits(1 << i)).bits())
        .collect();
    gf2::nullspace_of_columns(&columns)
        .into_iter()
        .map(Fe::from_bits)
        .collect()
}

/// Echelon basis of the radical of `B`, found by testing `B(x, e_j) = 0` for
/// every `x` in the field against every basis vector `e_j`.
pub fn radical_oracle(
    field: &FieldSpec,
    spec: &QuadraticFormSpec,
) -> Result<Vec<Fe>, QuadformError> {
    if field.n() > RADICAL_ORACLE_MAX_N {
        return Err(QuadformError::FieldTooLarge {
            n: field.n(),
            limit: RADICAL_ORACLE_MAX_N,
        });
    }
    let basis: Vec<Fe> = (0..field.n()).map(|j| Fe::from_bits(1 << j)).collect();
    let members = field
        .elements()
        .filter(|&x| basis.iter().all(|&e| polarize(field, spec, x, e) == 0))
        .map(Fe::bits);
    Ok(gf2::echelon_basis(members)
        .into_iter()
        .map(Fe::from_bits)
        .collect())
}

fn decimal<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn decimal_opt<S: Serializer>(v: &Option<u64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(m) => s.serialize_some(&m.to_string()),
        None => s.serialize_none(),
    }
}

fn hex_list<S: Serializer>(v: &[Fe], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|e| e.to_hex()))
}

/// Classification of one form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormProfile {
    pub w: u32,
    #[serde(rename = "q_vanishes_on_W")]
    pub q_vanishes_on_w: bool,
    #[serde(rename = "rank_B")]
    pub rank_b: u32,
    #[serde(rename = "rank_Q")]
    pub rank_q: u32,
    #[serde(rename = "dim_W0")]
    pub dim_w0: u32,
    #[serde(rename = "predicted_abs_S", serialize_with = "decimal")]
    pub predicted_abs_s: u128,
    #[serde(rename = "W_basis", serialize_with = "hex_list")]
    pub w_basis: Vec<Fe>,
    /// `#{x : Q(x) = 0}`, when the field was small enough to enumerate.
    #[serde(
        rename = "M",
        serialize_with = "decimal_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub m: Option<u64>,
}

impl FormProfile {
    /// `sum_{u in W} (-1)^Q(u)`.
    pub fn radical_character_sum(&self) -> i64 {
        if self.q_vanishes_on_w {
            1i64 << self.w
        } else {
            0
        }
    }
}

pub fn classify_form(field: &FieldSpec, spec: &QuadraticFormSpec) -> FormProfile {
    classify_form_bounded(field, spec, DEFAULT_ZERO_COUNT_MAX_N)
}

/// As [`classify_form`], filling `m` only when `n <= zero_count_max_n`.
pub fn classify_form_bounded(
    field: &FieldSpec,
    spec: &QuadraticFormSpec,
    zero_count_max_n: u32,
) -> FormProfile {
    let n = field.n();
    let w_basis = kernel_w(field, spec);
    let w = w_basis.len() as u32;
    let bits: Vec<u64> = w_basis.iter().map(|e| e.bits()).collect();
    let q_vanishes_on_w = if w_basis.len() <= ENUMERATE_RADICAL_MAX_DIM {
        gf2::span_elements(&bits).all(|u| eval_q(field, spec, Fe::from_bits(u)) == 0)
    } else {
        w_basis.iter().all(|&u| eval_q(field, spec, u) == 0)
    };
    let dim_w0 = if q_vanishes_on_w { w } else { w - 1 };
    let predicted_abs_s = if q_vanishes_on_w {
        1u128 << ((n + w) / 2)
    } else {
        0
    };
    let m = (n <= zero_count_max_n).then(|| {
        field
            .elements()
            .filter(|&x| eval_q(field, spec, x) == 0)
            .count() as u64
    });
    FormProfile {
        w,
        q_vanishes_on_w,
        rank_b: n - w,
        rank_q: n - dim_w0,
        dim_w0,
        predicted_abs_s,
        w_basis,
        m,
    }
}
