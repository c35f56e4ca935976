//! Point counts for `y^2 + y = f x^9 + a x^5 + b x^3 + c x + d` over GF(2^n).
//!
//! Two independent routes are provided. [`char_sum_s`] evaluates
//! `S = sum_x (-1)^Tr(rhs(x))` and [`count_points_fast`] returns `q + 1 + S`;
//! [`count_points_direct`] never touches the trace and counts solutions of the
//! curve equation itself.

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{Fe, FieldSpec};
use crate::quadform::{self, FormProfile, QuadraticFormSpec};

/// Default cap on `n` for sums over the whole field.
pub const DEFAULT_EXHAUSTIVE_MAX_N: u32 = 29;

/// Cap on `n` for [`count_points_direct`], which keeps a `q`-byte table.
pub const DIRECT_COUNT_MAX_N: u32 = 24;

/// Largest `n` for which [`PowerTable`] is materialized.
pub const POWER_TABLE_MAX_N: u32 = 20;

const PARALLEL_MIN_N: u32 = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("GF(2^{n}) is too large for an exhaustive sum (limit n <= {limit})")]
    FieldTooLargeForExhaustiveSum { n: u32, limit: u32 },
    #[error("leading coefficient is zero; the model is not genus 4")]
    NotGenusFour,
    #[error("invalid curve parameters: {0}")]
    InvalidParams(&'static str),
}

/// The coefficients `(f, a, b, c, d)` of one curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveParams {
    pub f: Fe,
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl CurveParams {
    pub fn new(f: Fe, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Self, CurveError> {
        if f.is_zero() {
            return Err(CurveError::InvalidParams("f must be nonzero"));
        }
        Ok(CurveParams { f, a, b, c, d })
    }

    /// The quadratic form obtained by dropping the constant `d`.
    pub fn form(&self) -> QuadraticFormSpec {
        QuadraticFormSpec::new(self.f, self.a, self.b, self.c)
    }

    pub fn rhs(&self, field: &FieldSpec, x: Fe) -> Fe {
        quadform::form_polynomial(field, &self.form(), x) + self.d
    }
}

/// `y^2 + y = c9 x^9 + c7 x^7 + c5 x^5 + c3 x^3 + c1 x`, the shape of any
/// genus-4 hyperelliptic curve of 2-rank zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankZeroForm {
    pub c9: Fe,
    pub c7: Fe,
    pub c5: Fe,
    pub c3: Fe,
    pub c1: Fe,
}

impl RankZeroForm {
    /// Supersingular iff the `x^7` coefficient vanishes.
    pub fn is_supersingular(&self) -> Result<bool, CurveError> {
        if self.c9.is_zero() {
            return Err(CurveError::NotGenusFour);
        }
        Ok(self.c7.is_zero())
    }

    /// The corresponding [`CurveParams`] with constant term `d`, if supersingular.
    pub fn to_curve_params(&self, d: Fe) -> Result<Option<CurveParams>, CurveError> {
        self.is_supersingular()?
            .then(|| CurveParams::new(self.c9, self.c5, self.c3, self.c1, d))
            .transpose()
    }
}

pub fn is_supersingular_form(form: &RankZeroForm) -> Result<bool, CurveError> {
    form.is_supersingular()
}

/// Linear-functional masks so that the trace of `rhs(x)` is the parity of
/// `(x9 & f) ^ (x5 & a) ^ (x3 & b) ^ (x & c)` plus `Tr(d)`.
#[derive(Debug, Clone, Copy)]
pub struct SumKernel {
    mf: u64,
    ma: u64,
    mb: u64,
    mc: u64,
    trace_d: u32,
}

impl SumKernel {
    pub fn new(field: &FieldSpec, params: &CurveParams) -> Self {
        SumKernel {
            mf: field.linear_trace_mask(params.f),
            ma: field.linear_trace_mask(params.a),
            mb: field.linear_trace_mask(params.b),
            mc: field.linear_trace_mask(params.c),
            trace_d: field.trace(params.d) as u32,
        }
    }

    #[inline]
    fn odd(&self, x: u64, x3: u64, x5: u64, x9: u64) -> u32 {
        let v = (x9 & self.mf) ^ (x5 & self.ma) ^ (x3 & self.mb) ^ (x & self.mc);
        (v.count_ones() & 1) ^ self.trace_d
    }

    fn odd_count_range(&self, field: &FieldSpec, range: std::ops::Range<u64>) -> u64 {
        range
            .map(|x| {
                let (x3, x5, x9) = quadform::odd_powers(field, Fe::from_bits(x));
                self.odd(x, x3.bits(), x5.bits(), x9.bits()) as u64
            })
            .sum()
    }

    /// The character sum, using precomputed powers.
    pub fn sum_with_table(&self, table: &PowerTable) -> i64 {
        let odd: u64 = table
            .entries
            .iter()
            .enumerate()
            .map(|(x, &[x3, x5, x9])| self.odd(x as u64, x3, x5, x9) as u64)
            .sum();
        table.entries.len() as i64 - 2 * odd as i64
    }
}

/// `(x^3, x^5, x^9)` for every `x`, indexed by the bits of `x`.
#[derive(Debug, Clone)]
pub struct PowerTable {
    n: u32,
    entries: Vec<[u64; 3]>,
}

impl PowerTable {
    pub fn new(field: &FieldSpec) -> Option<Self> {
        if field.n() > POWER_TABLE_MAX_N {
            return None;
        }
        let entries = field
            .elements()
            .map(|x| {
                let (x3, x5, x9) = quadform::odd_powers(field, x);
                [x3.bits(), x5.bits(), x9.bits()]
            })
            .collect();
        Some(PowerTable {
            n: field.n(),
            entries,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

fn check_cap(field: &FieldSpec, limit: u32) -> Result<(), CurveError> {
    if field.n() > limit {
        return Err(CurveError::FieldTooLargeForExhaustiveSum {
            n: field.n(),
            limit,
        });
    }
    Ok(())
}

/// `S = sum_x (-1)^Tr(f x^9 + a x^5 + b x^3 + c x + d)` under the default cap.
pub fn char_sum_s(field: &FieldSpec, params: &CurveParams) -> Result<i64, CurveError> {
    char_sum_s_capped(field, params, DEFAULT_EXHAUSTIVE_MAX_N)
}

pub fn char_sum_s_capped(
    field: &FieldSpec,
    params: &CurveParams,
    max_n: u32,
) -> Result<i64, CurveError> {
    check_cap(field, max_n)?;
    let kernel = SumKernel::new(field, params);
    let q = field.order();
    let odd = if field.n() < PARALLEL_MIN_N {
        kernel.odd_count_range(field, 0..q)
    } else {
        let chunk = 1u64 << 12;
        (0..q / chunk)
            .into_par_iter()
            .map(|i| kernel.odd_count_range(field, i * chunk..(i + 1) * chunk))
            .sum()
    };
    Ok(q as i64 - 2 * odd as i64)
}

/// Projective point count by solving the curve equation: for each `x`, the
/// number of `y` with `y^2 + y = rhs(x)`, plus the single point at infinity.
pub fn count_points_direct(field: &FieldSpec, params: &CurveParams) -> Result<u128, CurveError> {
    check_cap(field, DIRECT_COUNT_MAX_N)?;
    // preimage counts of y -> y^2 + y
    let mut preimages = vec![0u8; field.order() as usize];
    for y in field.elements() {
        let v = field.square(y) + y;
        preimages[v.bits() as usize] += 1;
    }
    let affine: u128 = field
        .elements()
        .map(|x| preimages[params.rhs(field, x).bits() as usize] as u128)
        .sum();
    Ok(affine + 1)
}

/// `q + 1 + S`.
pub fn count_points_fast(field: &FieldSpec, params: &CurveParams) -> Result<u128, CurveError> {
    let s = char_sum_s(field, params)?;
    Ok((field.order() as i128 + 1 + s as i128) as u128)
}

/// The admissible values `{0, ±2^((n+1)/2), ±2^((n+3)/2), ±2^((n+5)/2)}`, ascending.
pub fn admissible_sums(n: u32) -> [i64; 7] {
    let base = 1i64 << n.div_ceil(2);
    [-4 * base, -2 * base, -base, 0, base, 2 * base, 4 * base]
}

pub fn is_admissible_sum(n: u32, s: i64) -> bool {
    admissible_sums(n).contains(&s)
}

/// `2^((n+1)/2)`, the unit `sqrt(2q)` in which sums are measured.
pub fn sqrt_2q(n: u32) -> i64 {
    1i64 << n.div_ceil(2)
}

fn hex<S: Serializer>(v: &Fe, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_hex())
}

fn decimal<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One classified curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumRecord {
    #[serde(serialize_with = "hex")]
    pub f: Fe,
    #[serde(serialize_with = "hex")]
    pub a: Fe,
    #[serde(serialize_with = "hex")]
    pub b: Fe,
    #[serde(serialize_with = "hex")]
    pub c: Fe,
    #[serde(serialize_with = "hex")]
    pub d: Fe,
    #[serde(rename = "S")]
    pub s: i64,
    #[serde(rename = "N", serialize_with = "decimal")]
    pub n_points: u128,
    pub w: u32,
    #[serde(rename = "q_vanishes_on_W")]
    pub q_vanishes_on_w: bool,
    pub consistent: bool,
}

impl SpectrumRecord {
    pub const CSV_HEADER: &'static str = "f,a,b,c,d,S,N,w,q_vanishes_on_W,consistent";

    /// Assembles a record from an already computed sum and form profile.
    pub fn from_parts(
        field: &FieldSpec,
        params: &CurveParams,
        s: i64,
        profile: &FormProfile,
    ) -> Self {
        let consistent = s.unsigned_abs() as u128 == profile.predicted_abs_s
            && is_admissible_sum(field.n(), s)
            && (s == 0) != profile.q_vanishes_on_w;
        SpectrumRecord {
            f: params.f,
            a: params.a,
            b: params.b,
            c: params.c,
            d: params.d,
            s,
            n_points: (field.order() as i128 + 1 + s as i128) as u128,
            w: profile.w,
            q_vanishes_on_w: profile.q_vanishes_on_w,
            consistent,
        }
    }

    pub fn params(&self) -> CurveParams {
        CurveParams {
            f: self.f,
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
        }
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.f.to_hex(),
            self.a.to_hex(),
            self.b.to_hex(),
            self.c.to_hex(),
            self.d.to_hex(),
            self.s,
            self.n_points,
            self.w,
            self.q_vanishes_on_w,
            self.consistent
        )
    }
}

/// Runs the form classification and the exhaustive sum and cross-checks them.
pub fn classify_curve(
    field: &FieldSpec,
    params: &CurveParams,
) -> Result<SpectrumRecord, CurveError> {
    let s = char_sum_s(field, params)?;
    let profile = quadform::classify_form_bounded(field, &params.form(), 0);
    Ok(SpectrumRecord::from_parts(field, params, s, &profile))
}
