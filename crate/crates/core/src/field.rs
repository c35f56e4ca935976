//! Arithmetic in GF(2^n) for odd `n` in `3..=63`.
//!
//! Elements live in the polynomial basis, packed into one `u64` (bit `i` is
//! the coefficient of `x^i`). A [`FieldSpec`] is immutable once built and is
//! shared freely between scan workers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

pub const MIN_DEGREE: u32 = 3;
pub const MAX_DEGREE: u32 = 63;

/// Least irreducible polynomial (as an integer) of each odd degree 3..=63.
///
/// For n = 11 this is x^11 + x^2 + 1, which is also primitive.
const DEFAULT_MODULI: [u64; 31] = [
    0xb,
    0x25,
    0x83,
    0x203,
    0x805,
    0x201b,
    0x8003,
    0x2_0009,
    0x8_0027,
    0x20_0005,
    0x80_0021,
    0x200_0009,
    0x800_0027,
    0x2000_0005,
    0x8000_0009,
    0x2_0000_004b,
    0x8_0000_0005,
    0x20_0000_003f,
    0x80_0000_0011,
    0x200_0000_0009,
    0x800_0000_0059,
    0x2000_0000_001b,
    0x8000_0000_0021,
    0x2_0000_0000_0071,
    0x8_0000_0000_004b,
    0x20_0000_0000_0047,
    0x80_0000_0000_0047,
    0x200_0000_0000_0011,
    0x800_0000_0000_007b,
    0x2000_0000_0000_0027,
    0x8000_0000_0000_0003,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} is even; only odd degrees are supported")]
    NEven(u32),
    #[error("extension degree {0} is outside {MIN_DEGREE}..={MAX_DEGREE}")]
    NOutOfRange(u32),
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u64),
    #[error("modulus {modulus:#x} has degree {found}, expected {expected}")]
    WrongDegree {
        modulus: u64,
        expected: u32,
        found: u32,
    },
    #[error("element {0:#x} is not a generator of the multiplicative group")]
    NotPrimitive(u64),
    #[error("element {value:#x} does not fit in GF(2^{n})")]
    ElementOutOfRange { value: u64, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a hex bit-vector")]
    BadHex(String),
}

/// An element of GF(2^n) in the polynomial basis.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Wraps raw bits without range checking; see [`FieldSpec::element`].
    #[inline]
    pub const fn from_bits(bits: u64) -> Fe {
        Fe(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({:#x})", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

// characteristic 2: addition is xor
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

/// Parses `0x`-prefixed or bare hex into a bit-vector.
pub fn parse_hex(s: &str) -> Result<u64, FieldError> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u64::from_str_radix(digits, 16).map_err(|_| FieldError::BadHex(s.to_string()))
}

/// Carry-less product of two polynomials of degree < 64.
#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let (a, mut b) = if a.count_ones() < b.count_ones() {
        (b, a)
    } else {
        (a, b)
    };
    let a = a as u128;
    let mut acc = 0u128;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

/// Carry-less square: interleave zero bits.
#[inline]
fn spread(a: u64) -> u128 {
    let mut x = a as u128;
    x = (x | (x << 32)) & 0x0000_0000_FFFF_FFFF_0000_0000_FFFF_FFFF;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF_0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF_00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F_0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333_3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555_5555_5555_5555_5555;
    x
}

/// Reduction modulo a monic polynomial `x^n + tail` (any `tail` of degree < n).
#[derive(Clone, Copy, Debug)]
struct Reducer {
    n: u32,
    tail: u64,
    mask: u64,
}

impl Reducer {
    fn new(n: u32, modulus: u64) -> Self {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Reducer {
            n,
            tail: modulus & mask,
            mask,
        }
    }

    #[inline]
    fn reduce(&self, mut p: u128) -> u64 {
        loop {
            let hi = p >> self.n;
            if hi == 0 {
                return p as u64;
            }
            let mut folded = p & self.mask as u128;
            let mut t = self.tail;
            while t != 0 {
                folded ^= hi << t.trailing_zeros();
                t &= t - 1;
            }
            p = folded;
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }

    #[inline]
    fn square(&self, a: u64) -> u64 {
        self.reduce(spread(a))
    }

    /// `a^(2^k)` by repeated squaring.
    fn square_iter(&self, mut a: u64, k: u32) -> u64 {
        for _ in 0..k {
            a = self.square(a);
        }
        a
    }
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, poly_rem(a, b));
    }
    a
}

fn distinct_primes_u32(n: u32) -> Vec<u32> {
    arith::prime_factors(n as u64)
        .into_iter()
        .map(|p| p as u32)
        .collect()
}

/// Rabin's test: `modulus` of degree `n` is irreducible iff
/// `x^(2^n) = x` mod it and `gcd(x^(2^(n/l)) - x, modulus) = 1` for each prime `l | n`.
pub fn is_irreducible(modulus: u64) -> bool {
    let n = poly_degree(modulus);
    if n < 1 {
        return false;
    }
    let n = n as u32;
    let red = Reducer::new(n, modulus);
    let x = poly_rem(0b10, modulus);
    if red.square_iter(x, n) != x {
        return false;
    }
    distinct_primes_u32(n).into_iter().all(|l| {
        let t = red.square_iter(x, n / l) ^ x;
        poly_gcd(modulus, t) == 1
    })
}

/// Built-in modulus for degree `n`, if `n` is a supported odd degree.
pub fn default_modulus(n: u32) -> Option<u64> {
    if n % 2 == 1 && (MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        Some(DEFAULT_MODULI[((n - MIN_DEGREE) / 2) as usize])
    } else {
        None
    }
}

/// JSON form of a field: `{"n": 11, "modulus_hex": "0x805", "primitive_hex": "0x2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub n: u32,
    pub modulus_hex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_hex: Option<String>,
}

/// A validated realization of GF(2^n).
#[derive(Clone, Debug)]
pub struct FieldSpec {
    n: u32,
    modulus: u64,
    primitive: Option<Fe>,
    trace_mask: u64,
    red: Reducer,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus && self.primitive == other.primitive
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Validates `modulus` (bit `i` = coefficient of `x^i`, monic of degree `n`)
    /// and an optional generator, and precomputes the trace mask.
    pub fn new(n: u32, modulus: u64, primitive: Option<u64>) -> Result<Self, FieldError> {
        if n.is_multiple_of(2) {
            return Err(FieldError::NEven(n));
        }
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::NOutOfRange(n));
        }
        let found = poly_degree(modulus);
        if found != n as i32 {
            return Err(FieldError::WrongDegree {
                modulus,
                expected: n,
                found: found.max(0) as u32,
            });
        }
        if !is_irreducible(modulus) {
            return Err(FieldError::ReducibleModulus(modulus));
        }
        let red = Reducer::new(n, modulus);
        let mut field = FieldSpec {
            n,
            modulus,
            primitive: None,
            trace_mask: 0,
            red,
        };
        field.trace_mask = (0..n)
            .map(|i| (field.trace_by_conjugates(Fe(1 << i)) as u64) << i)
            .fold(0, |acc, b| acc | b);
        if let Some(g) = primitive {
            let g = field.element(g)?;
            if !field.is_primitive(g) {
                return Err(FieldError::NotPrimitive(g.0));
            }
            field.primitive = Some(g);
        }
        Ok(field)
    }

    /// The field with the built-in modulus for `n` and no designated generator.
    pub fn with_default_modulus(n: u32) -> Result<Self, FieldError> {
        if n.is_multiple_of(2) {
            return Err(FieldError::NEven(n));
        }
        let modulus = default_modulus(n).ok_or(FieldError::NOutOfRange(n))?;
        Self::new(n, modulus, None)
    }

    /// GF(2^11) modulo x^11 + x^2 + 1 with generator `w = x`.
    pub fn golden_n11() -> Self {
        Self::new(11, 0x805, Some(0b10)).expect("x^11 + x^2 + 1 is primitive")
    }

    pub fn from_config(cfg: &FieldConfig) -> Result<Self, FieldError> {
        let modulus = parse_hex(&cfg.modulus_hex)?;
        let primitive = cfg.primitive_hex.as_deref().map(parse_hex).transpose()?;
        Self::new(cfg.n, modulus, primitive)
    }

    pub fn to_config(&self) -> FieldConfig {
        FieldConfig {
            n: self.n,
            modulus_hex: format!("{:#x}", self.modulus),
            primitive_hex: self.primitive.map(Fe::to_hex),
        }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn primitive(&self) -> Option<Fe> {
        self.primitive
    }

    #[inline]
    pub fn trace_mask(&self) -> u64 {
        self.trace_mask
    }

    /// `q = 2^n`.
    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn element_mask(&self) -> u64 {
        self.red.mask
    }

    /// Range-checked element constructor.
    pub fn element(&self, bits: u64) -> Result<Fe, FieldError> {
        if bits & !self.red.mask != 0 {
            return Err(FieldError::ElementOutOfRange {
                value: bits,
                n: self.n,
            });
        }
        Ok(Fe(bits))
    }

    pub fn parse_element(&self, s: &str) -> Result<Fe, FieldError> {
        self.element(parse_hex(s)?)
    }

    /// The residue class of `x`.
    #[inline]
    pub fn x(&self) -> Fe {
        Fe(0b10)
    }

    /// All `q` elements in counter order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.order()).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.red.mul(a.0, b.0))
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        Fe(self.red.square(a.0))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = 1u64;
        let mut base = a.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.red.mul(acc, base);
            }
            base = self.red.square(base);
            e >>= 1;
        }
        Fe(acc)
    }

    /// `a^(2^k)`; `k` is reduced mod `n` first.
    pub fn frobenius_iter(&self, a: Fe, k: u64) -> Fe {
        Fe(self.red.square_iter(a.0, (k % self.n as u64) as u32))
    }

    /// Absolute trace to GF(2), via the precomputed mask.
    #[inline]
    pub fn trace(&self, a: Fe) -> u8 {
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// `a + a^2 + ... + a^(2^(n-1))`, projected to GF(2). Reference path for
    /// the trace mask.
    pub fn trace_by_conjugates(&self, a: Fe) -> u8 {
        let mut sum = 0u64;
        let mut t = a.0;
        for _ in 0..self.n {
            sum ^= t;
            t = self.red.square(t);
        }
        debug_assert!(sum <= 1, "trace left the prime field");
        sum as u8
    }

    /// Mask `m` with `Tr(c * x) = parity(x & m)` for every `x`.
    pub fn linear_trace_mask(&self, c: Fe) -> u64 {
        (0..self.n).fold(0, |acc, i| {
            acc | ((self.trace(Fe(self.red.mul(c.0, 1 << i))) as u64) << i)
        })
    }

    /// Lowest basis element `x^i` with trace 1.
    pub fn trace_one_basis_element(&self) -> Fe {
        Fe(1 << self.trace_mask.trailing_zeros())
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// True iff `g` has multiplicative order `2^n - 1`.
    pub fn is_primitive(&self, g: Fe) -> bool {
        if g.is_zero() {
            return false;
        }
        let group = self.order() - 1;
        self.pow(g, group) == Fe::ONE
            && arith::prime_factors(group)
                .into_iter()
                .all(|p| self.pow(g, group / p) != Fe::ONE)
    }

    /// `w^e` for the designated generator.
    pub fn primitive_pow(&self, e: u64) -> Option<Fe> {
        self.primitive.map(|w| self.pow(w, e))
    }
}
