//! Characteristic polynomials of Frobenius for supersingular abelian varieties
//! over GF(2^n): the divisibility criterion on their coefficients, the catalog
//! of simple factors of dimension at most 4, enumeration of their products,
//! and the rescaled polynomial of `(Frob + Ver) / 2^((n-1)/2)`.
//!
//! Coefficients are exact (`BigInt`): `q^g = 2^(4n)` overflows machine words
//! long before `n = 63`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("malformed Weil polynomial: {0}")]
    MalformedWeilPoly(String),
    #[error("extension degree {0} must be odd and in 3..=63")]
    BadDegree(u32),
    #[error("target degree {0} must be even")]
    OddTargetDegree(usize),
    #[error("factor {0} does not rescale to an integer polynomial")]
    NotReducible(String),
    #[error("resultant of the zero polynomial")]
    ZeroPolynomial,
}

/// Dense integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    /// `X - root`.
    pub fn linear(root: i64) -> Self {
        Self::from_i64s(&[-root, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = !mag.is_one() || i == 0;
            match (i, show_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{mag}*X")?,
                (1, false) => write!(f, "X")?,
                (_, true) => write!(f, "{mag}*X^{i}")?,
                (_, false) => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

fn two_pow(k: u32) -> BigInt {
    BigInt::one() << k
}

/// A monic degree-`2g` polynomial `X^(2g) + a_1 X^(2g-1) + ... + q^g` with
/// `c_i = q^(g-i) c_(2g-i)`, where `q = 2^n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeilPoly {
    g: usize,
    n: u32,
    coeffs: IntPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl fmt::Debug for WeilPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l}: {}", self.coeffs),
            None => write!(f, "{}", self.coeffs),
        }
    }
}

fn check_functional_equation(poly: &IntPoly, n: u32) -> Result<usize, WeilError> {
    let deg = poly
        .degree()
        .ok_or_else(|| WeilError::MalformedWeilPoly("zero polynomial".into()))?;
    if deg % 2 != 0 {
        return Err(WeilError::MalformedWeilPoly(format!("odd degree {deg}")));
    }
    if !poly.leading().is_one() {
        return Err(WeilError::MalformedWeilPoly("not monic".into()));
    }
    let g = deg / 2;
    for i in 0..=g {
        let expected = poly.coeff(2 * g - i) << (n as usize * (g - i));
        if poly.coeff(i) != expected {
            return Err(WeilError::MalformedWeilPoly(format!(
                "coefficient of X^{i} is {}, functional equation requires {expected}",
                poly.coeff(i)
            )));
        }
    }
    Ok(g)
}

impl WeilPoly {
    pub fn new(n: u32, coeffs: IntPoly, label: Option<String>) -> Result<Self, WeilError> {
        let g = check_functional_equation(&coeffs, n)?;
        Ok(WeilPoly {
            g,
            n,
            coeffs,
            label,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        2 * self.g
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or("")
    }

    pub fn poly(&self) -> &IntPoly {
        &self.coeffs
    }

    /// `a_j`, the coefficient of `X^(2g-j)`.
    pub fn a(&self, j: usize) -> BigInt {
        self.coeffs.coeff(2 * self.g - j)
    }

    /// `a_1 = -(sum of the roots)`.
    pub fn a1(&self) -> BigInt {
        self.a(1)
    }
}

/// Supersingularity: `prime^ceil(j n / 2)` divides `a_j` for every `1 <= j <= g`.
pub fn sx_check(p: &WeilPoly, prime: u32) -> Result<bool, WeilError> {
    check_functional_equation(&p.coeffs, p.n)?;
    let prime = BigInt::from(prime);
    Ok((1..=p.g).all(|j| {
        let e = (j as u32 * p.n).div_ceil(2);
        p.a(j)
            .is_multiple_of(&num_traits::pow(prime.clone(), e as usize))
    }))
}

fn check_n(n: u32) -> Result<(), WeilError> {
    if n % 2 == 1 && (3..=63).contains(&n) {
        Ok(())
    } else {
        Err(WeilError::BadDegree(n))
    }
}

/// The twelve characteristic polynomials of simple supersingular abelian
/// varieties of dimension <= 4 over GF(2^n), all signs expanded.
///
/// Labels: `L<deg><family><sign>` with `t` = nonzero trace term,
/// `s` = middle `X^2` term, `z` = zero trace, `sq` = `(X^2 - q)^2`,
/// `alt` = alternating `X^8 - q X^6 + ...`.
pub fn simple_ss_factors(n: u32) -> Result<Vec<WeilPoly>, WeilError> {
    check_n(n)?;
    let nn = n as usize;
    let t1 = two_pow(n.div_ceil(2));
    let t3 = two_pow((3 * n).div_ceil(2));
    let t7 = two_pow((7 * n).div_ceil(2));
    let q = |k: usize| two_pow((k * nn) as u32);
    let z = BigInt::zero;
    let one = BigInt::one;
    let mut out = Vec::with_capacity(12);
    let mut push = |label: &str, c: Vec<BigInt>| {
        let w = WeilPoly::new(n, IntPoly::new(c), Some(label.to_string()))
            .expect("catalog entries satisfy the functional equation");
        out.push(w);
    };
    for (sign, tag) in [(1, "p"), (-1, "m")] {
        let s = BigInt::from(sign);
        push(&format!("L2t{tag}"), vec![q(1), &s * &t1, one()]);
    }
    push("L2z", vec![q(1), z(), one()]);
    for (sign, tag) in [(1, "p"), (-1, "m")] {
        let s = BigInt::from(sign);
        push(&format!("L4s{tag}"), vec![q(2), z(), &s * q(1), z(), one()]);
    }
    for (sign, tag) in [(1, "p"), (-1, "m")] {
        let s = BigInt::from(sign);
        push(
            &format!("L4t{tag}"),
            vec![q(2), &s * &t3, q(1), &s * &t1, one()],
        );
    }
    push("L4sq", vec![q(2), z(), -q(1) * 2, z(), one()]);
    for (sign, tag) in [(1, "p"), (-1, "m")] {
        let s = BigInt::from(sign);
        push(
            &format!("L8t{tag}"),
            vec![q(4), &s * &t7, q(3), z(), -q(2), z(), q(1), &s * &t1, one()],
        );
    }
    push("L8z", vec![q(4), z(), z(), z(), z(), z(), z(), z(), one()]);
    push(
        "L8alt",
        vec![q(4), z(), -q(3), z(), q(2), z(), -q(1), z(), one()],
    );
    Ok(out)
}

/// `g * floor(2 sqrt(2^n))`, computed as `g * isqrt(2^(n+2))`.
pub fn hw_serre_bound(g: u32, n: u32) -> BigUint {
    let four_q = BigUint::one() << (n + 2);
    four_q.sqrt() * g
}

/// A product of catalog factors with multiplicities.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FactorMultiset {
    pub factors: Vec<(WeilPoly, usize)>,
    pub total_degree: usize,
    #[serde(serialize_with = "decimal")]
    pub a1: BigInt,
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl fmt::Debug for FactorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (a1 = {})", self.label(), self.a1)
    }
}

impl FactorMultiset {
    pub fn new(factors: Vec<(WeilPoly, usize)>) -> Self {
        let total_degree = factors.iter().map(|(p, m)| p.degree() * m).sum();
        let a1 = factors.iter().map(|(p, m)| p.a1() * BigInt::from(*m)).sum();
        FactorMultiset {
            factors,
            total_degree,
            a1,
        }
    }

    /// Canonical label, e.g. `L2tp^3*L2z`.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, m)| match m {
                1 => p.label().to_string(),
                _ => format!("{}^{m}", p.label()),
            })
            .collect();
        parts.sort();
        parts.join("*")
    }

    pub fn g(&self) -> usize {
        self.total_degree / 2
    }

    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::one(), |acc, (p, m)| acc.mul(&p.poly().pow(*m)))
    }

    /// Multiplicity of the factor with `label`, zero when absent.
    pub fn multiplicity(&self, label: &str) -> usize {
        self.factors
            .iter()
            .find(|(p, _)| p.label() == label)
            .map_or(0, |(_, m)| *m)
    }
}

/// All multisets of catalog factors of total degree `target_degree`, sorted
/// by `a1` and then by label.
pub fn enumerate_products(n: u32, target_degree: usize) -> Result<Vec<FactorMultiset>, WeilError> {
    if !target_degree.is_multiple_of(2) {
        return Err(WeilError::OddTargetDegree(target_degree));
    }
    let catalog = simple_ss_factors(n)?;
    let mut out = Vec::new();
    let mut chosen: Vec<(WeilPoly, usize)> = Vec::new();
    collect_products(&catalog, 0, target_degree, &mut chosen, &mut out);
    out.sort_by(|x, y| x.a1.cmp(&y.a1).then_with(|| x.label().cmp(&y.label())));
    Ok(out)
}

fn collect_products(
    catalog: &[WeilPoly],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<(WeilPoly, usize)>,
    out: &mut Vec<FactorMultiset>,
) {
    if remaining == 0 {
        out.push(FactorMultiset::new(chosen.clone()));
        return;
    }
    for i in start..catalog.len() {
        let d = catalog[i].degree();
        for m in 1..=remaining / d {
            chosen.push((catalog[i].clone(), m));
            collect_products(catalog, i + 1, remaining - m * d, chosen, out);
            chosen.pop();
        }
    }
}

/// Keeps the multisets with `|a1| <= g floor(2 sqrt q)`.
pub fn filter_by_serre(ms: &[FactorMultiset], g: u32, n: u32) -> Vec<FactorMultiset> {
    let bound = BigInt::from(hw_serre_bound(g, n));
    ms.iter().filter(|m| m.a1.abs() <= bound).cloned().collect()
}

/// `h` with `P(X) = X^g h(X + q/X)`: the polynomial whose roots are the
/// sums `w + q/w` over the root pairs of `P`.
pub fn real_weil_poly(p: &WeilPoly) -> IntPoly {
    let g = p.g;
    let q = two_pow(p.n);
    let x2_plus_q = IntPoly::new(vec![q, BigInt::zero(), BigInt::one()]);
    let mut rest: Vec<BigInt> = p.poly().coeffs().to_vec();
    let mut h = vec![BigInt::zero(); g + 1];
    for k in (0..=g).rev() {
        // X^(g-k) (X^2 + q)^k has leading term X^(g+k)
        let hk = rest[g + k].clone();
        if !hk.is_zero() {
            let term = x2_plus_q.pow(k);
            for (i, c) in term.coeffs().iter().enumerate() {
                rest[g - k + i] -= &hk * c;
            }
        }
        h[k] = hk;
    }
    debug_assert!(
        rest.iter().all(Zero::is_zero),
        "functional equation guarantees exact peeling"
    );
    IntPoly::new(h)
}

/// The real polynomial of one factor rescaled by `2^((n-1)/2)`.
fn reduced_factor(p: &WeilPoly) -> Result<IntPoly, WeilError> {
    let h = real_weil_poly(p);
    let shift = (p.n - 1) / 2;
    let mut out = Vec::with_capacity(p.g + 1);
    for (k, c) in h.coeffs().iter().enumerate() {
        let scale = two_pow(shift * (p.g - k) as u32);
        let (quot, rem) = c.div_rem(&scale);
        if !rem.is_zero() {
            return Err(WeilError::NotReducible(p.label().to_string()));
        }
        out.push(quot);
    }
    Ok(IntPoly::new(out))
}

/// Monic polynomial with roots `(w + w̄) / 2^((n-1)/2)` over all root pairs of
/// the product, with multiplicity.
pub fn reduced_frobver_poly(ms: &FactorMultiset) -> Result<IntPoly, WeilError> {
    ms.factors.iter().try_fold(IntPoly::one(), |acc, (p, m)| {
        Ok(acc.mul(&reduced_factor(p)?.pow(*m)))
    })
}

/// The distinct rescaled factor polynomials, one per catalog factor, in the
/// multiset's order.
pub fn reduced_frobver_factors(ms: &FactorMultiset) -> Result<Vec<IntPoly>, WeilError> {
    let mut out: Vec<IntPoly> = Vec::new();
    for (p, _) in &ms.factors {
        let r = reduced_factor(p)?;
        if !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

/// `Res(p, r) = lc(p)^deg(r) * prod r(alpha_i)` over the roots of `p`, as the
/// determinant of the Sylvester matrix (Bareiss elimination).
pub fn resultant(p: &IntPoly, r: &IntPoly) -> Result<BigInt, WeilError> {
    let (Some(m), Some(k)) = (p.degree(), r.degree()) else {
        return Err(WeilError::ZeroPolynomial);
    };
    let size = m + k;
    if size == 0 {
        return Ok(BigInt::one());
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows 0..k: shifts of p; rows k..k+m: shifts of r; leading coefficient first
    for i in 0..k {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in r.coeffs().iter().rev().enumerate() {
            mat[k + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

fn bareiss_determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let size = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..size {
        let Some(pivot_row) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != col {
            mat.swap(pivot_row, col);
            sign = -sign;
        }
        for row in col + 1..size {
            for j in col + 1..size {
                let v = &mat[row][j] * &mat[col][col] - &mat[row][col] * &mat[col][j];
                mat[row][j] = v / &prev;
            }
            mat[row][col] = BigInt::zero();
        }
        prev = mat[col][col].clone();
    }
    sign * &mat[size - 1][size - 1]
}

/// `{a1 / 2^((n+1)/2)}` over the multisets whose `a1` is an exact multiple.
pub fn achievable_multiples(ms: &[FactorMultiset], n: u32) -> BTreeSet<i64> {
    let unit = two_pow(n.div_ceil(2));
    ms.iter()
        .filter(|m| m.a1.is_multiple_of(&unit))
        .filter_map(|m| (&m.a1 / &unit).to_i64())
        .collect()
}
