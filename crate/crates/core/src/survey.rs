//! Batch drivers behind the command-line tool: spectrum scans over many
//! curves, the n = 11 golden curves, and the Weil-enumeration report.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curve_count::{self, CurveParams, PowerTable, SpectrumRecord, SumKernel};
use crate::field::{Fe, FieldError, FieldSpec};
use crate::quadform;
use crate::weil_enum::{self, WeilError};

/// Default largest `n` for exhaustive scans.
pub const EXHAUSTIVE_DEFAULT_MAX_N: u32 = 7;
/// Hard limit even with the override flag (q^4 forms must index in a `u64`).
pub const EXHAUSTIVE_HARD_MAX_N: u32 = 15;

const BATCH: u64 = 1 << 15;
const MAX_KEPT_VIOLATIONS: usize = 1000;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid scan configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Sample,
}

/// Which constant terms `d` accompany each `(f, a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DPolicy {
    /// `d = 0` and `d = δ`, the lowest basis element of trace 1.
    TwoRepresentatives,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    JsonLines,
    Csv,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n: u32,
    pub modulus: Option<u64>,
    pub mode: ScanMode,
    pub sample_size: u64,
    pub seed: u64,
    pub d_policy: DPolicy,
    /// 0 uses the global thread pool.
    pub workers: usize,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub allow_large_exhaustive: bool,
}

impl ScanConfig {
    pub fn exhaustive(n: u32) -> Self {
        ScanConfig {
            n,
            modulus: None,
            mode: ScanMode::Exhaustive,
            sample_size: 0,
            seed: 0,
            d_policy: DPolicy::TwoRepresentatives,
            workers: 0,
            output_path: None,
            format: OutputFormat::JsonLines,
            allow_large_exhaustive: false,
        }
    }

    pub fn sample(n: u32, sample_size: u64, seed: u64) -> Self {
        ScanConfig {
            mode: ScanMode::Sample,
            sample_size,
            seed,
            ..Self::exhaustive(n)
        }
    }

    pub fn field(&self) -> Result<FieldSpec, FieldError> {
        match self.modulus {
            Some(m) => FieldSpec::new(self.n, m, None),
            None => FieldSpec::with_default_modulus(self.n),
        }
    }

    fn validate(&self) -> Result<(), ScanError> {
        if self.mode == ScanMode::Exhaustive {
            let limit = if self.allow_large_exhaustive {
                EXHAUSTIVE_HARD_MAX_N
            } else {
                EXHAUSTIVE_DEFAULT_MAX_N
            };
            if self.n > limit {
                return Err(ScanError::Config(format!(
                    "exhaustive scans are limited to n <= {limit} (got n = {})",
                    self.n
                )));
            }
        } else if self.sample_size == 0 {
            return Err(ScanError::Config(
                "sample mode needs a positive sample size".into(),
            ));
        }
        if self.n > curve_count::DEFAULT_EXHAUSTIVE_MAX_N {
            return Err(ScanError::Config(format!(
                "character sums are limited to n <= {}",
                curve_count::DEFAULT_EXHAUSTIVE_MAX_N
            )));
        }
        Ok(())
    }
}

/// Aggregate of one scan.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub n: u32,
    #[serde(serialize_with = "decimal")]
    pub curves_scanned: u128,
    /// `S` value -> number of curves.
    pub spectrum: BTreeMap<i64, u64>,
    /// radical dimension -> number of forms, counted once per curve.
    pub w_histogram: BTreeMap<u32, u64>,
    /// Curves with an inadmissible or inconsistent sum (first 1000 kept).
    pub violations: Vec<SpectrumRecord>,
    pub violation_count: u64,
    pub consistency_failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn decimal<S: serde::Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ScanSummary {
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.consistency_failures == 0
    }

    /// Spectrum keys as multiples of `2^((n+1)/2)`.
    pub fn multiples(&self) -> BTreeSet<i64> {
        let unit = curve_count::sqrt_2q(self.n);
        self.spectrum.keys().map(|s| s / unit).collect()
    }

    fn record(&mut self, rec: SpectrumRecord, n: u32) {
        self.curves_scanned += 1;
        *self.spectrum.entry(rec.s).or_default() += 1;
        *self.w_histogram.entry(rec.w).or_default() += 1;
        if !rec.consistent {
            self.consistency_failures += 1;
        }
        if !rec.consistent || !curve_count::is_admissible_sum(n, rec.s) {
            self.violation_count += 1;
            if self.violations.len() < MAX_KEPT_VIOLATIONS {
                self.violations.push(rec);
            }
        }
    }

    fn merge(mut self, other: ScanSummary) -> ScanSummary {
        self.curves_scanned += other.curves_scanned;
        for (k, v) in other.spectrum {
            *self.spectrum.entry(k).or_default() += v;
        }
        for (k, v) in other.w_histogram {
            *self.w_histogram.entry(k).or_default() += v;
        }
        self.violation_count += other.violation_count;
        self.consistency_failures += other.consistency_failures;
        let room = MAX_KEPT_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations
            .extend(other.violations.into_iter().take(room));
        self
    }
}

/// The `(f, a, b, c)` of exhaustive index `i`: `f` runs over nonzero elements.
fn exhaustive_form(n: u32, i: u64) -> [u64; 4] {
    let mask = (1u64 << n) - 1;
    [
        1 + (i >> (3 * n)),
        (i >> (2 * n)) & mask,
        (i >> n) & mask,
        i & mask,
    ]
}

/// Uniform `(f, a, b, c)` with `f != 0`.
fn sample_form(rng: &mut Xoshiro256PlusPlus, mask: u64) -> [u64; 4] {
    let f = loop {
        let v = rng.random::<u64>() & mask;
        if v != 0 {
            break v;
        }
    };
    [
        f,
        rng.random::<u64>() & mask,
        rng.random::<u64>() & mask,
        rng.random::<u64>() & mask,
    ]
}

struct Scanner<'a> {
    field: &'a FieldSpec,
    table: Option<PowerTable>,
    d_values: Vec<Fe>,
    lines: Option<OutputFormat>,
}

impl Scanner<'_> {
    fn scan_form(&self, form: [u64; 4], tally: &mut ScanSummary, out: &mut Vec<String>) {
        let [f, a, b, c] = form.map(Fe::from_bits);
        let spec = quadform::QuadraticFormSpec::new(f, a, b, c);
        let profile = quadform::classify_form_bounded(self.field, &spec, 0);
        for &d in &self.d_values {
            let params = CurveParams { f, a, b, c, d };
            let s = match &self.table {
                Some(t) => SumKernel::new(self.field, &params).sum_with_table(t),
                None => curve_count::char_sum_s(self.field, &params)
                    .expect("scan config validated the field size"),
            };
            let rec = SpectrumRecord::from_parts(self.field, &params, s, &profile);
            match self.lines {
                Some(OutputFormat::JsonLines) => {
                    out.push(serde_json::to_string(&rec).expect("records serialize"))
                }
                Some(OutputFormat::Csv) => out.push(rec.to_csv_row()),
                None => {}
            }
            tally.record(rec, self.field.n());
        }
    }
}

/// Runs a scan; the summary is identical for every worker count.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanSummary, ScanError> {
    cfg.validate()?;
    if cfg.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| ScanError::Config(e.to_string()))?;
        pool.install(|| scan_inner(cfg))
    } else {
        scan_inner(cfg)
    }
}

fn scan_inner(cfg: &ScanConfig) -> Result<ScanSummary, ScanError> {
    let field = cfg.field()?;
    let n = field.n();
    let d_values = match cfg.d_policy {
        DPolicy::TwoRepresentatives => vec![Fe::ZERO, field.trace_one_basis_element()],
        DPolicy::Full => field.elements().collect(),
    };
    let scanner = Scanner {
        field: &field,
        table: PowerTable::new(&field),
        d_values,
        lines: cfg.output_path.as_ref().map(|_| cfg.format),
    };
    let mut writer = match &cfg.output_path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            if cfg.format == OutputFormat::Csv {
                writeln!(w, "{}", SpectrumRecord::CSV_HEADER)?;
            }
            Some(w)
        }
        None => None,
    };

    let total = match cfg.mode {
        ScanMode::Exhaustive => ((1u64 << n) - 1) << (3 * n),
        ScanMode::Sample => cfg.sample_size,
    };
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(cfg.seed);
    let mut summary = ScanSummary {
        n,
        seed: (cfg.mode == ScanMode::Sample).then_some(cfg.seed),
        ..Default::default()
    };
    let mut start = 0u64;
    while start < total {
        let end = total.min(start + BATCH);
        let forms: Vec<[u64; 4]> = match cfg.mode {
            ScanMode::Exhaustive => (start..end).map(|i| exhaustive_form(n, i)).collect(),
            ScanMode::Sample => (start..end)
                .map(|_| sample_form(&mut rng, field.element_mask()))
                .collect(),
        };
        let parts: Vec<(ScanSummary, Vec<String>)> = forms
            .par_chunks(256)
            .map(|chunk| {
                let mut tally = ScanSummary {
                    n,
                    ..Default::default()
                };
                let mut lines = Vec::new();
                for &form in chunk {
                    scanner.scan_form(form, &mut tally, &mut lines);
                }
                (tally, lines)
            })
            .collect();
        for (tally, lines) in parts {
            summary = summary.merge(tally);
            if let Some(w) = writer.as_mut() {
                for line in lines {
                    writeln!(w, "{line}")?;
                }
            }
        }
        start = end;
    }
    if let Some(mut w) = writer {
        w.flush()?;
    }
    Ok(summary)
}

/// The four published n = 11 curves and their published `N - (q + 1)`.
/// Exponents are of the generator `w`; `None` means a zero coefficient.
pub const GOLDEN_CURVES: [([Option<u64>; 4], i64); 4] = [
    ([Some(0), Some(512), Some(118), None], 256),
    ([Some(9), Some(517), Some(121), Some(24)], -256),
    ([Some(0), Some(520), Some(117), Some(14)], 128),
    ([Some(0), Some(520), Some(117), Some(15)], -128),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub curve: String,
    pub expected: i64,
    pub got: i64,
    /// `q + 1 - N`, the trace of Frobenius.
    pub frobenius_trace: i64,
    pub ok: bool,
}

fn describe_curve(exps: &[Option<u64>; 4]) -> String {
    let mono = |e: Option<u64>, x: &str| {
        e.map(|e| match e {
            0 => x.to_string(),
            _ => format!("w^{e} {x}"),
        })
    };
    let terms: Vec<String> = [
        mono(exps[0], "x^9"),
        mono(exps[1], "x^5"),
        mono(exps[2], "x^3"),
        mono(exps[3], "x"),
    ]
    .into_iter()
    .flatten()
    .collect();
    format!("y^2 + y = {}", terms.join(" + "))
}

/// Evaluates the golden curves in GF(2^11) modulo `modulus` (default
/// x^11 + x^2 + 1) with generator `w = x`.
pub fn golden_examples(modulus: Option<u64>) -> Result<Vec<GoldenRow>, FieldError> {
    let field = FieldSpec::new(11, modulus.unwrap_or(0x805), Some(0b10))?;
    let w = |e: Option<u64>| e.map_or(Fe::ZERO, |e| field.primitive_pow(e).expect("generator set"));
    Ok(GOLDEN_CURVES
        .iter()
        .map(|(exps, expected)| {
            let params = CurveParams {
                f: w(exps[0]),
                a: w(exps[1]),
                b: w(exps[2]),
                c: w(exps[3]),
                d: Fe::ZERO,
            };
            let got = curve_count::char_sum_s(&field, &params).expect("n = 11 is under the cap");
            GoldenRow {
                curve: describe_curve(exps),
                expected: *expected,
                got,
                frobenius_trace: -got,
                ok: got == *expected,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaRow {
    pub multiset_label: String,
    #[serde(serialize_with = "big_decimal")]
    pub a1: BigInt,
    pub a1_over_sqrt2q: String,
    pub survives_serre: bool,
}

fn big_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub n: u32,
    pub degree: usize,
    pub rows: Vec<ZetaRow>,
    /// `a1 / 2^((n+1)/2)` over the rows surviving the bound.
    pub candidate_multiples: BTreeSet<i64>,
    /// Multiples the quadratic-form argument allows for actual curves.
    pub curve_multiples: BTreeSet<i64>,
}

impl ZetaReport {
    pub const CSV_HEADER: &'static str = "multiset_label,a1,a1_over_sqrt2q,survives_serre";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{}\n",
                r.multiset_label, r.a1, r.a1_over_sqrt2q, r.survives_serre
            ));
        }
        s
    }

    /// Candidate multiples that no curve attains.
    pub fn excluded_multiples(&self) -> BTreeSet<i64> {
        self.candidate_multiples
            .difference(&self.curve_multiples)
            .copied()
            .collect()
    }

    pub fn cross_check_line(&self) -> String {
        let fmt = |s: &BTreeSet<i64>| s.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        format!(
            "# candidates m in {{{}}}; curves m in {{{}}}; excluded for curves {{{}}}",
            fmt(&self.candidate_multiples),
            fmt(&self.curve_multiples),
            fmt(&self.excluded_multiples())
        )
    }
}

fn ratio_string(a1: &BigInt, n: u32) -> String {
    let unit = BigInt::from(1) << n.div_ceil(2);
    let g = a1.gcd(&unit);
    let (num, den) = (a1 / &g, &unit / &g);
    if den == BigInt::from(1) {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

/// Enumerates degree-`degree` products of the catalog, flags the Serre bound
/// for `g = degree / 2`, and compares achievable multiples with `{0, ±1, ±2, ±4}`.
pub fn zeta_report(n: u32, degree: usize) -> Result<ZetaReport, ScanError> {
    let all = weil_enum::enumerate_products(n, degree)?;
    let g = (degree / 2) as u32;
    let survivors = weil_enum::filter_by_serre(&all, g, n);
    let bound = BigInt::from(weil_enum::hw_serre_bound(g, n));
    let rows = all
        .iter()
        .map(|m| ZetaRow {
            multiset_label: m.label(),
            a1: m.a1.clone(),
            a1_over_sqrt2q: ratio_string(&m.a1, n),
            survives_serre: m.a1.abs() <= bound,
        })
        .collect();
    let curve_multiples = curve_count::admissible_sums(n)
        .iter()
        .map(|s| s / curve_count::sqrt_2q(n))
        .collect();
    Ok(ZetaReport {
        n,
        degree,
        rows,
        candidate_multiples: weil_enum::achievable_multiples(&survivors, n),
        curve_multiples,
    })
}
