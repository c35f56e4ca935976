use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ssgenus4::curve_count::{self, CurveParams};
use ssgenus4::field::{parse_hex, FieldSpec};
use ssgenus4::survey::{self, DPolicy, OutputFormat, ScanConfig, ScanMode};

/// Genus-4 supersingular curves y^2 + y = f x^9 + a x^5 + b x^3 + c x + d over GF(2^n).
#[derive(Parser)]
#[command(name = "ssgenus4", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a field and print its JSON description.
    Field {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        primitive: Option<String>,
    },
    /// Evaluate the four n = 11 reference curves.
    Examples {
        #[arg(long)]
        json: bool,
        /// Override the modulus of GF(2^11); the generator stays x.
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Classify one curve and print its record as JSON.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "0x0")]
        a: String,
        #[arg(long, default_value = "0x0")]
        b: String,
        #[arg(long, default_value = "0x0")]
        c: String,
        #[arg(long, default_value = "0x0")]
        d: String,
    },
    /// Scan many curves and summarize the spectrum of S = N - (q + 1).
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = DChoice::Two)]
        d_policy: DChoice,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Permit exhaustive scans beyond n = 7.
        #[arg(long)]
        allow_large_exhaustive: bool,
    },
    /// Enumerate products of simple supersingular Weil polynomials as CSV.
    Zeta {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum DChoice {
    Two,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn opt_hex(s: &Option<String>) -> Result<Option<u64>, ssgenus4::FieldError> {
    s.as_deref().map(parse_hex).transpose()
}

fn field_for(n: u32, modulus: &Option<String>) -> Result<FieldSpec, ssgenus4::FieldError> {
    match opt_hex(modulus)? {
        Some(m) => FieldSpec::new(n, m, None),
        None => FieldSpec::with_default_modulus(n),
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Field {
            n,
            modulus,
            primitive,
        } => {
            let field = opt_hex(&primitive).and_then(|p| {
                let base = field_for(n, &modulus)?;
                FieldSpec::new(n, base.modulus(), p)
            });
            match field {
                Ok(field) => {
                    let mut v = serde_json::to_value(field.to_config()).expect("config serializes");
                    v["trace_mask_hex"] = format!("{:#x}", field.trace_mask()).into();
                    println!("{v}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Examples { json, modulus } => {
            let rows = match opt_hex(&modulus).and_then(survey::golden_examples) {
                Ok(rows) => rows,
                Err(e) => return usage_error(e),
            };
            if json {
                for r in &rows {
                    println!("{}", serde_json::to_string(r).expect("rows serialize"));
                }
            } else {
                println!(
                    "{:<56} {:>9} {:>6} {:>12} ok",
                    "curve", "expected", "S", "q+1-N"
                );
                for r in &rows {
                    println!(
                        "{:<56} {:>9} {:>6} {:>12} {}",
                        r.curve, r.expected, r.got, r.frobenius_trace, r.ok
                    );
                }
            }
            if rows.iter().all(|r| r.ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Command::Classify {
            n,
            modulus,
            f,
            a,
            b,
            c,
            d,
        } => {
            let field = match field_for(n, &modulus) {
                Ok(field) => field,
                Err(e) => return usage_error(e),
            };
            let parse = |s: &str| field.parse_element(s);
            let params = match (|| {
                Ok::<_, ssgenus4::FieldError>([
                    parse(&f)?,
                    parse(&a)?,
                    parse(&b)?,
                    parse(&c)?,
                    parse(&d)?,
                ])
            })() {
                Ok([f, a, b, c, d]) => CurveParams::new(f, a, b, c, d),
                Err(e) => return usage_error(e),
            };
            let record = match params.and_then(|p| curve_count::classify_curve(&field, &p)) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            println!(
                "{}",
                serde_json::to_string(&record).expect("records serialize")
            );
            if record.consistent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Command::Scan {
            n,
            modulus,
            mode,
            samples,
            seed,
            workers,
            d_policy,
            out,
            format,
            allow_large_exhaustive,
        } => {
            let modulus = match opt_hex(&modulus) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            let cfg = ScanConfig {
                n,
                modulus,
                mode: match mode {
                    Mode::Exhaustive => ScanMode::Exhaustive,
                    Mode::Sample => ScanMode::Sample,
                },
                sample_size: samples,
                seed,
                d_policy: match d_policy {
                    DChoice::Two => DPolicy::TwoRepresentatives,
                    DChoice::Full => DPolicy::Full,
                },
                workers,
                output_path: out,
                format: match format {
                    Format::Csv => OutputFormat::Csv,
                    Format::Jsonl => OutputFormat::JsonLines,
                },
                allow_large_exhaustive,
            };
            if cfg.mode == ScanMode::Sample {
                eprintln!("# xoshiro256++ seed {seed:#x}");
            }
            match survey::run_scan(&cfg) {
                Ok(summary) => {
                    println!(
                        "{}",
                        serde_json::to_string(&summary).expect("summary serializes")
                    );
                    if summary.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VIOLATION)
                    }
                }
                Err(survey::ScanError::Io(e)) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_USAGE)
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Zeta { n, degree } => match survey::zeta_report(n, degree) {
            Ok(report) => {
                print!("{}", report.to_csv());
                println!("{}", report.cross_check_line());
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(e),
        },
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
