//! `pgolden` command-line front end.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 when
//! any verification fails, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::charpoly::{golden_ratio, golden_section};
use crate::mpnum::{check_digits, MPReal, DEFAULT_MAX_DIGITS};
use crate::relations::{
    approx_coefficient, convergents, parameter_for, printed_coefficient, verify, verify_batch,
    BatchPlan, RelationError, RelationId, RelationReport, VerifyOptions, MIN_DIGITS,
};
use crate::selftest;
use crate::sequences::{generate, nth_term_fast, ratio_at};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable that lowers the digit ceiling.
pub const MAX_DIGITS_ENV: &str = "PGOLDEN_MAX_DIGITS";

#[derive(Parser, Debug)]
#[command(
    name = "pgolden",
    version,
    about = "Additive p-sequences, p-golden ratios and e/π/Φ relation checks"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Fractional digits of every printed number.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Seed for randomized sweeps.
    #[arg(long = "seed-rng", global = true, default_value_t = 0)]
    seed_rng: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first terms of a p-sequence.
    Seq {
        #[arg(long)]
        p: usize,
        /// Comma-separated seeds; defaults to 0,...,0,1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seeds: Option<Vec<BigInt>>,
        #[arg(long)]
        count: usize,
    },
    /// Compute term t_n through companion-matrix powers.
    Nth {
        #[arg(long)]
        p: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seeds: Option<Vec<BigInt>>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Print Φ_p, or the term ratio t_(n+1)/t_n when --n is given.
    Ratio {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seeds: Option<Vec<BigInt>>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Divide a segment into p golden pieces.
    Section {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        total: String,
    },
    /// Check relations and print residual reports.
    Verify {
        /// e1, e2, q3, o4, r17..r24 or all.
        #[arg(long, default_value = "all")]
        relation: String,
        /// Largest p for R22..R24 when --relation all.
        #[arg(long = "p-max", default_value_t = 16)]
        p_max: u32,
        /// p for a single R22..R24 check.
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Root count for a single E2 check.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Random directions for Q3/O4.
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// The coefficient c = (e - Φ²)Φ and its continued-fraction convergents.
    Approx {
        #[arg(long = "max-den", default_value_t = 400_000)]
        max_den: u64,
    },
    /// Seeded property sweep over every module.
    Selftest,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn digit_ceiling() -> u32 {
    std::env::var(MAX_DIGITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map_or(DEFAULT_MAX_DIGITS, |v| v.min(DEFAULT_MAX_DIGITS))
}

fn default_seeds(p: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); p];
    if let Some(last) = s.last_mut() {
        *last = BigInt::one();
    }
    s
}

fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(err, "pgolden: {first} (see --help)");
            return EXIT_USAGE;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "pgolden: {msg} (see --help)");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, u8), UsageError> {
    let Common {
        digits,
        format,
        seed_rng,
    } = cli.common.clone();
    check_digits(digits, digit_ceiling()).map_err(|e| usage(format!("--digits: {e}")))?;

    match &cli.command {
        Command::Seq { p, seeds, count } => {
            let seeds = seeds.clone().unwrap_or_else(|| default_seeds(*p));
            let seq =
                generate(*p, &seeds, *count).map_err(|e| usage(format!("--seeds/--count: {e}")))?;
            let terms: Vec<String> = seq.terms().iter().map(BigInt::to_string).collect();
            Ok((render_seq(format, *p, &seeds, &terms), EXIT_OK))
        }
        Command::Nth { p, seeds, n } => {
            let n = u64::try_from(*n)
                .map_err(|_| usage(format!("--n must be nonnegative, got {n}")))?;
            let seeds = seeds.clone().unwrap_or_else(|| default_seeds(*p));
            let term = nth_term_fast(*p, &seeds, n).map_err(|e| usage(format!("--seeds: {e}")))?;
            let text = match format {
                Format::Plain => format!("{term}\n"),
                Format::Json => json_line(&json!({"p": p, "n": n, "term": term.to_string()})),
                Format::Csv => format!("p,n,term\n{p},{n},{term}\n"),
            };
            Ok((text, EXIT_OK))
        }
        Command::Ratio {
            p,
            seeds,
            n: Some(n),
        } => {
            let n = u64::try_from(*n)
                .map_err(|_| usage(format!("--n must be nonnegative, got {n}")))?;
            let seeds = seeds.clone().unwrap_or_else(|| default_seeds(*p as usize));
            let r = ratio_at(*p as usize, &seeds, n).map_err(|e| usage(format!("--n: {e}")))?;
            let value = r.to_decimal(digits).to_string();
            let (num, den) = (r.numerator.to_string(), r.denominator.to_string());
            let text = match format {
                Format::Plain => format!("{num}/{den} {value}\n"),
                Format::Json => json_line(&json!({
                    "p": p, "n": n, "numerator": num, "denominator": den, "value": value
                })),
                Format::Csv => {
                    format!("p,n,numerator,denominator,value\n{p},{n},{num},{den},{value}\n")
                }
            };
            Ok((text, EXIT_OK))
        }
        Command::Ratio { p, n: None, .. } => {
            let g = golden_ratio(*p, digits).map_err(|e| usage(format!("--p: {e}")))?;
            let value = g.value().to_string();
            let text = match format {
                Format::Plain => format!("{value}\n"),
                Format::Json => json_line(&json!({"p": p, "digits": digits, "value": value})),
                Format::Csv => format!("p,digits,value\n{p},{digits},{value}\n"),
            };
            Ok((text, EXIT_OK))
        }
        Command::Section { p, total } => {
            let total: MPReal = total.parse().map_err(|e| usage(format!("--total: {e}")))?;
            let s = golden_section(*p, &total, digits)
                .map_err(|e| usage(format!("--p/--total: {e}")))?;
            let lengths = s.rendered_lengths();
            let text = match format {
                Format::Plain => lengths.iter().map(|l| format!("{l}\n")).collect(),
                Format::Json => json_line(&json!({
                    "p": p,
                    "digits": digits,
                    "total": s.total.render(digits),
                    "ratio": s.phi.render(digits),
                    "lengths": lengths,
                })),
                Format::Csv => {
                    let mut t = String::from("k,length\n");
                    for (k, l) in lengths.iter().enumerate() {
                        t.push_str(&format!("{},{l}\n", k + 1));
                    }
                    t
                }
            };
            Ok((text, EXIT_OK))
        }
        Command::Verify {
            relation,
            p_max,
            p,
            n,
            count,
        } => {
            if digits < MIN_DIGITS {
                return Err(usage(format!(
                    "--digits must be at least {MIN_DIGITS} for verify"
                )));
            }
            let mut opts = VerifyOptions::new(digits);
            opts.p = *p;
            opts.n = *n;
            opts.vectors = *count;
            opts.seed = seed_rng;
            let reports = if relation.eq_ignore_ascii_case("all") {
                if *p_max < 2 {
                    return Err(usage("--p-max must be at least 2"));
                }
                verify_batch(&opts, &BatchPlan::new(*p_max))
            } else {
                let id: RelationId = relation
                    .parse()
                    .map_err(|e| usage(format!("--relation: {e}")))?;
                match verify(id, &opts) {
                    Ok(r) => vec![r],
                    Err(e) if is_usage(&e) => return Err(usage(format!("{e}"))),
                    Err(e) => vec![RelationReport::failed(
                        id,
                        parameter_for(id, &opts),
                        digits,
                        &e,
                    )],
                }
            };
            let code = if reports.iter().all(|r| r.pass) {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok((render_reports(format, &reports), code))
        }
        Command::Approx { max_den } => {
            if digits < MIN_DIGITS {
                return Err(usage(format!(
                    "--digits must be at least {MIN_DIGITS} for approx"
                )));
            }
            if *max_den == 0 {
                return Err(usage("--max-den must be at least 1"));
            }
            Ok((render_approx(format, digits, *max_den)?, EXIT_OK))
        }
        Command::Selftest => {
            if digits < MIN_DIGITS {
                return Err(usage(format!(
                    "--digits must be at least {MIN_DIGITS} for selftest"
                )));
            }
            let checks = selftest::run(digits, seed_rng);
            let code = if checks.iter().all(|c| c.pass) {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok((render_checks(format, &checks), code))
        }
    }
}

fn is_usage(e: &RelationError) -> bool {
    use crate::charpoly::CharPolyError;
    use crate::hypercomplex::HypercomplexError;
    matches!(
        e,
        RelationError::DigitsTooSmall(_)
            | RelationError::UnknownRelation(_)
            | RelationError::DirectionLength { .. }
            | RelationError::CharPoly(CharPolyError::OrderTooSmall(_))
            | RelationError::Hypercomplex(HypercomplexError::TooFewRoots(_))
    )
}

fn json_line(v: &Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("serializable")
    )
}

fn render_seq(format: Format, p: usize, seeds: &[BigInt], terms: &[String]) -> String {
    match format {
        Format::Plain => format!("{}\n", terms.join(",")),
        Format::Json => json_line(&json!({
            "p": p,
            "seeds": seeds.iter().map(BigInt::to_string).collect::<Vec<_>>(),
            "terms": terms,
        })),
        Format::Csv => {
            let mut t = String::from("n,term\n");
            for (n, term) in terms.iter().enumerate() {
                t.push_str(&format!("{n},{term}\n"));
            }
            t
        }
    }
}

pub const REPORT_COLUMNS: [&str; 8] = [
    "relation_id",
    "p",
    "digits",
    "lhs",
    "rhs",
    "residual",
    "threshold",
    "pass",
];

/// One report as a JSON object keyed by [`REPORT_COLUMNS`]. Numbers other
/// than `p` and `digits` are decimal strings.
pub fn report_json(r: &RelationReport) -> Value {
    json!({
        "relation_id": r.relation_id.as_str(),
        "p": r.parameter,
        "digits": r.digits,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "residual": r.residual.as_ref().map(|x| x.render(r.digits)),
        "threshold": r.threshold.render(r.digits),
        "pass": r.pass,
    })
}

pub fn report_csv(r: &RelationReport) -> String {
    csv_line(&[
        r.relation_id.to_string(),
        r.parameter.map(|p| p.to_string()).unwrap_or_default(),
        r.digits.to_string(),
        r.lhs.clone(),
        r.rhs.clone(),
        r.residual
            .as_ref()
            .map(|x| x.render(r.digits))
            .unwrap_or_default(),
        r.threshold.render(r.digits),
        r.pass.to_string(),
    ])
}

fn render_reports(format: Format, reports: &[RelationReport]) -> String {
    match format {
        Format::Plain => reports
            .iter()
            .map(|r| {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                let param = match (r.relation_id, r.parameter) {
                    (RelationId::E2, Some(n)) => format!(" n={n}"),
                    (_, Some(p)) => format!(" p={p}"),
                    _ => String::new(),
                };
                match &r.error {
                    Some(e) => format!("{verdict} {}{param} error: {e}\n", r.relation_id),
                    None => format!(
                        "{verdict} {}{param} {} lhs={} rhs={} residual={} threshold={}\n",
                        r.relation_id,
                        r.kind.as_str(),
                        r.lhs,
                        r.rhs,
                        r.residual
                            .as_ref()
                            .map(|x| x.render(r.digits))
                            .unwrap_or_default(),
                        r.threshold.render(r.digits),
                    ),
                }
            })
            .collect(),
        Format::Json => json_line(&Value::Array(reports.iter().map(report_json).collect())),
        Format::Csv => {
            let mut t = csv_line(&REPORT_COLUMNS.map(String::from)) + "\n";
            for r in reports {
                t.push_str(&report_csv(r));
                t.push('\n');
            }
            t
        }
    }
}

fn render_approx(format: Format, digits: u32, max_den: u64) -> Result<String, UsageError> {
    let c = approx_coefficient(digits)?;
    let printed = printed_coefficient();
    let printed_dec = MPReal::from_ratio(&printed, digits + 10);
    let gap = (&c.with_scale(digits + 10) - &printed_dec).abs();
    let cs = convergents(&c, max_den);
    let listed = cs.iter().any(|q| q == &printed);
    let cs: Vec<String> = cs
        .iter()
        .map(|q| format!("{}/{}", q.numer(), q.denom()))
        .collect();
    Ok(match format {
        Format::Plain => {
            let mut t = format!(
                "coefficient {}\nprinted {}/{} {}\ndistance {}\nprinted_is_convergent {listed}\n",
                c,
                printed.numer(),
                printed.denom(),
                printed_dec.render(digits),
                gap.render(digits),
            );
            for q in &cs {
                t.push_str(&format!("convergent {q}\n"));
            }
            t
        }
        Format::Json => json_line(&json!({
            "digits": digits,
            "coefficient": c.to_string(),
            "printed": format!("{}/{}", printed.numer(), printed.denom()),
            "printed_decimal": printed_dec.render(digits),
            "distance": gap.render(digits),
            "printed_is_convergent": listed,
            "convergents": cs,
        })),
        Format::Csv => {
            let mut t = String::from("k,convergent\n");
            for (k, q) in cs.iter().enumerate() {
                t.push_str(&format!("{k},{q}\n"));
            }
            t
        }
    })
}

fn render_checks(format: Format, checks: &[selftest::Check]) -> String {
    match format {
        Format::Plain => checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect(),
        Format::Json => json_line(&Value::Array(
            checks
                .iter()
                .map(|c| json!({"check": c.name, "pass": c.pass, "detail": c.detail}))
                .collect(),
        )),
        Format::Csv => {
            let mut t = String::from("check,pass,detail\n");
            for c in checks {
                t.push_str(&csv_line(&[
                    c.name.clone(),
                    c.pass.to_string(),
                    c.detail.replace(',', ";"),
                ]));
                t.push('\n');
            }
            t
        }
    }
}
