//! `gammapprox`: build approximant tables, run the exact verification suites,
//! and measure convergence against high-precision reference values.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 required precision above the working cap.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammapprox_core::analysis::{
    baseline_rows, build_rows, render, sweep_rows, verify_suite, Format, RunManifest, Suite, Table,
    VerifyRow, XSpec,
};
use gammapprox_core::{fraction_string, parse_rational, Error, ExactRational, Family};

#[derive(Parser)]
#[command(name = "gammapprox", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficient tables of one family.
    Build {
        #[arg(long, default_value = "euler")]
        family: Family,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        out: Output,
    },
    /// Exact suites; exits 1 on the first counterexample.
    Verify {
        /// Suites to run (all four when omitted).
        suites: Vec<Suite>,
        /// Restrict the recurrence and integrality suites to one family.
        #[arg(long)]
        family: Option<Family>,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        out: Output,
    },
    /// Measured error and denominator growth against the asymptotic model.
    Converge {
        #[arg(long, default_value = "euler")]
        family: Family,
        /// Evaluation point `a/b` (or an integer).
        #[arg(long, default_value = "1", value_parser = parse_x)]
        x: ExactRational,
        /// Evaluate at `x·n` instead of `x`.
        #[arg(long)]
        x_scale: Option<XScale>,
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 256)]
        precision_bits: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Pilehrood and p-family baselines next to the Euler and Gompertz families at x = 1.
    Baseline {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        a_list: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p_list: Vec<u32>,
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 256)]
        precision_bits: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum XScale {
    N,
}

#[derive(Args)]
struct Range {
    /// Indices 0..=N.
    #[arg(long, conflicts_with = "n_list")]
    n_max: Option<u64>,
    /// Comma-separated indices; an empty string selects none.
    #[arg(long)]
    n_list: Option<String>,
}

impl Range {
    fn resolve(&self, default_max: u64) -> Result<(Vec<u64>, String), Error> {
        match (&self.n_list, self.n_max) {
            (Some(list), _) => {
                let ns = list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse()
                            .map_err(|_| Error::InvalidInput(format!("bad index `{s}`")))
                    })
                    .collect::<Result<Vec<u64>, _>>()?;
                let label = ns.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                Ok((ns, label))
            }
            (None, n_max) => {
                let m = n_max.unwrap_or(default_max);
                Ok(((0..=m).collect(), format!("0..={m}")))
            }
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recorded in the manifest. Defaults to SOURCE_DATE_EPOCH, then the clock.
    #[arg(long)]
    timestamp: Option<String>,
}

fn parse_x(s: &str) -> Result<ExactRational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational a/b"))
}

/// Splits `euler-p:3` into `("euler-p", Some(3))`.
fn family_parts(f: Family) -> (String, Option<u32>) {
    match f {
        Family::EulerP(p) => ("euler-p".into(), Some(p)),
        Family::Pilehrood(a) => ("pilehrood".into(), Some(a)),
        other => (other.to_string(), None),
    }
}

fn timestamp(given: &Option<String>) -> String {
    if let Some(t) = given {
        return t.clone();
    }
    if let Ok(t) = std::env::var("SOURCE_DATE_EPOCH") {
        return t;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_default()
}

struct ManifestParts {
    command: &'static str,
    family: Option<String>,
    parameter: Option<u32>,
    x: String,
    x_scale: Option<String>,
    n_range: String,
    precision_bits: u64,
}

fn manifest(parts: ManifestParts, out: &Output) -> RunManifest {
    RunManifest {
        command: parts.command.to_string(),
        family: parts.family,
        parameter: parts.parameter,
        x: parts.x,
        x_scale: parts.x_scale,
        n_range: parts.n_range,
        precision_bits: parts.precision_bits,
        output_format: out.format,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp(&out.timestamp),
    }
}

enum Failure {
    Verify,
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn emit(text: String, out: &Output) -> Result<(), Failure> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(Failure::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { family, range, out } => {
            let (ns, n_range) = range.resolve(10)?;
            let (name, parameter) = family_parts(family);
            let rows = build_rows(family, &ns)?;
            let m = manifest(
                ManifestParts {
                    command: "build",
                    family: Some(name),
                    parameter,
                    x: "1".into(),
                    x_scale: None,
                    n_range,
                    precision_bits: 0,
                },
                &out,
            );
            emit(render(&Table { manifest: m, rows }, out.format)?, &out)
        }
        Command::Verify {
            suites,
            family,
            range,
            out,
        } => {
            let (ns, n_range) = range.resolve(50)?;
            let suites = if suites.is_empty() {
                vec![
                    Suite::Recurrence,
                    Suite::Integrality,
                    Suite::Crosscheck,
                    Suite::Laguerre,
                ]
            } else {
                suites
            };
            let families: Vec<Family> = family.into_iter().collect();
            let mut rows = Vec::new();
            for suite in suites {
                let report = verify_suite(suite, &ns, &families)?;
                let status = if report.passed { "PASS" } else { "FAIL" };
                eprintln!("{status} {suite}: {} checks", report.checks);
                if let Some(c) = &report.first_counterexample {
                    eprintln!("  first counterexample: {c}");
                }
                rows.push(VerifyRow::from(&report));
            }
            let (name, parameter) = family.map(family_parts).unzip();
            let m = manifest(
                ManifestParts {
                    command: "verify",
                    family: name,
                    parameter: parameter.flatten(),
                    x: "1".into(),
                    x_scale: None,
                    n_range,
                    precision_bits: 0,
                },
                &out,
            );
            let failed = rows.iter().any(|r| !r.passed);
            emit(render(&Table { manifest: m, rows }, out.format)?, &out)?;
            if failed {
                Err(Failure::Verify)
            } else {
                Ok(())
            }
        }
        Command::Converge {
            family,
            x,
            x_scale,
            range,
            precision_bits,
            out,
        } => {
            let (ns, n_range) = range.resolve(32)?;
            let spec = XSpec {
                x: x.clone(),
                scale_with_n: x_scale.is_some(),
            };
            let rows = sweep_rows(family, &spec, &ns, precision_bits)?;
            let (name, parameter) = family_parts(family);
            let m = manifest(
                ManifestParts {
                    command: "converge",
                    family: Some(name),
                    parameter,
                    x: fraction_string(&x),
                    x_scale: x_scale.map(|_| "n".into()),
                    n_range,
                    precision_bits,
                },
                &out,
            );
            emit(render(&Table { manifest: m, rows }, out.format)?, &out)
        }
        Command::Baseline {
            a_list,
            p_list,
            range,
            precision_bits,
            out,
        } => {
            let (ns, n_range) = range.resolve(32)?;
            let rows = baseline_rows(&ns, &a_list, &p_list, precision_bits)?;
            let mut families: Vec<String> =
                a_list.iter().map(|a| format!("pilehrood:{a}")).collect();
            families.extend(p_list.iter().map(|p| format!("euler-p:{p}")));
            families.extend(["euler".to_string(), "gompertz".to_string()]);
            let m = manifest(
                ManifestParts {
                    command: "baseline",
                    family: Some(families.join(" ")),
                    parameter: None,
                    x: "1".into(),
                    x_scale: None,
                    n_range,
                    precision_bits,
                },
                &out,
            );
            emit(render(&Table { manifest: m, rows }, out.format)?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) => 2,
                Error::PrecisionInfeasible { .. } => 3,
                Error::Internal(_) => 1,
            })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(2)
        }
    }
}
