use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dyadic_core::constants::{atom_statistic_constant, lemma4_constant, prop2_constant, FLOAT_TOLERANCE};
use dyadic_core::field::{write_grid_csv, GridFunction, MAX_RESOLUTION};
use dyadic_core::kernels::{
    check_lower_bounds, check_upper_bound_prop2, dirichlet, fejer, lemma4_ratio, sweep, verify_9a, verify_lemma2,
    LowerBoundReports, VerificationReport,
};
use dyadic_core::maxop::{blowup_experiment, boundedness_sweep, IndexFamily};
use dyadic_core::rational::{parse_rational, RationalRepr};
use dyadic_core::{Error, Rational};

const EXIT_FAILURE: u8 = 1;
const EXIT_REFUSED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "dyadic", version, about = "Walsh-Fejer kernel tables, identity sweeps and maximal-operator experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate a Dirichlet or Fejer kernel on the level-M cosets.
    Kernel {
        #[arg(long, value_enum)]
        kind: KernelKind,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        resolution: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep an identity or pointwise bound over 1..=max-n and write a JSON report.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        max_n: u64,
        /// Constant for prop2/lemma4; defaults to the frozen value.
        #[arg(long, value_parser = rational_arg)]
        constant: Option<Rational>,
        /// Grid level M for lemma2 and lemma4.
        #[arg(long)]
        resolution: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Growth table of the restricted maximal function on the counterexample martingale.
    Blowup {
        #[arg(long, value_parser = family_arg)]
        family: IndexFamily,
        #[arg(long, value_parser = range_arg, default_value = "4..10")]
        scales: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Largest atom statistic over seeded random atoms.
    Bounded {
        #[arg(long, value_parser = family_arg)]
        family: IndexFamily,
        #[arg(long, value_parser = range_arg, default_value = "4..8")]
        levels: RangeInclusive<u32>,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        /// Defaults to the frozen constant of the family.
        #[arg(long)]
        constant: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KernelKind {
    Dirichlet,
    Fejer,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    #[value(name = "9a")]
    Identity9a,
    Lemma2,
    Prop1,
    Lemma5a,
    Cor1,
    Prop2,
    Lemma4,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn family_arg(s: &str) -> Result<IndexFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses an inclusive range `a..b`.
fn range_arg(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(EXIT_FAILURE),
        Err(e) => {
            eprintln!("dyadic: {e}");
            ExitCode::from(match e {
                Error::Precondition(_) => EXIT_REFUSED,
                Error::Io(_) => EXIT_FAILURE,
                Error::Domain(_) | Error::Resolution { .. } | Error::ResolutionCeiling { .. } | Error::Parse(_) => EXIT_USAGE,
            })
        }
    }
}

fn run(command: Command) -> dyadic_core::Result<Outcome> {
    match command {
        Command::Kernel { kind, n, resolution, format, output } => {
            let grid = match kind {
                KernelKind::Dirichlet => dirichlet(n, resolution)?,
                KernelKind::Fejer => fejer(n, resolution)?,
            };
            let out = open_output(output.as_ref())?;
            match format {
                Format::Csv => write_grid_csv(&grid, out)?,
                Format::Json => write_json(out, &grid_json(&grid)?)?,
            }
            Ok(Outcome::Pass)
        }
        Command::Verify { check, max_n, constant, resolution, output } => {
            let reports = verify(check, max_n, constant, resolution)?;
            let pass = reports.iter().all(|r| r.pass);
            for r in reports.iter().filter(|r| !r.pass) {
                if let Some(w) = r.witness {
                    eprintln!("{} failed: witness n = {}, coset {}", r.check, w.n, w.coset);
                }
            }
            let body = Value::Array(reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect());
            write_json(open_output(output.as_ref())?, &body)?;
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Blowup { family, scales, format, output } => {
            let report = blowup_experiment(&family, scales, FLOAT_TOLERANCE)?;
            let out = open_output(output.as_ref())?;
            match format {
                Format::Csv => report.write_csv(out)?,
                Format::Json => {
                    let rows: Vec<Value> = report
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "s": r.s,
                                "family": r.family,
                                "block_size": r.block_size,
                                "t_s": r.t_s,
                                "predicted_lower": r.predicted_lower,
                                "min_region_margin": r.min_region_margin,
                                "regions_tested": r.regions_tested,
                                "pass": r.pass,
                            })
                        })
                        .collect();
                    let body = json!({
                        "summary": serde_json::to_value(report.summary()).expect("serializable"),
                        "strictly_increasing": report.strictly_increasing(),
                        "rows": rows,
                    });
                    write_json(out, &body)?;
                }
            }
            Ok(if report.pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Bounded { family, levels, seeds, first_seed, constant, output } => {
            let constant = match constant.or_else(|| atom_statistic_constant(&family)) {
                Some(c) => c,
                None => return Err(Error::Precondition(format!("no frozen constant for family {family}; pass --constant"))),
            };
            if seeds == 0 {
                return Err(Error::Domain("need at least one seed".into()));
            }
            let report = boundedness_sweep(&family, levels, first_seed..first_seed + seeds, constant, FLOAT_TOLERANCE)?;
            let body = json!({
                "family": report.family,
                "per_level": report.per_level.iter().map(|&(m, v)| json!({"level": m, "max_statistic": v})).collect::<Vec<_>>(),
                "block_sizes": report.block_sizes.iter().map(|&(s, k)| json!({"s": s, "size": k})).collect::<Vec<_>>(),
                "max_statistic": report.max_statistic,
                "constant": report.constant,
                "pass": report.pass,
            });
            write_json(open_output(output.as_ref())?, &body)?;
            Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn verify(check: Check, max_n: u64, constant: Option<Rational>, resolution: Option<u32>) -> dyadic_core::Result<Vec<VerificationReport>> {
    if max_n == 0 {
        return Err(Error::Domain("--max-n must be at least 1".into()));
    }
    let lower = |pick: fn(LowerBoundReports) -> Vec<VerificationReport>| -> dyadic_core::Result<Vec<VerificationReport>> {
        let mut merged: Option<LowerBoundReports> = None;
        for n in 1..=max_n {
            let r = check_lower_bounds(n)?;
            merged = Some(match merged {
                Some(m) => m.merge(r),
                None => r,
            });
        }
        Ok(pick(merged.expect("max_n >= 1")))
    };
    Ok(match check {
        Check::Identity9a => vec![sweep(1..=max_n, verify_9a)?],
        Check::Lemma2 => {
            let m = resolution.ok_or_else(|| Error::Domain("lemma2 needs --resolution".into()))?;
            if m > MAX_RESOLUTION {
                return Err(Error::ResolutionCeiling { requested: m, ceiling: MAX_RESOLUTION });
            }
            let n = u32::try_from(max_n).map_err(|_| Error::Domain("--max-n too large for lemma2".into()))?;
            vec![sweep(0..=u64::from(n), |k| verify_lemma2(k as u32, m))?]
        }
        Check::Prop1 => lower(|r| vec![r.prop1])?,
        Check::Lemma5a => lower(|r| vec![r.lemma5a])?,
        Check::Cor1 => lower(|r| vec![r.cor1_t, r.cor1_l])?,
        Check::Prop2 => {
            let c = constant.unwrap_or_else(prop2_constant);
            vec![sweep(1..=max_n, |n| check_upper_bound_prop2(n, &c))?]
        }
        Check::Lemma4 => {
            let m = resolution.unwrap_or(3);
            let c = constant.unwrap_or_else(lemma4_constant);
            vec![sweep((1u64 << m)..=max_n, |n| lemma4_ratio(n, m, &c))?]
        }
    })
}

fn grid_json(grid: &GridFunction) -> dyadic_core::Result<Value> {
    let values = grid
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let r = RationalRepr::from_rational(v)?;
            Ok(json!({"coset_index": i, "numerator": r.num.to_string(), "denominator": r.den.to_string()}))
        })
        .collect::<dyadic_core::Result<Vec<_>>>()?;
    Ok(json!({"resolution": grid.resolution(), "values": values}))
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(mut out: impl Write, body: &Value) -> dyadic_core::Result<()> {
    serde_json::to_writer_pretty(&mut out, body)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
