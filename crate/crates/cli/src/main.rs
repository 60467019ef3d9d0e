//! `recterm`: synthesize, evaluate and verify arithmetic terms for linear
//! recurrences.
//!
//! Recurrences use the homogeneous convention
//! `s(n+d) + a_1 s(n+d-1) + ... + a_d s(n) = 0`, so Fibonacci is
//! `{"alphas": [-1, -1], "initial": [0, 1]}`.

mod selftest;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use recterm::bounds::MinimalSearch;
use recterm::catalog;
use recterm::eval::{verify_with, NStatus, VerificationReport};
use recterm::render::{render, to_json_value, Format};
use recterm::spec::parse_spec;
use recterm::synth::{pell_recurrences, synth, synth_signed, BaseStrategy, HalfMode, RepKind};
use recterm::{Error, Execution, Mode, Recurrence, Representation};
use serde_json::json;

#[derive(Parser)]
#[command(name = "recterm", version, about = "Arithmetic terms for C-recursive sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a formula for a recurrence given as JSON.
    Synth {
        #[command(flatten)]
        synth: SynthArgs,
        /// Last index checked for the JSON verification block.
        #[arg(long, default_value_t = 40)]
        to: u64,
    },
    /// Build a formula and compare it with the recurrence on a range.
    Verify {
        #[command(flatten)]
        synth: SynthArgs,
        /// First index checked; defaults to the representation's n0.
        #[arg(long)]
        from: Option<u64>,
        #[arg(long, default_value_t = 40)]
        to: u64,
    },
    /// Evaluate the formula at one index.
    Eval {
        #[command(flatten)]
        synth: SynthArgs,
        #[arg(long)]
        n: u64,
    },
    /// Formulas for well-known sequences with published bases.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Fundamental solution of x^2 - k y^2 = 1 and its recurrences.
    Pell {
        #[arg(long)]
        k: u64,
        /// Number of solution pairs to print.
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
    /// Randomized agreement checks between the evaluators and the oracle.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Run {
        /// `all`, a sequence name such as `pell7`, or an entry label.
        #[arg(default_value = "all")]
        name: String,
        /// Threads for running entries; output order is unchanged.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RepArg {
    Rq,
    Rr,
}

#[derive(Clone, Copy, ValueEnum)]
enum HalfArg {
    Floor,
    Ceil,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignedArg {
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

#[derive(Args)]
struct SynthArgs {
    /// Recurrence spec file, or `-` for standard input.
    spec: PathBuf,
    #[arg(long, value_enum, default_value = "rr")]
    rep: RepArg,
    #[arg(long, value_enum, default_value = "ceil")]
    half: HalfArg,
    /// `auto-min` (smallest base passing a window check), `auto-cert`, or an integer.
    #[arg(long, default_value = "auto-min")]
    base: String,
    /// Start index claimed for a pinned base.
    #[arg(long, default_value_t = 1)]
    n0: u64,
    #[arg(long, value_enum, default_value = "auto")]
    signed: SignedArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Machine-readable output document.
    #[arg(long)]
    json: bool,
    /// Window for `auto-min`.
    #[arg(long, default_value_t = 64)]
    window: u64,
    /// Largest base tried by `auto-min`.
    #[arg(long, default_value_t = 4096)]
    b_cap: u64,
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: anyhow::Error) -> Self {
        Failure { code: 2, error }
    }

    fn runtime(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::InvalidRecurrence(_)
            | Error::OrderTooSmall { .. }
            | Error::NegativeTermsPresent { .. }
            | Error::SquareOrSmall { .. } => Failure::usage(e.into()),
            _ => Failure::runtime(e.into()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_spec(path: &PathBuf) -> CliResult<Recurrence> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")
            .map_err(Failure::usage)?;
        buf
    } else {
        std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::usage)?
    };
    Ok(parse_spec(&text)?.to_recurrence()?)
}

fn build(args: &SynthArgs) -> CliResult<(Recurrence, Representation)> {
    let rec = read_spec(&args.spec)?;
    let kind = match args.rep {
        RepArg::Rq => RepKind::RemQuot,
        RepArg::Rr => RepKind::RemRem,
    };
    let half = match args.half {
        HalfArg::Floor => HalfMode::Floor,
        HalfArg::Ceil => HalfMode::Ceil,
    };
    let strategy = match args.base.as_str() {
        "auto-min" => BaseStrategy::Minimal(MinimalSearch {
            window: args.window,
            b_cap: args.b_cap,
            ..MinimalSearch::default()
        }),
        "auto-cert" => BaseStrategy::Certified,
        other => {
            let base: BigUint = other
                .parse()
                .ok()
                .filter(|b| *b >= BigUint::from(2u32))
                .ok_or_else(|| {
                    Failure::usage(anyhow!(
                        "--base must be auto-min, auto-cert or an integer >= 2, got `{other}`"
                    ))
                })?;
            BaseStrategy::Pinned { base, n0: args.n0 }
        }
    };
    let signed = match args.signed {
        SignedArg::On => true,
        SignedArg::Off => false,
        SignedArg::Auto => rec
            .oracle_terms(recterm::synth::NEGATIVE_SCAN)
            .iter()
            .any(|s| s.sign() == num_bigint::Sign::Minus),
    };
    let rep = if signed {
        synth_signed(&rec, kind, half, &strategy)?
    } else {
        synth(&rec, kind, half, &strategy)?
    };
    Ok((rec, rep))
}

fn provenance(rep: &Representation) -> String {
    let cert = rep.cert();
    match cert.mode {
        Mode::Certified => format!("base {} certified for every n >= {}", cert.b, cert.n0),
        Mode::Empirical => format!(
            "base {} heuristic: checked only for n in [{}, {}]",
            cert.b,
            cert.n0,
            cert.n0 + cert.window
        ),
        Mode::Pinned => format!("base {} pinned by the caller, n0 = {} (unchecked)", cert.b, cert.n0),
    }
}

fn format_of(arg: FormatArg) -> Format {
    match arg {
        FormatArg::Text => Format::Text,
        FormatArg::Latex => Format::Latex,
        FormatArg::Json => Format::Json,
    }
}

fn json_document(rep: &Representation, report: &VerificationReport) -> serde_json::Value {
    json!({
        "formula": render(rep, Format::Text),
        "representation": to_json_value(rep),
        "verification": {
            "range": [report.range.0, report.range.1],
            "empirical_n0": report.empirical_n0,
            "failures": report.failures(),
        },
    })
}

fn print_report(report: &VerificationReport) {
    let passed = report.entries.iter().filter(|e| e.status.is_pass()).count();
    println!(
        "{}: {passed} of {} pass on [{}, {}]",
        report.id,
        report.entries.len(),
        report.range.0,
        report.range.1
    );
    for e in &report.entries {
        match &e.status {
            NStatus::Pass => {}
            NStatus::Mismatch { got, expected } => {
                println!("  n = {}: got {got}, expected {expected}", e.n)
            }
            NStatus::Error(msg) => println!("  n = {}: {msg}", e.n),
        }
    }
    match report.empirical_n0 {
        Some(n0) => println!("empirical n0 = {n0}"),
        None => println!("empirical n0: none in range"),
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Synth { synth, to } => {
            let (rec, rep) = build(&synth)?;
            if synth.json {
                let from = rep.n0();
                let report = verify_with(&rep, &rec, from, to.max(from), Execution::Parallel);
                println!("{:#}", json_document(&rep, &report));
            } else {
                println!("{}", render(&rep, format_of(synth.format)));
                if !matches!(synth.format, FormatArg::Json) {
                    println!("# {}", provenance(&rep));
                }
            }
            Ok(0)
        }
        Command::Verify { synth, from, to } => {
            let (rec, rep) = build(&synth)?;
            let from = from.unwrap_or(rep.n0());
            if from > to {
                return Err(Failure::usage(anyhow!("--from {from} exceeds --to {to}")));
            }
            let report = verify_with(&rep, &rec, from, to, Execution::Parallel);
            if synth.json {
                println!("{:#}", json_document(&rep, &report));
            } else {
                println!("{}", render(&rep, format_of(synth.format)));
                println!("# {}", provenance(&rep));
                print_report(&report);
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Eval { synth, n } => {
            let (rec, rep) = build(&synth)?;
            let value = recterm::eval_rep_fast(&rep, n)?;
            let expected = &rec.oracle_terms(n as usize)[n as usize];
            if synth.json {
                println!(
                    "{:#}",
                    json!({"n": n, "value": value.to_string(), "oracle": expected.to_string()})
                );
            } else {
                println!("{value}");
            }
            Ok(if &value == expected { 0 } else { 1 })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for e in catalog::entries() {
                    println!(
                        "{:<16} {} b={:<4} {:?} n>={}  {}",
                        e.label, e.oeis, e.base, e.half, e.claimed_n0, e.expected_text
                    );
                }
                Ok(0)
            }
            CatalogAction::Run { name, jobs } => {
                let exec = if jobs > 1 {
                    Execution::Parallel
                } else {
                    Execution::Sequential
                };
                let run = if jobs > 1 {
                    let pool = rayon_pool(jobs)?;
                    pool.install(|| catalog::run_catalog(&name, exec))
                } else {
                    catalog::run_catalog(&name, exec)
                }?;
                print!("{}", run.report_text());
                Ok(run.exit_code() as u8)
            }
        },
        Command::Pell { k, terms } => {
            let pair = pell_recurrences(k)?;
            println!("k = {k}: (x(1), y(1)) = ({}, {})", pair.x1, pair.y1);
            println!("shared recurrence: s(n+2) = {} s(n+1) - s(n)", 2u32 * &pair.x1);
            let last = terms.saturating_sub(1);
            let xs = pair.rec_x.oracle_terms(last);
            let ys = pair.rec_y.oracle_terms(last);
            let mut ok = true;
            for (n, (x, y)) in xs.iter().zip(&ys).enumerate().take(terms) {
                let check = x * x - num_bigint::BigInt::from(k) * y * y;
                ok &= check == 1.into();
                println!("n = {n}: x = {x}, y = {y}, x^2 - {k} y^2 = {check}");
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Selftest { seed, cases } => {
            let summary = selftest::run(seed, cases);
            print!("{}", summary.text);
            Ok(if summary.ok { 0 } else { 1 })
        }
    }
}

fn rayon_pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::runtime(e.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
