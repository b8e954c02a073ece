//! `nnkf` command-line front end.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "nnkf", version, about = "Exact Newton-number computations on lattice supports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kouchnirenko Newton numbers of the supports.
    NewtonNumber(Options),
    /// Mixed volume of a polytope family or of daughter sub-polytopes.
    MixedVolume(Options),
    /// Asymptotics of the scaled system and their multiplicities.
    SystemAsymptotics(Options),
    /// Asymptotics of critical points under the deformation, including raised and dropped ones.
    CriticalAsymptotics(Options),
    /// Non-negative formula for the difference of Newton numbers.
    NonnegFormula(Options),
    /// Mixed volume of a semi-interlaced family via the suture matrix.
    SemiInterlacedMv(Options),
    /// Smallest positive Newton-number drop under one-point support expansions.
    FirstJump(Options),
    /// Decides whether two nested supports have equal Newton numbers.
    MonotonicCheck(Options),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// JSON instance file.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Compare totals with the classical formula.
    #[arg(long)]
    verify: bool,
    /// Report a failed verification as a warning instead of exiting with status 2.
    #[arg(long)]
    warn_only: bool,
    /// Keep the raw support instead of reducing it to the vertices of the Newton polyhedron.
    #[arg(long)]
    keep_support: bool,
    /// Refuse instances of dimension above this bound.
    #[arg(long, default_value_t = 5)]
    max_dim: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (name, opts) = match &cli.command {
        Command::NewtonNumber(o) => ("newton-number", o),
        Command::MixedVolume(o) => ("mixed-volume", o),
        Command::SystemAsymptotics(o) => ("system-asymptotics", o),
        Command::CriticalAsymptotics(o) => ("critical-asymptotics", o),
        Command::NonnegFormula(o) => ("nonneg-formula", o),
        Command::SemiInterlacedMv(o) => ("semi-interlaced-mv", o),
        Command::FirstJump(o) => ("first-jump", o),
        Command::MonotonicCheck(o) => ("monotonic-check", o),
    };
    let text = match std::fs::read_to_string(&opts.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", opts.input.display());
            return ExitCode::from(1);
        }
    };
    let settings = commands::Settings { verify: opts.verify, keep_support: opts.keep_support, max_dim: opts.max_dim };
    match commands::run(name, &text, &settings) {
        Ok(result) => {
            let out = match opts.format {
                Format::Json => result.to_json(),
                Format::Table => result.to_table(),
            };
            print!("{out}");
            if let Some(v) = result.verification.as_ref().filter(|v| !v.matched) {
                eprintln!("verification failed: computed {}, classical {}", v.computed, v.difference);
                if opts.warn_only {
                    eprintln!("warning: continuing after failed verification");
                }
            }
            ExitCode::from(success_status(&result, opts.warn_only))
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// Exit status of a completed run: 2 on a failed verification unless downgraded to a warning.
fn success_status(result: &nnkf::io::ResultFile, warn_only: bool) -> u8 {
    match &result.verification {
        Some(v) if !v.matched && !warn_only => 2,
        _ => 0,
    }
}
