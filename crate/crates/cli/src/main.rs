//! `zpframe`: build and analyze finite wavelet systems over `Z_p` from the command line.
//!
//! Exit status: 0 on success (and "is a frame" for `report`/`dual`), 2 when the
//! system is not a frame, 1 on any input error.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use commands::{Outcome, SignalKind, EXIT_INPUT_ERROR};
use config::{RunArgs, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "zpframe", version, about = "Finite wavelet frames over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frame verdict, spectrum, bounds and tightness for a window.
    Report(RunArgs),
    /// Wavelet coefficients of --signal against the system generated by --window.
    Coeffs(RunArgs),
    /// The wavelet group, its generator, the subgroup M and its cosets.
    Group(RunArgs),
    /// Frame-operator eigenvalues of the system.
    Spectrum(RunArgs),
    /// Canonical-dual reconstruction residual.
    Dual(RunArgs),
    /// Write a test signal (impulse, ones, gaussian, or flat-spectrum).
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        kind: SignalKind,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn run(cli: &Cli) -> Result<(Outcome, RunConfig)> {
    let args = match &cli.command {
        Command::Report(a)
        | Command::Coeffs(a)
        | Command::Group(a)
        | Command::Spectrum(a)
        | Command::Dual(a) => a,
        Command::Gen { run, .. } => run,
    };
    let cfg = RunConfig::from_args(args)?;
    let outcome = match &cli.command {
        Command::Report(_) => commands::cmd_report(&cfg)?,
        Command::Coeffs(_) => commands::cmd_coeffs(&cfg)?,
        Command::Group(_) => commands::cmd_group(&cfg)?,
        Command::Spectrum(_) => commands::cmd_spectrum(&cfg)?,
        Command::Dual(_) => commands::cmd_dual(&cfg)?,
        Command::Gen { kind, .. } => commands::cmd_gen(&cfg, *kind)?,
    };
    Ok((outcome, cfg))
}

fn emit(outcome: &Outcome, cfg: &RunConfig) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.output)?,
        None => std::io::stdout().lock().write_all(outcome.output.as_bytes())?,
    }
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 });
        }
    };
    match run(&cli).and_then(|(outcome, cfg)| emit(&outcome, &cfg).map(|_| outcome.exit)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
