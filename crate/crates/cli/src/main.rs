use clap::{Args, Parser, Subcommand};
use kgkratzer_cli::config::{Format, Mode};
use kgkratzer_cli::{run, Overrides, EXIT_ERROR};
use std::path::PathBuf;
use std::process::ExitCode;

/// Bound states of the D-dimensional Klein-Gordon equation with a
/// ring-shaped Kratzer potential.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relativistic and nonrelativistic levels for every configured state.
    Spectrum(Common),
    /// Sampled radial and polar wavefunctions.
    Wavefn(Common),
    /// Run the self-checks; exit code 3 if any fails.
    Verify(Common),
    /// Sweep one parameter.
    Scan(Common),
    /// Coulomb limit: closed form, series and root solve.
    Coulomb(Common),
}

#[derive(Args)]
struct Common {
    /// JSON configuration file; built-in defaults when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, common) = match cli.command {
        Command::Spectrum(c) => (Mode::Spectrum, c),
        Command::Wavefn(c) => (Mode::Wavefn, c),
        Command::Verify(c) => (Mode::Verify, c),
        Command::Scan(c) => (Mode::Scan, c),
        Command::Coulomb(c) => (Mode::Coulomb, c),
    };
    let overrides = Overrides {
        config: common.config,
        out: common.out,
        format: common.format,
    };
    let code = match run(mode, &overrides) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code as u8)
}
