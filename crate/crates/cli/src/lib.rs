//! Command-line front end: JSON-configured runs written as CSV or JSON.

pub mod commands;
pub mod config;
pub mod table;
pub mod verify;

use anyhow::{Context, Result};
use config::{Format, Mode, RunConfig};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ALL_FAILED: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Per-invocation overrides taken from the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn verify_table(report: &verify::Report) -> Table {
    let mut t = Table::new(["name", "status", "measured", "tolerance", "detail"]);
    for c in &report.checks {
        let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        t.push(vec![
            Cell::from(c.name),
            Cell::from(status),
            Cell::from(c.measured),
            Cell::from(c.tolerance),
            Cell::from(c.detail.clone()),
        ]);
    }
    t
}

/// Loads and validates the configuration, runs `mode` and writes the result.
/// Returns the process exit code.
pub fn run(mode: Mode, overrides: &Overrides) -> Result<i32> {
    let config = match &overrides.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    config.validate(mode)?;
    let format = overrides.format.or(config.output.format).unwrap_or_default();
    let path = overrides.out.as_ref().or(config.output.path.as_ref());

    if mode == Mode::Verify {
        let report = verify::run_verify(&config)?;
        let mut out = sink(path)?;
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &report)?;
                writeln!(out)?;
            }
            Format::Csv => verify_table(&report).write(Format::Csv, &mut out)?,
        }
        out.flush()?;
        drop(out);
        if path.is_some() {
            print!("{}", report.summary());
        } else {
            eprint!("{}", report.summary());
        }
        return Ok(if report.ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
    }

    let outcome = match mode {
        Mode::Spectrum => commands::run_spectrum(&config)?,
        Mode::Coulomb => commands::run_coulomb(&config)?,
        Mode::Scan => commands::run_scan(&config)?,
        Mode::Wavefn => commands::run_wavefn(&config)?,
        Mode::Verify => unreachable!(),
    };
    let mut out = sink(path)?;
    outcome.table.write(format, &mut out)?;
    out.flush()?;
    if outcome.all_failed() {
        eprintln!("every row failed; see the `error` column");
        return Ok(EXIT_ALL_FAILED);
    }
    Ok(EXIT_OK)
}
