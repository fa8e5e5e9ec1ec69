//! Table-producing commands: spectrum, coulomb, scan and wavefn.

use crate::config::{RunConfig, ScanTarget, ScanVariable, Tolerances, WaveKind};
use crate::table::{Cell, Table};
use anyhow::Result;
use kgkratzer::spectrum::{
    coulomb_energy, coulomb_series, nonrel_energy, nonrel_limit_map, solve_noncentral_relativistic_with,
    solve_radial_relativistic_with, DerivedNumbers,
};
use kgkratzer::wavefn::{AngularState, RadialState};
use kgkratzer::{PotentialSpec, QuantumNumbers};
use rayon::prelude::*;
use std::f64::consts::PI;

/// A table plus how many of its rows carry a result.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub failed_rows: usize,
}

impl Outcome {
    pub fn all_failed(&self) -> bool {
        !self.table.rows.is_empty() && self.failed_rows == self.table.rows.len()
    }
}

pub const SPECTRUM_COLUMNS: [&str; 15] = [
    "D",
    "n",
    "n_tilde",
    "m",
    "e_r",
    "e_r_other_roots",
    "e_r_residual",
    "e_nr",
    "nr_relative_gap",
    "j",
    "j_prime",
    "m_prime",
    "zeta",
    "epsilon",
    "error",
];

/// One spectrum row; the second value is whether both E_R and E_NR failed.
fn spectrum_row(spec: &PotentialSpec, q: QuantumNumbers, tol: &Tolerances) -> (Vec<Cell>, bool) {
    let mut errors = Vec::new();
    let roots = solve_noncentral_relativistic_with(spec, q, &tol.solver()).map_err(|e| errors.push(format!("E_R: {e}"))).ok();
    let nonrel = nonrel_energy(spec, q).map_err(|e| errors.push(format!("E_NR: {e}"))).ok();
    let first = roots.as_ref().map(|r| r[0]);
    let derived = first.and_then(|l| DerivedNumbers::new(spec, q, l.value).map_err(|e| errors.push(e.to_string())).ok());
    let gap = first.and_then(|l| nonrel_limit_map(&l, spec, q).ok()).map(|c| c.relative_gap);
    let others = roots
        .as_ref()
        .map(|r| r[1..].iter().map(|l| crate::table::fmt_g15(l.value)).collect::<Vec<_>>().join(";"))
        .unwrap_or_default();
    let failed = first.is_none() && nonrel.is_none();
    let row = vec![
        spec.dimension().into(),
        q.n.into(),
        q.n_tilde.into(),
        q.m.into(),
        first.map(|l| l.value).into(),
        others.into(),
        first.map(|l| l.residual).into(),
        nonrel.map(|l| l.value).into(),
        gap.into(),
        derived.map(|d| d.j).into(),
        derived.map(|d| d.j_prime).into(),
        derived.map(|d| d.m_prime).into(),
        derived.map(|d| d.zeta).into(),
        derived.map(|d| d.epsilon).into(),
        errors.join("; ").into(),
    ];
    (row, failed)
}

fn specs(config: &RunConfig) -> Result<Vec<PotentialSpec>> {
    let p = config.potential()?;
    config.dimensions.iter().map(|&d| p.spec(d)).collect()
}

fn jobs(specs: &[PotentialSpec], config: &RunConfig) -> Vec<(PotentialSpec, QuantumNumbers)> {
    let states = config.quantum.states();
    specs.iter().flat_map(|s| states.iter().map(move |&q| (*s, q))).collect()
}

fn spectrum_rows(specs: &[PotentialSpec], config: &RunConfig) -> Vec<(Vec<Cell>, bool)> {
    let tol = config.tolerances;
    jobs(specs, config).par_iter().map(|(s, q)| spectrum_row(s, *q, &tol)).collect()
}

fn collect(columns: impl IntoIterator<Item = String>, rows: Vec<(Vec<Cell>, bool)>) -> Outcome {
    let mut table = Table::new(columns);
    let mut failed_rows = 0;
    for (row, failed) in rows {
        failed_rows += usize::from(failed);
        table.push(row);
    }
    Outcome { table, failed_rows }
}

pub fn run_spectrum(config: &RunConfig) -> Result<Outcome> {
    let rows = spectrum_rows(&specs(config)?, config);
    Ok(collect(SPECTRUM_COLUMNS.map(String::from), rows))
}

pub const COULOMB_COLUMNS: [&str; 11] = [
    "qe",
    "D",
    "n",
    "ell",
    "e_closed",
    "e_root",
    "root_gap",
    "e_series1",
    "e_series2",
    "series2_error",
    "error",
];

fn coulomb_row(qe: f64, spec: &PotentialSpec, n: u32, ell: u32, tol: &Tolerances) -> (Vec<Cell>, bool) {
    let closed = coulomb_energy(qe, spec, n, ell).value;
    let s1 = coulomb_series(qe, spec, n, ell, 1).map(|l| l.value).ok();
    let s2 = coulomb_series(qe, spec, n, ell, 2).map(|l| l.value).ok();
    let (root, error) = match solve_radial_relativistic_with(spec, n, f64::from(ell), &tol.solver()) {
        Ok(r) => (Some(r[0].value), String::new()),
        Err(e) => (None, format!("E_root: {e}")),
    };
    let row = vec![
        qe.into(),
        spec.dimension().into(),
        n.into(),
        ell.into(),
        closed.into(),
        root.into(),
        root.map(|r| (r - closed).abs()).into(),
        s1.into(),
        s2.into(),
        s2.map(|s| (closed - s).abs()).into(),
        error.into(),
    ];
    // the closed form always exists; only a root-solve failure flags the row
    (row, root.is_none())
}

fn coulomb_rows(qe: f64, mu: f64, config: &RunConfig) -> Result<Vec<(Vec<Cell>, bool)>> {
    let c = config.coulomb_config()?;
    let mut jobs = Vec::new();
    for &d in &config.dimensions {
        let spec = PotentialSpec::coulomb(qe, mu, d)?;
        for n in config.quantum.n.values() {
            for ell in c.ell.values() {
                jobs.push((spec, n, ell));
            }
        }
    }
    let tol = config.tolerances;
    Ok(jobs.par_iter().map(|(s, n, ell)| coulomb_row(qe, s, *n, *ell, &tol)).collect())
}

pub fn run_coulomb(config: &RunConfig) -> Result<Outcome> {
    let c = config.coulomb_config()?;
    let rows = coulomb_rows(c.qe, c.mu, config)?;
    Ok(collect(COULOMB_COLUMNS.map(String::from), rows))
}

pub fn run_scan(config: &RunConfig) -> Result<Outcome> {
    let scan = config.scan_config()?;
    let var = scan.variable;
    let mut rows = Vec::new();
    for value in scan.values()? {
        let mut local = config.clone();
        if var == ScanVariable::Dimension {
            local.dimensions = vec![value as u32];
        }
        let part = match scan.target() {
            ScanTarget::Coulomb => {
                let c = local.coulomb_config()?.clone();
                let (qe, mu) = match var {
                    ScanVariable::Qe => (value, c.mu),
                    ScanVariable::Mu => (c.qe, value),
                    _ => (c.qe, c.mu),
                };
                coulomb_rows(qe, mu, &local)?
            }
            ScanTarget::Spectrum => {
                let p = local.potential.as_mut().expect("validated");
                match var {
                    ScanVariable::C => p.c = value,
                    ScanVariable::A0 => p.a0 = Some(value),
                    ScanVariable::R0 => p.r0 = Some(value),
                    ScanVariable::Mu => p.mu = value,
                    ScanVariable::Dimension | ScanVariable::Qe => {}
                }
                spectrum_rows(&specs(&local)?, &local)
            }
        };
        rows.extend(part.into_iter().map(|(mut row, failed)| {
            row.insert(0, Cell::Num(value));
            (row, failed)
        }));
    }
    let base: Vec<&str> = match scan.target() {
        ScanTarget::Coulomb => COULOMB_COLUMNS.to_vec(),
        ScanTarget::Spectrum => SPECTRUM_COLUMNS.to_vec(),
    };
    let columns = std::iter::once(format!("scan_{}", var.name())).chain(base.into_iter().map(String::from));
    Ok(collect(columns, rows))
}

pub const WAVEFN_COLUMNS: [&str; 9] = ["D", "n", "n_tilde", "m", "kind", "energy", "component", "x", "value"];

fn wavefn_rows(spec: &PotentialSpec, q: QuantumNumbers, config: &RunConfig) -> (Vec<Vec<Cell>>, bool) {
    let w = config.wavefn.clone().unwrap_or_default();
    let head = |kind: &str, energy: Option<f64>| -> Vec<Cell> {
        vec![
            spec.dimension().into(),
            q.n.into(),
            q.n_tilde.into(),
            q.m.into(),
            kind.into(),
            energy.into(),
        ]
    };
    let states = match w.kind {
        WaveKind::Relativistic => solve_noncentral_relativistic_with(spec, q, &config.tolerances.solver()).and_then(|roots| {
            let level = roots[0];
            let radial = RadialState::from_quantum(spec, q, level)?;
            let angular = AngularState::relativistic(spec, q, spec.mu() + level.value)?;
            Ok((level.value, radial, angular))
        }),
        WaveKind::Nonrelativistic => nonrel_energy(spec, q).and_then(|level| {
            let radial = RadialState::nonrelativistic(spec, q, level)?;
            let mp = (f64::from(q.m).powi(2) + 2.0 * spec.mu() * spec.c()).sqrt();
            Ok((level.value, radial, AngularState::new(q.n_tilde, mp)?))
        }),
    };
    let kind = match w.kind {
        WaveKind::Relativistic => "relativistic",
        WaveKind::Nonrelativistic => "nonrelativistic",
    };
    let (energy, radial, angular) = match states {
        Ok(s) => s,
        Err(e) => {
            let mut row = head(kind, None);
            row.extend([Cell::from("error"), Cell::Empty, Cell::from(e.to_string())]);
            return (vec![row], true);
        }
    };
    let mut rows = Vec::new();
    let r_max = w.r_decay_lengths / radial.epsilon;
    for i in 1..=w.r_points {
        let r = r_max * i as f64 / w.r_points as f64;
        let mut row = head(kind, Some(energy));
        row.extend([Cell::from("radial"), r.into(), radial.radial(r).unwrap_or(f64::NAN).into()]);
        rows.push(row);
    }
    for i in 1..=w.theta_points {
        let theta = PI * i as f64 / (w.theta_points + 1) as f64;
        let mut row = head(kind, Some(energy));
        row.extend([Cell::from("polar"), theta.into(), angular.angular(theta).into()]);
        rows.push(row);
    }
    (rows, false)
}

pub fn run_wavefn(config: &RunConfig) -> Result<Outcome> {
    let specs = specs(config)?;
    let parts: Vec<(Vec<Vec<Cell>>, bool)> =
        jobs(&specs, config).par_iter().map(|(s, q)| wavefn_rows(s, *q, config)).collect();
    let mut table = Table::new(WAVEFN_COLUMNS);
    let mut failed_rows = 0;
    for (rows, failed) in parts {
        failed_rows += if failed { rows.len() } else { 0 };
        for row in rows {
            table.push(row);
        }
    }
    Ok(Outcome { table, failed_rows })
}
