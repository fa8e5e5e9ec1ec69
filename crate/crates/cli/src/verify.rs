//! Self-checks run by `kgkratzer verify` on every configured (D, state).

use crate::config::RunConfig;
use anyhow::Result;
use kgkratzer::nu_engine::{lambda_n, pi_candidates, select_branch, NuProblem, Poly};
use kgkratzer::oracle::{fd_radial_auto, residual, Ode, OracleLevel, OracleOptions, RadialMode, Separation};
use kgkratzer::spectrum::{
    angular_j, angular_ntilde, coulomb_energy, coulomb_series, nonrel_energy, nonrel_limit_map,
    solve_noncentral_relativistic_with, solve_radial_relativistic_with, DerivedNumbers,
};
use kgkratzer::wavefn::{radial_overlap, total_norm, AngularState, RadialState};
use kgkratzer::{EnergyLevel, PotentialSpec, QuantumNumbers};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub measured: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
}

impl Report {
    fn new(checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
        Report {
            checks,
            passed,
            failed,
            ok: failed == 0,
        }
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            let _ = writeln!(s, "[{tag}] {}: {}", c.name, c.detail);
        }
        let _ = writeln!(s, "{} passed, {} failed", self.passed, self.failed);
        s
    }
}

/// Folds per-state measurements of one check into a single result.
/// `Err` entries fail the check outright.
fn fold(name: &'static str, tol: f64, items: Vec<(String, std::result::Result<f64, String>)>) -> CheckResult {
    let mut worst: Option<(f64, &str)> = None;
    let mut errors = Vec::new();
    for (label, item) in &items {
        match item {
            Ok(v) if worst.is_none_or(|(w, _)| v.is_nan() || *v > w) => worst = Some((*v, label)),
            Ok(_) => {}
            Err(e) => errors.push(format!("{label}: {e}")),
        }
    }
    let measured = worst.map(|(v, _)| v);
    let ok = errors.is_empty() && measured.is_some_and(|v| v <= tol);
    let detail = if !errors.is_empty() {
        errors.join("; ")
    } else {
        match worst {
            Some((v, label)) => format!("worst {v:.3e} at {label} (tol {tol:e})"),
            None => "nothing measured".into(),
        }
    };
    CheckResult {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        measured,
        tolerance: Some(tol),
        detail,
    }
}

/// Everything measured for one (D, state).
struct StateChecks {
    label: String,
    nu_radial: std::result::Result<f64, String>,
    nu_angular: std::result::Result<f64, String>,
    roundtrip: std::result::Result<f64, String>,
    root_residual: std::result::Result<f64, String>,
    oracle_convergence: std::result::Result<f64, String>,
    oracle_rel: std::result::Result<(f64, bool), String>,
    oracle_nr: std::result::Result<f64, String>,
    normalization: std::result::Result<f64, String>,
    ode: std::result::Result<f64, String>,
    sensitivity: std::result::Result<f64, String>,
    substitution: std::result::Result<f64, String>,
    orthogonality: Option<f64>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn nu_radial_check(d: &DerivedNumbers, n: u32) -> std::result::Result<f64, String> {
    let eps = d.epsilon;
    let gamma_sq = 0.25 * d.gamma_sq4;
    let problem = NuProblem::new(&[0.0, 1.0], &[-gamma_sq, d.beta_sq, -eps * eps], &[0.0]).map_err(err)?;
    let sol = select_branch(&pi_candidates(&problem).map_err(err)?, &problem).map_err(err)?;
    let root = (4.0 * gamma_sq + 1.0).sqrt();
    let scale = d.beta_sq.abs().max(1.0);
    let coeff = (sol.k - (d.beta_sq - eps * root))
        .abs()
        .max((sol.pi - Poly::linear(0.5 + 0.5 * root, -eps)).max_abs())
        .max((sol.tau_slope + 2.0 * eps).abs());
    // at a bound state the NU quantization λ = λₙ holds
    let quantization = (sol.lambda_from_k() - lambda_n(&sol, &problem, n)).abs();
    Ok((coeff.max(quantization) / scale).max(0.0))
}

fn nu_angular_check(d: &DerivedNumbers, n_tilde: u32) -> std::result::Result<f64, String> {
    let mp = d.m_prime;
    let nt = f64::from(n_tilde);
    let nu = (nt + mp) * (nt + mp + 1.0);
    let problem = NuProblem::new(&[1.0, 0.0, -1.0], &[nu - mp * mp, 0.0, -nu], &[0.0, -2.0]).map_err(err)?;
    let sol = select_branch(&pi_candidates(&problem).map_err(err)?, &problem).map_err(err)?;
    let coeff = (sol.k - (nu - mp * mp))
        .abs()
        .max((sol.tau - Poly::linear(0.0, -2.0 * (1.0 + mp))).max_abs())
        .max((lambda_n(&sol, &problem, n_tilde) - (2.0 * nt * (1.0 + mp) + nt * (nt - 1.0))).abs());
    Ok(coeff / nu.max(1.0))
}

fn log_probes(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| (lo.ln() + (hi / lo).ln() * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// |ODE| of the closed-form radial and polar solutions, and the smallest
/// residual after a 1% Gaussian bump (a solver that cannot tell these apart
/// is not testing anything).
fn ode_checks(
    spec: &PotentialSpec,
    q: QuantumNumbers,
    level: &EnergyLevel,
    radial: &RadialState,
    angular: &AngularState,
    d: &DerivedNumbers,
) -> (f64, f64) {
    let eps = radial.epsilon;
    let rp = log_probes(0.05 / eps, 30.0 / eps, 50);
    let f = |r: f64| radial.radial(r).unwrap_or(f64::NAN);
    let ode = Ode::RadialRel {
        spec: *spec,
        energy: level.value,
        j: d.j,
    };
    let peak_r = rp.iter().map(|&r| f(r).abs()).fold(0.0, f64::max);
    let bumped_r = |r: f64| f(r) + 0.01 * peak_r * (-((r - 2.0 / eps) / (0.25 / eps)).powi(2)).exp();

    let dim = f64::from(spec.dimension());
    let polar = Ode::PolarRel {
        m: q.m,
        c_ring: spec.c() * d.alpha2_sq,
        lambda: d.j * (d.j + dim - 2.0),
    };
    let tp: Vec<f64> = (0..50).map(|i| 0.05 + (PI - 0.1) * f64::from(i) / 49.0).collect();
    let g = |t: f64| angular.angular(t);
    let peak_t = tp.iter().map(|&t| g(t).abs()).fold(0.0, f64::max);
    let bumped_t = |t: f64| g(t) + 0.01 * peak_t * (-((t - 1.0) / 0.2).powi(2)).exp();

    let exact = residual(&ode, f, &rp).max_residual.max(residual(&polar, g, &tp).max_residual);
    let control = residual(&ode, bumped_r, &rp)
        .max_residual
        .min(residual(&polar, bumped_t, &tp).max_residual);
    (exact, control)
}

fn oracle_options(config: &RunConfig) -> OracleOptions {
    OracleOptions {
        n_points: config.tolerances.oracle_points,
        scan_points: config.tolerances.oracle_scan_points,
        endpoint_guard: config.tolerances.endpoint_guard,
    }
}

fn check_state(spec: &PotentialSpec, q: QuantumNumbers, config: &RunConfig) -> StateChecks {
    let tol = &config.tolerances;
    let label = format!("D={} n={} ñ={} m={}", spec.dimension(), q.n, q.n_tilde, q.m);
    let fail_all = |e: String| StateChecks {
        label: label.clone(),
        nu_radial: Err(e.clone()),
        nu_angular: Err(e.clone()),
        roundtrip: Err(e.clone()),
        root_residual: Err(e.clone()),
        oracle_convergence: Err(e.clone()),
        oracle_rel: Err(e.clone()),
        oracle_nr: Err(e.clone()),
        normalization: Err(e.clone()),
        ode: Err(e.clone()),
        sensitivity: Err(e.clone()),
        substitution: Err(e),
        orthogonality: None,
    };
    let roots = match solve_noncentral_relativistic_with(spec, q, &tol.solver()) {
        Ok(r) => r,
        Err(e) => return fail_all(format!("E_R: {e}")),
    };
    let level = roots[0];
    let mu = spec.mu();
    let derived = match DerivedNumbers::new(spec, q, level.value) {
        Ok(d) => d,
        Err(e) => return fail_all(e.to_string()),
    };

    let roundtrip = angular_j(q.n_tilde, q.m, spec.c(), derived.alpha2_sq, spec.dimension())
        .and_then(|a| angular_ntilde(a.j, q.m, spec.c(), derived.alpha2_sq, spec.dimension()))
        .map(|back| (back - f64::from(q.n_tilde)).abs())
        .map_err(err);
    let root_residual = Ok(roots.iter().map(|l| l.residual.abs() / mu).fold(0.0, f64::max));

    let opts = oracle_options(config);
    let separation = Separation::Polar { m: q.m, n_tilde: q.n_tilde };
    let fd: std::result::Result<OracleLevel, String> =
        fd_radial_auto(spec, separation, RadialMode::Relativistic, q.n, &opts).map_err(err);
    let oracle_convergence = fd.as_ref().map(|l| l.relative_gap).map_err(Clone::clone);
    let oracle_rel = fd.as_ref().map_err(Clone::clone).and_then(|l| {
        if l.fine_roots.len() != 1 {
            return Err(format!("oracle found {} roots", l.fine_roots.len()));
        }
        let gap = (l.level.value - level.value).abs();
        Ok(if spec.c() > 0.0 {
            (gap / level.value.abs(), true)
        } else {
            (gap / mu, false)
        })
    });
    let nonrel = nonrel_energy(spec, q);
    let oracle_nr = nonrel.clone().map_err(err).and_then(|nr| {
        let fd = fd_radial_auto(spec, separation, RadialMode::Nonrelativistic, q.n, &opts).map_err(err)?;
        Ok((fd.level.value - nr.value).abs())
    });

    let states = RadialState::from_quantum(spec, q, level)
        .and_then(|r| Ok((r, AngularState::relativistic(spec, q, derived.alpha2_sq)?)));
    let (normalization, ode, sensitivity) = match &states {
        Ok((radial, angular)) => {
            let norms = (|| -> kgkratzer::Result<f64> {
                Ok((radial.norm()?.value - 1.0)
                    .abs()
                    .max((angular.norm()?.value - 1.0).abs())
                    .max((total_norm(radial, angular, q.m as i32)? - 1.0).abs()))
            })();
            let (exact, control) = ode_checks(spec, q, &level, radial, angular, &derived);
            (norms.map_err(err), Ok(exact), Ok(control))
        }
        Err(e) => (Err(e.to_string()), Err(e.to_string()), Err(e.to_string())),
    };
    let substitution = nonrel_limit_map(&level, spec, q)
        .map(|c| c.substitution_residual.abs() / spec.a().abs().max(f64::MIN_POSITIVE))
        .map_err(err);

    let next = QuantumNumbers::new(q.n + 1, q.n_tilde, q.m);
    let orthogonality = states.ok().and_then(|(radial, _)| {
        let l2 = solve_noncentral_relativistic_with(spec, next, &tol.solver()).ok()?[0];
        let r2 = RadialState::from_quantum(spec, next, l2).ok()?;
        radial_overlap(&radial, &r2).ok()
    });

    StateChecks {
        label,
        nu_radial: nu_radial_check(&derived, q.n),
        nu_angular: nu_angular_check(&derived, q.n_tilde),
        roundtrip,
        root_residual,
        oracle_convergence,
        oracle_rel,
        oracle_nr,
        normalization,
        ode,
        sensitivity,
        substitution,
        orthogonality,
    }
}

fn coulomb_checks(config: &RunConfig) -> (CheckResult, CheckResult) {
    let c = config.coulomb.clone().unwrap_or(crate::config::CoulombConfig {
        qe: 1.0,
        ell: crate::config::Range::Single(0),
        mu: 1.0,
    });
    let mut items = Vec::new();
    for &d in &config.dimensions {
        let spec = match PotentialSpec::coulomb(c.qe, c.mu, d) {
            Ok(s) => s,
            Err(e) => {
                items.push((format!("D={d}"), Err(e.to_string())));
                continue;
            }
        };
        for n in config.quantum.n.values() {
            for ell in c.ell.values() {
                let label = format!("qe={} D={d} n={n} ℓ={ell}", c.qe);
                let exact = coulomb_energy(c.qe, &spec, n, ell).value;
                let item = solve_radial_relativistic_with(&spec, n, f64::from(ell), &config.tolerances.solver())
                    .map(|r| (r[0].value - exact).abs() / c.mu)
                    .map_err(err);
                items.push((label, item));
            }
        }
    }
    let closed = fold("coulomb_closed_form", 1e-10, items);

    // log-log slope of |E_exact − E_series2| against qe
    let slope = (|| -> kgkratzer::Result<f64> {
        let spec = PotentialSpec::coulomb(1.0, c.mu, config.dimensions[0])?;
        let pts = [0.1, 0.05, 0.025]
            .iter()
            .map(|&qe| {
                let gap = (coulomb_energy(qe, &spec, 0, 0).value - coulomb_series(qe, &spec, 0, 0, 2)?.value).abs();
                Ok((qe.ln(), gap.ln()))
            })
            .collect::<kgkratzer::Result<Vec<(f64, f64)>>>()?;
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        Ok(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>())
    })();
    let order = match slope {
        Ok(s) => CheckResult {
            name: "coulomb_series_order",
            status: if (s - 6.0).abs() <= 0.5 { Status::Pass } else { Status::Fail },
            measured: Some(s),
            tolerance: Some(0.5),
            detail: format!("log-log slope {s:.4} (target 6 ± 0.5)"),
        },
        Err(e) => CheckResult {
            name: "coulomb_series_order",
            status: Status::Fail,
            measured: None,
            tolerance: Some(0.5),
            detail: e.to_string(),
        },
    };
    (closed, order)
}

/// The perturbed control must stay above 1e-3, so the worst case is the smallest.
fn sensitivity_check(states: &[StateChecks]) -> CheckResult {
    const FLOOR: f64 = 1e-3;
    let errors: Vec<String> = states
        .iter()
        .filter_map(|s| s.sensitivity.as_ref().err().map(|e| format!("{}: {e}", s.label)))
        .collect();
    let min = states
        .iter()
        .filter_map(|s| s.sensitivity.as_ref().ok().copied())
        .fold(f64::INFINITY, f64::min);
    let ok = errors.is_empty() && min.is_finite() && min > FLOOR;
    CheckResult {
        name: "residual_sensitivity",
        status: if ok { Status::Pass } else { Status::Fail },
        measured: min.is_finite().then_some(min),
        tolerance: Some(FLOOR),
        detail: if errors.is_empty() {
            format!("smallest perturbed residual {min:.3e} (must exceed {FLOOR:e})")
        } else {
            errors.join("; ")
        },
    }
}

pub fn run_verify(config: &RunConfig) -> Result<Report> {
    let p = config.potential()?;
    let mut jobs = Vec::new();
    for &d in &config.dimensions {
        let spec = p.spec(d)?;
        for q in config.quantum.states() {
            jobs.push((spec, q));
        }
    }
    let states: Vec<StateChecks> = jobs.par_iter().map(|(s, q)| check_state(s, *q, config)).collect();
    let tol = &config.tolerances;
    let pick = |f: &dyn Fn(&StateChecks) -> std::result::Result<f64, String>| -> Vec<(String, std::result::Result<f64, String>)> {
        states.iter().map(|s| (s.label.clone(), f(s))).collect()
    };

    let mut checks = vec![
        fold("nu_radial_regression", 1e-10, pick(&|s| s.nu_radial.clone())),
        fold("nu_angular_regression", 1e-12, pick(&|s| s.nu_angular.clone())),
    ];
    let (closed, order) = coulomb_checks(config);
    checks.push(closed);
    checks.push(order);
    checks.push(fold("quantum_number_roundtrip", 1e-10, pick(&|s| s.roundtrip.clone())));
    checks.push(fold("root_residual", tol.root_residual, pick(&|s| s.root_residual.clone())));
    checks.push(fold(
        "oracle_convergence",
        kgkratzer::oracle::REFINEMENT_TOL,
        pick(&|s| s.oracle_convergence.clone()),
    ));

    // absolute (units of μ) without a ring, relative with one
    let mut rel_items = Vec::new();
    let mut worst_ratio = 0.0_f64;
    for s in &states {
        let item = s.oracle_rel.clone().map(|(gap, coupled)| {
            let t = if coupled { tol.oracle_coupled_relative } else { tol.oracle_relativistic };
            worst_ratio = worst_ratio.max(gap / t);
            gap / t
        });
        rel_items.push((s.label.clone(), item));
    }
    let mut rel = fold("oracle_agreement_relativistic", 1.0, rel_items);
    rel.detail = format!("{} [measured as gap/tolerance]", rel.detail);
    rel.measured = rel.measured.map(|_| worst_ratio);
    checks.push(rel);

    checks.push(fold("oracle_agreement_nonrelativistic", tol.oracle_nonrelativistic, pick(&|s| s.oracle_nr.clone())));
    checks.push(fold("normalization", tol.normalization, pick(&|s| s.normalization.clone())));
    checks.push(fold("ode_residual", tol.ode_residual, pick(&|s| s.ode.clone())));

    checks.push(sensitivity_check(&states));

    checks.push(fold("nonrel_limit_substitution", 1e-12, pick(&|s| s.substitution.clone())));

    let overlaps: Vec<String> = states
        .iter()
        .map(|s| match s.orthogonality {
            Some(v) => format!("{}: ⟨n|n+1⟩ = {v:.3e}", s.label),
            None => format!("{}: n+1 unavailable", s.label),
        })
        .collect();
    let worst = states.iter().filter_map(|s| s.orthogonality).map(f64::abs).fold(None, |a: Option<f64>, v| Some(a.map_or(v, |a| a.max(v))));
    checks.push(CheckResult {
        name: "radial_orthogonality",
        status: Status::Info,
        measured: worst,
        tolerance: None,
        detail: format!("{} (n and n+1 carry different ε and ζ; not expected to vanish)", overlaps.join("; ")),
    });

    Ok(Report::new(checks))
}
