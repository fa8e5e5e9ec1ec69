//! Finite-difference eigensolvers used to cross-check the closed forms.
//!
//! Nothing here reuses a formula from [`crate::nu_engine`] or the
//! eigenvalue conditions in [`crate::spectrum`]: the radial problem
//!
//! ```text
//! −g'' + [κ/r² + Bα₂²/r² − Aα₂²/r]·g = Λ·g,   κ = ((D − 2)² + 4λ − 1)/4
//! ```
//!
//! is discretized on a uniform Dirichlet grid and its (n+1)-th eigenvalue
//! Λₙ(E) is matched to E² − μ² by an outer scalar root solve (α₂² = μ + E
//! makes the operator energy dependent). λ = j(j + D − 2) is either fixed or
//! itself the eigenvalue of the discretized polar operator
//!
//! ```text
//! −((1 − s²)H')' + (m² + c·s²)/(1 − s²)·H = λ·H.
//! ```

pub mod tridiag;

use crate::error::{Error, Result};
use crate::roots::{bisect, sign_changes, uniform_grid};
use crate::spectrum::{EnergyKind, EnergyLevel, Method, PotentialSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use tridiag::SymTridiag;

/// Below this the refinement pair is never trusted.
pub const MIN_POINTS: usize = 200;
/// Largest tolerated relative gap between the two refinements.
pub const REFINEMENT_TOL: f64 = 1e-3;
/// Decay lengths the radial box must cover.
pub const MIN_DECAY_LENGTHS: f64 = 25.0;
/// Default inner wall in units of 1/ε. The wall shifts an s-like level by
/// roughly g'(0)²·r_min, so it must sit far below the target tolerance.
pub const R_MIN_SCALE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    CentralSecondOrder,
}

/// Uniform grid: `n_points` interior unknowns between Dirichlet ends
/// (radial) or `n_points` cells on (−1, 1) (polar).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub scheme: Scheme,
}

impl GridSpec {
    pub fn radial(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid(format!("n_points = {n_points} < 3")));
        }
        Ok(GridSpec {
            r_min,
            r_max,
            n_points,
            scheme: Scheme::CentralSecondOrder,
        })
    }

    /// Polar grid on s ∈ (−1, 1); the radial bounds are unused.
    pub fn angular(n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::InvalidGrid(format!("n_points = {n_points} < 3")));
        }
        Ok(GridSpec {
            r_min: -1.0,
            r_max: 1.0,
            n_points,
            scheme: Scheme::CentralSecondOrder,
        })
    }

    pub fn refined(&self) -> Self {
        GridSpec {
            n_points: 2 * self.n_points,
            ..*self
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points + 1) as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (1..=self.n_points).map(move |i| self.r_min + h * i as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialMode {
    /// Self-consistent Λₙ(E) = E² − μ².
    Relativistic,
    /// Linear eigenproblem with coefficients 2μ; E = Λₙ/(2μ).
    Nonrelativistic,
}

/// Where the separation constant λ = j(j + D − 2) comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Separation {
    Fixed { j: f64 },
    /// Solved from the finite-difference polar operator at every trial
    /// energy, with ring strength C(μ + E) (relativistic) or 2μC.
    Polar { m: u32, n_tilde: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub n_points: usize,
    pub scan_points: usize,
    /// Distance kept from ±μ, in units of μ.
    pub endpoint_guard: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            n_points: 4000,
            scan_points: 64,
            endpoint_guard: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleLevel {
    /// Richardson-extrapolated level.
    pub level: EnergyLevel,
    pub coarse: f64,
    pub fine: f64,
    /// Every root found on the fine grid (relativistic mode).
    pub fine_roots: Vec<f64>,
    pub grid: GridSpec,
    pub relative_gap: f64,
}

fn richardson(coarse: f64, fine: f64, h_coarse: f64, h_fine: f64) -> f64 {
    let ratio = (h_coarse / h_fine).powi(2);
    fine + (fine - coarse) / (ratio - 1.0)
}

fn check_refinement(coarse: f64, fine: f64, n_points: usize, scale: f64) -> Result<f64> {
    let relative_gap = (coarse - fine).abs() / scale;
    if n_points < MIN_POINTS || !(relative_gap <= REFINEMENT_TOL) {
        return Err(Error::GridTooCoarse {
            coarse,
            fine,
            coarse_points: n_points,
            fine_points: 2 * n_points,
            relative_gap,
        });
    }
    Ok(relative_gap)
}

/// Polar operator on `cells` cell centers, written for the regular factor
/// y = H/(1 − s²)^(q/2) with q = √(m² + c) the indicial exponent at s = ±1:
///
/// ```text
/// −((1 − s²)^(q+1) y')' = σ (1 − s²)^q y,    λ = σ + q(q + 1) − c
/// ```
///
/// The flux weight vanishes at s = ±1, so no boundary rows are needed.
/// Discretizing H directly converges only like h^(2q), which is useless for
/// m = 0 and a weak ring.
fn polar_matrix(m: u32, c_ring: f64, cells: usize) -> (SymTridiag, f64) {
    let q = (f64::from(m).powi(2) + c_ring).max(0.0).sqrt();
    let h = 2.0 / cells as f64;
    let w = |s: f64| (1.0 - s * s).max(0.0);
    let flux = |i: usize| w(-1.0 + h * i as f64).powf(q + 1.0);
    let mass: Vec<f64> = (0..cells).map(|i| cell_mass(q, h, i, cells)).collect();
    let mut diag = Vec::with_capacity(cells);
    let mut off = Vec::with_capacity(cells - 1);
    for i in 0..cells {
        diag.push((flux(i) + flux(i + 1)) / (h * h * mass[i]));
        if i + 1 < cells {
            off.push(-flux(i + 1) / (h * h * (mass[i] * mass[i + 1]).sqrt()));
        }
    }
    (SymTridiag::new(diag, off), q * (q + 1.0) - c_ring)
}

/// Cell average of (1 − s²)^q. The two end cells carry the t^q endpoint
/// singularity, removed by t = h·u^(1/(q+1)) before quadrature.
fn cell_mass(q: f64, h: f64, i: usize, cells: usize) -> f64 {
    // 8-point Gauss–Legendre on [0, 1]
    const X: [f64; 4] = [0.183434642495650, 0.525532409916329, 0.796666477413627, 0.960289856497536];
    const W: [f64; 4] = [0.362683783378362, 0.313706645877887, 0.222381034453374, 0.101228536290376];
    let gl = |f: &dyn Fn(f64) -> f64| -> f64 {
        X.iter()
            .zip(&W)
            .map(|(&x, &w)| 0.25 * w * (f(0.5 + 0.5 * x) + f(0.5 - 0.5 * x)))
            .sum::<f64>()
            * 2.0
    };
    if i == 0 || i + 1 == cells {
        // ∫₀ʰ t^q (2 − t)^q dt with t the distance to the nearer end
        let p = 1.0 / (q + 1.0);
        let inner = gl(&|u: f64| (2.0 - h * u.powf(p)).powf(q));
        h.powf(q + 1.0) * p * inner / h
    } else {
        let lo = -1.0 + h * i as f64;
        gl(&|u: f64| {
            let s = lo + h * u;
            (1.0 - s * s).powf(q)
        })
    }
}

fn polar_eigenvalue(m: u32, c_ring: f64, n_tilde: u32, cells: usize) -> f64 {
    let (t, shift) = polar_matrix(m, c_ring, cells);
    t.eigenvalue(n_tilde as usize) + shift
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularOracle {
    /// λ = j(j + D − 2), extrapolated.
    pub lambda: f64,
    pub j: f64,
    pub coarse: f64,
    pub fine: f64,
    pub relative_gap: f64,
}

/// (ñ+1)-th eigenvalue of the polar operator with ring strength `c_ring` (= Cα₂²).
pub fn fd_angular_eigen(m: u32, c_ring: f64, dimension: u32, n_tilde: u32, grid: &GridSpec) -> Result<AngularOracle> {
    let coarse = polar_eigenvalue(m, c_ring, n_tilde, grid.n_points);
    let fine = polar_eigenvalue(m, c_ring, n_tilde, 2 * grid.n_points);
    let relative_gap = check_refinement(coarse, fine, grid.n_points, fine.abs().max(1.0))?;
    let lambda = richardson(coarse, fine, 2.0, 1.0);
    let d = f64::from(dimension);
    let radicand = (d - 2.0).powi(2) + 4.0 * lambda;
    Ok(AngularOracle {
        lambda,
        j: -(d - 2.0) / 2.0 + 0.5 * radicand.max(0.0).sqrt(),
        coarse,
        fine,
        relative_gap,
    })
}

/// Radial problem on one grid at one trial energy.
struct RadialProblem<'a> {
    spec: &'a PotentialSpec,
    separation: Separation,
    mode: RadialMode,
    n: u32,
    grid: GridSpec,
}

impl RadialProblem<'_> {
    fn separation_constant(&self, energy: f64) -> f64 {
        let d = f64::from(self.spec.dimension());
        match self.separation {
            Separation::Fixed { j } => j * (j + d - 2.0),
            Separation::Polar { m, n_tilde } => {
                let c_ring = match self.mode {
                    RadialMode::Relativistic => self.spec.c() * (self.spec.mu() + energy),
                    RadialMode::Nonrelativistic => 2.0 * self.spec.mu() * self.spec.c(),
                };
                polar_eigenvalue(m, c_ring, n_tilde, self.grid.n_points)
            }
        }
    }

    fn matrix(&self, energy: f64) -> SymTridiag {
        let d = f64::from(self.spec.dimension());
        let lambda = self.separation_constant(energy);
        let kappa = ((d - 2.0).powi(2) + 4.0 * lambda - 1.0) / 4.0;
        let coupling = match self.mode {
            RadialMode::Relativistic => self.spec.mu() + energy,
            RadialMode::Nonrelativistic => 2.0 * self.spec.mu(),
        };
        let (a, b) = (self.spec.a() * coupling, self.spec.b() * coupling);
        let h = self.grid.spacing();
        let inv_h2 = 1.0 / (h * h);
        let diag: Vec<f64> = self
            .grid
            .nodes()
            .map(|r| 2.0 * inv_h2 + (kappa + b) / (r * r) - a / r)
            .collect();
        let off = vec![-inv_h2; diag.len() - 1];
        SymTridiag::new(diag, off)
    }

    fn eigenvalue(&self, energy: f64) -> f64 {
        self.matrix(energy).eigenvalue(self.n as usize)
    }

    /// Λₙ(E) − (E² − μ²).
    fn mismatch(&self, energy: f64) -> f64 {
        let mu = self.spec.mu();
        self.eigenvalue(energy) - (energy * energy - mu * mu)
    }

    fn solve(&self, opts: &OracleOptions) -> Result<Vec<f64>> {
        let mu = self.spec.mu();
        match self.mode {
            RadialMode::Nonrelativistic => Ok(vec![self.eigenvalue(0.0) / (2.0 * mu)]),
            RadialMode::Relativistic => {
                let lo = -mu + opts.endpoint_guard * mu;
                let hi = mu - opts.endpoint_guard * mu;
                let samples: Vec<(f64, f64)> =
                    uniform_grid(lo, hi, opts.scan_points).map(|e| (e, self.mismatch(e))).collect();
                let brackets = sign_changes(&samples);
                if brackets.is_empty() {
                    return Err(Error::NoBoundState { lo, hi });
                }
                Ok(brackets
                    .into_iter()
                    .map(|(a, b)| bisect(|e| self.mismatch(e), a, b, 1e-15 * mu).x)
                    .collect())
            }
        }
    }
}

fn decay_rate(mode: RadialMode, mu: f64, energy: f64) -> f64 {
    match mode {
        RadialMode::Relativistic => (mu * mu - energy * energy).max(0.0).sqrt(),
        RadialMode::Nonrelativistic => (-2.0 * mu * energy).max(0.0).sqrt(),
    }
}

/// Solves on `grid` and on its refinement, checks agreement and
/// Richardson-extrapolates.
pub fn fd_radial_eigen(
    spec: &PotentialSpec,
    separation: Separation,
    mode: RadialMode,
    n: u32,
    grid: &GridSpec,
    opts: &OracleOptions,
) -> Result<OracleLevel> {
    let coarse_problem = RadialProblem {
        spec,
        separation,
        mode,
        n,
        grid: *grid,
    };
    let fine_problem = RadialProblem {
        grid: grid.refined(),
        ..coarse_problem
    };
    let coarse_roots = coarse_problem.solve(opts)?;
    let fine_roots = fine_problem.solve(opts)?;
    // the lowest root on each grid is paired; extra roots stay visible in fine_roots
    let coarse = coarse_roots[0];
    let fine = fine_roots[0];
    let relative_gap = check_refinement(coarse, fine, grid.n_points, fine.abs().max(f64::MIN_POSITIVE))?;
    let value = richardson(coarse, fine, grid.spacing(), grid.refined().spacing());

    let eps = decay_rate(mode, spec.mu(), value);
    if grid.r_max * eps < MIN_DECAY_LENGTHS {
        return Err(Error::InvalidGrid(format!(
            "r_max·ε = {} < {MIN_DECAY_LENGTHS}",
            grid.r_max * eps
        )));
    }
    let residual = match mode {
        RadialMode::Relativistic => fine_problem.mismatch(fine).abs(),
        RadialMode::Nonrelativistic => 0.0,
    };
    Ok(OracleLevel {
        level: EnergyLevel {
            value,
            kind: match mode {
                RadialMode::Relativistic => EnergyKind::Relativistic,
                RadialMode::Nonrelativistic => EnergyKind::Nonrelativistic,
            },
            method: Method::Oracle,
            residual,
            bracket: None,
        },
        coarse,
        fine,
        fine_roots,
        grid: *grid,
        relative_gap,
    })
}

/// Default box: r_max = 40/ε, r_min = [`R_MIN_SCALE`]/ε, with ε found by iterating
/// coarse solves from a generous first guess.
pub fn auto_grid(
    spec: &PotentialSpec,
    separation: Separation,
    mode: RadialMode,
    n: u32,
    opts: &OracleOptions,
) -> Result<GridSpec> {
    let mu = spec.mu();
    let coarse_points = (opts.n_points / 4).max(MIN_POINTS);
    let mut r_max = 40.0 * f64::from(n + 1) / mu;
    let mut last_err = None;
    for _ in 0..12 {
        let grid = GridSpec::radial(R_MIN_SCALE * r_max, r_max, coarse_points)?;
        let problem = RadialProblem {
            spec,
            separation,
            mode,
            n,
            grid,
        };
        match problem.solve(opts) {
            Ok(roots) => {
                let eps = decay_rate(mode, mu, roots[0]);
                if !(eps > 0.0) {
                    last_err = Some(Error::NoBoundState { lo: -mu, hi: mu });
                    r_max *= 4.0;
                    continue;
                }
                let target = 40.0 / eps;
                if r_max >= 0.95 * target && r_max <= 1.5 * target {
                    return GridSpec::radial(R_MIN_SCALE / eps, target, opts.n_points);
                }
                r_max = target;
            }
            Err(e @ Error::NoBoundState { .. }) => {
                // a weakly bound level may not fit into the current box yet
                last_err = Some(e);
                r_max *= 4.0;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::NoBoundState { lo: -mu, hi: mu }))
}

/// [`auto_grid`] followed by [`fd_radial_eigen`].
pub fn fd_radial_auto(
    spec: &PotentialSpec,
    separation: Separation,
    mode: RadialMode,
    n: u32,
    opts: &OracleOptions,
) -> Result<OracleLevel> {
    let grid = auto_grid(spec, separation, mode, n, opts)?;
    fd_radial_eigen(spec, separation, mode, n, &grid, opts)
}

/// Finite-difference eigenvector g(r) = r^((D−1)/2) R(r) at a known energy,
/// normalized to ∫g² dr = 1 (trapezoid).
pub fn fd_radial_profile(
    spec: &PotentialSpec,
    separation: Separation,
    mode: RadialMode,
    n: u32,
    grid: &GridSpec,
    energy: f64,
) -> Vec<(f64, f64)> {
    let problem = RadialProblem {
        spec,
        separation,
        mode,
        n,
        grid: *grid,
    };
    let t = problem.matrix(energy);
    let lam = t.eigenvalue(n as usize);
    let v = t.eigenvector(lam);
    let h = grid.spacing();
    let norm = (v.iter().map(|x| x * x).sum::<f64>() * h).sqrt();
    grid.nodes().zip(v).map(|(r, g)| (r, g / norm)).collect()
}

/// The ODEs whose residual can be probed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ode {
    /// R'' + (D−1)/r R' − [j(j+D−2)/r² + α₂²(α₁² − A/r + B/r²)]R = 0.
    RadialRel { spec: PotentialSpec, energy: f64, j: f64 },
    /// H'' + cot θ H' − [(m² + c cos²θ)/sin²θ − λ]H = 0 with c = Cα₂².
    PolarRel { m: u32, c_ring: f64, lambda: f64 },
    /// R'' + (D−1)/r R' − [λ/r² − 2μ(E + A/r − B/r²)]R = 0.
    RadialNr { spec: PotentialSpec, energy: f64, lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    /// The sampled solution vanished on every probe; residual is 0 by convention.
    pub degenerate: bool,
}

/// First and second derivatives by central differences at steps h and h/2,
/// Richardson-combined to fourth order.
fn derivatives<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> (f64, f64) {
    let d1 = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let d2 = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    (
        (4.0 * d1(0.5 * h) - d1(h)) / 3.0,
        (4.0 * d2(0.5 * h) - d2(h)) / 3.0,
    )
}

/// max over probes |ODE(f)| / max over probes |f|.
pub fn residual<F: Fn(f64) -> f64>(ode: &Ode, f: F, probes: &[f64]) -> ResidualReport {
    let scale = probes.iter().map(|&x| f(x).abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return ResidualReport {
            max_residual: 0.0,
            degenerate: true,
        };
    }
    let mut worst = 0.0_f64;
    for &x in probes {
        let value = f(x);
        let lhs = match *ode {
            Ode::RadialRel { spec, energy, j } => {
                let (d1, d2) = derivatives(&f, x, 4e-3 * x);
                let d = f64::from(spec.dimension());
                let mu = spec.mu();
                let (a1, a2) = (mu - energy, mu + energy);
                d2 + (d - 1.0) / x * d1
                    - (j * (j + d - 2.0) / (x * x) + a2 * (a1 - spec.a() / x + spec.b() / (x * x))) * value
            }
            Ode::PolarRel { m, c_ring, lambda } => {
                let h = 4e-3 * x.min(PI - x).min(1.0);
                let (d1, d2) = derivatives(&f, x, h);
                let (s, c) = x.sin_cos();
                d2 + c / s * d1 - ((f64::from(m).powi(2) + c_ring * c * c) / (s * s) - lambda) * value
            }
            Ode::RadialNr { spec, energy, lambda } => {
                let (d1, d2) = derivatives(&f, x, 4e-3 * x);
                let d = f64::from(spec.dimension());
                let mu = spec.mu();
                d2 + (d - 1.0) / x * d1
                    - (lambda / (x * x) - 2.0 * mu * (energy + spec.a() / x - spec.b() / (x * x))) * value
            }
        };
        worst = worst.max(lhs.abs());
    }
    ResidualReport {
        max_residual: worst / scale,
        degenerate: false,
    }
}
