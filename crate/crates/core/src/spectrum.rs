//! Potential and quantum-number types and the energy-eigenvalue solvers.
//!
//! Natural units ħ = c = 1; energies are measured against the rest mass μ.
//! With α₁² = μ − E and α₂² = μ + E the radial equation becomes
//!
//! ```text
//! g'' + (−ε²r² + β²r − γ²)/r² g = 0,   ε² = α₁²α₂²,  β² = Aα₂²,
//! 4γ² + 1 = (D + 2j − 2)² + 4Bα₂²
//! ```
//!
//! and the bound-state condition is
//!
//! ```text
//! [1 + 2n + √((D + 2j − 2)² + 4B(μ + E))]·√(μ − E) = A·√(μ + E).
//! ```

use crate::error::{Error, Result};
use crate::roots::{bisect, sign_changes, uniform_grid};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KratzerParams {
    /// Dissociation energy a₀.
    pub a0: f64,
    /// Equilibrium distance r₀.
    pub r0: f64,
}

/// −A/r + B/r² + C·cot²θ/r² with rest mass μ in D dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSpec {
    a: f64,
    b: f64,
    c: f64,
    mu: f64,
    dimension: u32,
    kratzer: Option<KratzerParams>,
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidPotential(format!("{name} = {v} is not finite")))
    }
}

impl PotentialSpec {
    /// Independent couplings; needed for the Coulomb limit B = 0.
    pub fn general(a: f64, b: f64, c: f64, mu: f64, dimension: u32) -> Result<Self> {
        let spec = PotentialSpec {
            a: finite("A", a)?,
            b: finite("B", b)?,
            c: finite("C", c)?,
            mu: finite("mu", mu)?,
            dimension,
            kratzer: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Kratzer couplings A = 2a₀r₀, B = a₀r₀² plus the ring strength C.
    pub fn kratzer(a0: f64, r0: f64, c: f64, mu: f64, dimension: u32) -> Result<Self> {
        finite("a0", a0)?;
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::InvalidPotential(format!("r0 = {r0} must be positive")));
        }
        let mut spec = Self::general(2.0 * a0 * r0, a0 * r0 * r0, c, mu, dimension)?;
        spec.kratzer = Some(KratzerParams { a0, r0 });
        Ok(spec)
    }

    /// Pure Coulomb tail A = qe, B = C = 0.
    pub fn coulomb(qe: f64, mu: f64, dimension: u32) -> Result<Self> {
        Self::general(qe, 0.0, 0.0, mu, dimension)
    }

    fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(Error::InvalidPotential(format!("mu = {} must be positive", self.mu)));
        }
        if self.c < 0.0 {
            return Err(Error::InvalidPotential(format!("C = {} must be non-negative", self.c)));
        }
        if self.dimension < 2 {
            return Err(Error::InvalidPotential(format!(
                "dimension D = {} must be at least 2",
                self.dimension
            )));
        }
        Ok(())
    }

    pub fn with_dimension(mut self, dimension: u32) -> Result<Self> {
        self.dimension = dimension;
        self.validate()?;
        Ok(self)
    }

    pub fn with_ring(mut self, c: f64) -> Result<Self> {
        self.c = finite("C", c)?;
        self.validate()?;
        Ok(self)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn dimension(&self) -> u32 {
        self.dimension
    }
    pub fn kratzer_params(&self) -> Option<KratzerParams> {
        self.kratzer
    }

    fn d(&self) -> f64 {
        f64::from(self.dimension)
    }
}

/// Radial node count n, polar index ñ and azimuthal m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub n_tilde: u32,
    pub m: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, n_tilde: u32, m: u32) -> Self {
        QuantumNumbers { n, n_tilde, m }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyKind {
    Relativistic,
    Nonrelativistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    RootSolve,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub value: f64,
    pub kind: EnergyKind,
    pub method: Method,
    pub residual: f64,
    pub bracket: Option<(f64, f64)>,
}

impl EnergyLevel {
    pub fn closed_form(value: f64, kind: EnergyKind) -> Self {
        EnergyLevel {
            value,
            kind,
            method: Method::ClosedForm,
            residual: 0.0,
            bracket: None,
        }
    }
}

/// m′, j and j′ of the polar sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularMomentum {
    pub m_prime: f64,
    pub j: f64,
    pub j_prime: f64,
}

fn m_prime(m: u32, c_alpha2: f64) -> Result<f64> {
    let sq = f64::from(m).powi(2) + c_alpha2;
    if sq < 0.0 {
        return Err(Error::ComplexAngularMomentum { radicand: sq });
    }
    Ok(sq.sqrt())
}

/// j and j′ for polar index ñ, with m′² = m² + Cα₂².
pub fn angular_j(n_tilde: u32, m: u32, c: f64, alpha2_sq: f64, dimension: u32) -> Result<AngularMomentum> {
    let d = f64::from(dimension);
    let c_alpha2 = c * alpha2_sq;
    let mp = m_prime(m, c_alpha2)?;
    let l = 2.0 * f64::from(n_tilde) + 2.0 * mp + 1.0;
    let base = (d - 2.0).powi(2) + l * l - 1.0;
    let radicand = base - 4.0 * c_alpha2;
    if radicand < 0.0 {
        return Err(Error::ComplexAngularMomentum { radicand });
    }
    if base < 0.0 {
        return Err(Error::ComplexAngularMomentum { radicand: base });
    }
    Ok(AngularMomentum {
        m_prime: mp,
        j: -(d - 2.0) / 2.0 + 0.5 * radicand.sqrt(),
        j_prime: -(d - 2.0) / 2.0 + 0.5 * base.sqrt(),
    })
}

/// Inverse of [`angular_j`]: the polar index for a given j.
pub fn angular_ntilde(j: f64, m: u32, c: f64, alpha2_sq: f64, dimension: u32) -> Result<f64> {
    let d = f64::from(dimension);
    let c_alpha2 = c * alpha2_sq;
    let mp = m_prime(m, c_alpha2)?;
    let radicand = (2.0 * j + 1.0).powi(2) + 4.0 * j * (d - 3.0) + 4.0 * c_alpha2;
    if radicand < 0.0 {
        return Err(Error::ComplexAngularMomentum { radicand });
    }
    let value = -(1.0 + 2.0 * mp) / 2.0 + 0.5 * radicand.sqrt();
    if value < -1e-10 {
        return Err(Error::NegativeIndex { value });
    }
    Ok(value.max(0.0))
}

/// Every derived quantity at a given relativistic energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedNumbers {
    pub m_prime: f64,
    pub j: f64,
    pub j_prime: f64,
    /// ℓ′ from the nonrelativistic polar sector (m′ = √(m² + 2μC)).
    pub ell_prime: f64,
    /// M = D + 2j.
    pub big_m: f64,
    pub zeta: f64,
    pub alpha1_sq: f64,
    pub alpha2_sq: f64,
    pub epsilon: f64,
    pub beta_sq: f64,
    pub gamma_sq4: f64,
}

impl DerivedNumbers {
    pub fn new(spec: &PotentialSpec, q: QuantumNumbers, energy: f64) -> Result<Self> {
        let mu = spec.mu;
        let d = spec.d();
        let alpha1_sq = mu - energy;
        let alpha2_sq = mu + energy;
        let ang = angular_j(q.n_tilde, q.m, spec.c, alpha2_sq, spec.dimension)?;
        let big_m = d + 2.0 * ang.j;
        let gamma_sq4 = (big_m - 1.0) * (big_m - 3.0) + 4.0 * spec.b * alpha2_sq;
        let zeta_sq = gamma_sq4 + 1.0;
        if zeta_sq < 0.0 {
            return Err(Error::InvalidCoupling {
                e_lo: energy,
                e_hi: energy,
            });
        }
        Ok(DerivedNumbers {
            m_prime: ang.m_prime,
            j: ang.j,
            j_prime: ang.j_prime,
            ell_prime: nonrel_ell_prime(spec, q)?,
            big_m,
            zeta: zeta_sq.sqrt(),
            alpha1_sq,
            alpha2_sq,
            epsilon: (alpha1_sq * alpha2_sq).max(0.0).sqrt(),
            beta_sq: spec.a * alpha2_sq,
            gamma_sq4,
        })
    }
}

/// 2ℓ′ + D − 2 = √((D − 2)² + (2ñ + 2m′ + 1)² − 1) with m′ = √(m² + 2μC).
fn nonrel_shifted_ell(spec: &PotentialSpec, q: QuantumNumbers) -> Result<f64> {
    let mp = m_prime(q.m, 2.0 * spec.mu * spec.c)?;
    let l = 2.0 * f64::from(q.n_tilde) + 2.0 * mp + 1.0;
    let radicand = (spec.d() - 2.0).powi(2) + l * l - 1.0;
    if radicand < 0.0 {
        return Err(Error::ComplexAngularMomentum { radicand });
    }
    Ok(radicand.sqrt())
}

fn nonrel_ell_prime(spec: &PotentialSpec, q: QuantumNumbers) -> Result<f64> {
    Ok((nonrel_shifted_ell(spec, q)? - spec.d() + 2.0) / 2.0)
}

/// Knobs of the scan-plus-bisection root solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub scan_points: usize,
    /// Distance kept from ±μ, in units of μ.
    pub endpoint_guard: f64,
    /// Target |f(E)| in units of μ.
    pub residual_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            scan_points: 10_000,
            endpoint_guard: 1e-6,
            residual_tol: 1e-12,
        }
    }
}

/// Outcome of one evaluation of a bound-state condition.
enum Condition {
    Value(f64),
    NegativeRadicand,
}

fn scan_solve<F>(spec: &PotentialSpec, opts: &SolverOptions, f: F) -> Result<Vec<EnergyLevel>>
where
    F: Fn(f64) -> Result<Condition>,
{
    let mu = spec.mu;
    let lo = -mu + opts.endpoint_guard * mu;
    let hi = mu - opts.endpoint_guard * mu;
    let mut samples = Vec::with_capacity(opts.scan_points);
    let mut bad: Option<(f64, f64)> = None;
    for e in uniform_grid(lo, hi, opts.scan_points) {
        match f(e)? {
            Condition::Value(v) => samples.push((e, v)),
            Condition::NegativeRadicand => {
                bad = Some(match bad {
                    None => (e, e),
                    Some((a, b)) => (a.min(e), b.max(e)),
                })
            }
        }
    }
    if let Some((e_lo, e_hi)) = bad {
        return Err(Error::InvalidCoupling { e_lo, e_hi });
    }
    let brackets = sign_changes(&samples);
    if brackets.is_empty() {
        return Err(Error::NoBoundState { lo, hi });
    }
    let eval = |e: f64| match f(e) {
        Ok(Condition::Value(v)) => v,
        _ => f64::NAN,
    };
    let levels = brackets
        .into_iter()
        .map(|(a, b)| {
            let root = bisect(eval, a, b, 0.0);
            let level = EnergyLevel {
                value: root.x,
                kind: EnergyKind::Relativistic,
                method: Method::RootSolve,
                residual: root.residual,
                bracket: Some(root.bracket),
            };
            debug_assert!(level.value > -mu && level.value < mu);
            level
        })
        .collect();
    Ok(levels)
}

/// f(E) = [1 + 2n + √((D + 2j − 2)² + 4(μ + E)B)]·√(μ − E) − A·√(μ + E).
pub fn radial_condition(spec: &PotentialSpec, n: u32, j: f64, energy: f64) -> Option<f64> {
    let mu = spec.mu;
    let radicand = (spec.d() + 2.0 * j - 2.0).powi(2) + 4.0 * (mu + energy) * spec.b;
    if radicand < 0.0 {
        return None;
    }
    Some((1.0 + 2.0 * f64::from(n) + radicand.sqrt()) * (mu - energy).sqrt() - spec.a * (mu + energy).sqrt())
}

/// All relativistic roots in (−μ, μ) at fixed j.
pub fn solve_radial_relativistic(spec: &PotentialSpec, n: u32, j: f64) -> Result<Vec<EnergyLevel>> {
    solve_radial_relativistic_with(spec, n, j, &SolverOptions::default())
}

pub fn solve_radial_relativistic_with(
    spec: &PotentialSpec,
    n: u32,
    j: f64,
    opts: &SolverOptions,
) -> Result<Vec<EnergyLevel>> {
    scan_solve(spec, opts, |e| {
        Ok(match radial_condition(spec, n, j, e) {
            Some(v) => Condition::Value(v),
            None => Condition::NegativeRadicand,
        })
    })
}

/// g(E) = [1 + 2n + √((2j′(E) + D − 2)² + 4(B − C)(μ + E))]·√(μ − E) − A·√(μ + E)
/// with j′(E) evaluated at m′(E) = √(m² + C(μ + E)).
pub fn noncentral_condition(spec: &PotentialSpec, q: QuantumNumbers, energy: f64) -> Result<Option<f64>> {
    let mu = spec.mu;
    let alpha2_sq = mu + energy;
    let ang = angular_j(q.n_tilde, q.m, spec.c, alpha2_sq, spec.dimension)?;
    let radicand = (2.0 * ang.j_prime + spec.d() - 2.0).powi(2) + 4.0 * (spec.b - spec.c) * alpha2_sq;
    if radicand < 0.0 {
        return Ok(None);
    }
    Ok(Some(
        (1.0 + 2.0 * f64::from(q.n) + radicand.sqrt()) * (mu - energy).sqrt() - spec.a * alpha2_sq.sqrt(),
    ))
}

/// Roots of the noncentral condition; the E-dependence of the polar sector
/// is resolved inside the scalar root function.
pub fn solve_noncentral_relativistic(spec: &PotentialSpec, q: QuantumNumbers) -> Result<Vec<EnergyLevel>> {
    solve_noncentral_relativistic_with(spec, q, &SolverOptions::default())
}

pub fn solve_noncentral_relativistic_with(
    spec: &PotentialSpec,
    q: QuantumNumbers,
    opts: &SolverOptions,
) -> Result<Vec<EnergyLevel>> {
    scan_solve(spec, opts, |e| {
        Ok(match noncentral_condition(spec, q, e)? {
            Some(v) => Condition::Value(v),
            None => Condition::NegativeRadicand,
        })
    })
}

fn coulomb_denominator(spec: &PotentialSpec, n: u32, ell: u32) -> f64 {
    2.0 * f64::from(n) + 2.0 * f64::from(ell) + spec.d() - 1.0
}

/// Closed-form Coulomb level for A = qe, B = 0, j = ℓ:
/// E = μ(1 − 2(qe)²/((qe)² + (2n + 2ℓ + D − 1)²)).
pub fn coulomb_energy(qe: f64, spec: &PotentialSpec, n: u32, ell: u32) -> EnergyLevel {
    let x = qe * qe;
    let big_n = coulomb_denominator(spec, n, ell);
    let value = spec.mu * (1.0 - 2.0 * x / (x + big_n * big_n));
    EnergyLevel::closed_form(value, EnergyKind::Relativistic)
}

/// Expansion of [`coulomb_energy`] in the charge to `order` ≤ 2 (powers of (qe)²).
pub fn coulomb_series(qe: f64, spec: &PotentialSpec, n: u32, ell: u32, order: u32) -> Result<EnergyLevel> {
    if order > 2 {
        return Err(Error::ParameterOutOfRange {
            name: "order",
            value: f64::from(order),
        });
    }
    let mu = spec.mu;
    let x = qe * qe / coulomb_denominator(spec, n, ell).powi(2);
    let mut value = mu;
    if order >= 1 {
        value -= 2.0 * mu * x;
    }
    if order >= 2 {
        value += 2.0 * mu * x * x;
    }
    Ok(EnergyLevel::closed_form(value, EnergyKind::Relativistic))
}

/// E_NR = −2μA² / [2n + 1 + √((2ℓ′ + D − 2)² + 8μ(B − C))]².
///
/// For a Kratzer spec 2μA² = 8μa₀²r₀² and B = a₀r₀².
pub fn nonrel_energy(spec: &PotentialSpec, q: QuantumNumbers) -> Result<EnergyLevel> {
    let shifted = nonrel_shifted_ell(spec, q)?;
    let radicand = shifted * shifted + 8.0 * spec.mu * (spec.b - spec.c);
    if radicand < 0.0 {
        return Err(Error::ComplexDenominator { radicand });
    }
    if spec.a < 0.0 {
        return Err(Error::NoBoundState {
            lo: f64::NEG_INFINITY,
            hi: 0.0,
        });
    }
    let denom = 2.0 * f64::from(q.n) + 1.0 + radicand.sqrt();
    let value = -2.0 * spec.mu * spec.a * spec.a / (denom * denom);
    Ok(EnergyLevel::closed_form(value, EnergyKind::Nonrelativistic))
}

/// Relativistic level set against the nonrelativistic closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonrelComparison {
    /// E_R − μ.
    pub predicted: f64,
    pub nonrel: EnergyLevel,
    pub difference: f64,
    pub relative_gap: f64,
    /// The noncentral condition with μ + E → 2μ and μ − E → −E_NR,
    /// evaluated at E_NR; vanishes identically.
    pub substitution_residual: f64,
}

pub fn nonrel_limit_map(level: &EnergyLevel, spec: &PotentialSpec, q: QuantumNumbers) -> Result<NonrelComparison> {
    let nonrel = nonrel_energy(spec, q)?;
    let predicted = level.value - spec.mu;
    let difference = predicted - nonrel.value;
    let relative_gap = if nonrel.value != 0.0 {
        (difference / nonrel.value).abs()
    } else {
        difference.abs()
    };
    let shifted = nonrel_shifted_ell(spec, q)?;
    let root = (shifted * shifted + 8.0 * spec.mu * (spec.b - spec.c)).sqrt();
    let substitution_residual = (1.0 + 2.0 * f64::from(q.n) + root) * (-nonrel.value).max(0.0).sqrt()
        - spec.a * (2.0 * spec.mu).sqrt();
    Ok(NonrelComparison {
        predicted,
        nonrel,
        difference,
        relative_gap,
        substitution_residual,
    })
}
