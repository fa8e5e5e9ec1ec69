//! Normalized radial, polar, azimuthal and total wavefunctions.
//!
//! ```text
//! R(r) = C_nj · r^((ζ + 2 − D)/2) · e^(−εr) · L_n^ζ(2εr)
//! H(θ) = N_ñ · sin^m′(θ) · P_ñ^(m′,m′)(cos θ)
//! Φ(φ) = e^(imφ) / √(2π)
//! ```
//!
//! All factorials in the normalization constants are Γ functions and the
//! constants are carried in log space.

use crate::error::{Error, Result};
use crate::special_fn::{integrate, jacobi_unchecked, laguerre_unchecked, log_gamma, Domain, Estimate, QuadratureRule};
use crate::spectrum::{angular_j, EnergyLevel, PotentialSpec, QuantumNumbers};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialState {
    pub level: EnergyLevel,
    pub zeta: f64,
    /// Decay rate; the scaled radius is 2εr.
    pub epsilon: f64,
    pub n: u32,
    pub dimension: u32,
    log_norm: f64,
}

impl RadialState {
    pub fn new(level: EnergyLevel, zeta: f64, epsilon: f64, n: u32, dimension: u32) -> Result<Self> {
        if !(zeta >= 0.0) {
            return Err(Error::ParameterOutOfRange { name: "zeta", value: zeta });
        }
        if !(epsilon > 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "epsilon",
                value: epsilon,
            });
        }
        let nf = f64::from(n);
        // C_nj = (2ε)^(1 + ζ/2) · √(n! / ((2n + ζ + 1)·Γ(n + ζ + 1)))
        let log_norm = (1.0 + zeta / 2.0) * (2.0 * epsilon).ln()
            + 0.5 * (log_gamma(nf + 1.0)? - (2.0 * nf + zeta + 1.0).ln() - log_gamma(nf + zeta + 1.0)?);
        Ok(RadialState {
            level,
            zeta,
            epsilon,
            n,
            dimension,
            log_norm,
        })
    }

    /// Relativistic state at fixed j: ε = √(μ² − E²),
    /// ζ = √((D + 2j − 2)² + 4B(μ + E)).
    pub fn relativistic(spec: &PotentialSpec, n: u32, j: f64, level: EnergyLevel) -> Result<Self> {
        let mu = spec.mu();
        let e = level.value;
        let d = f64::from(spec.dimension());
        let zeta_sq = (d + 2.0 * j - 2.0).powi(2) + 4.0 * spec.b() * (mu + e);
        if zeta_sq < 0.0 {
            return Err(Error::InvalidCoupling { e_lo: e, e_hi: e });
        }
        Self::new(level, zeta_sq.sqrt(), (mu * mu - e * e).max(0.0).sqrt(), n, spec.dimension())
    }

    /// Relativistic state with j taken from the polar sector at α₂² = μ + E.
    pub fn from_quantum(spec: &PotentialSpec, q: QuantumNumbers, level: EnergyLevel) -> Result<Self> {
        let j = angular_j(q.n_tilde, q.m, spec.c(), spec.mu() + level.value, spec.dimension())?.j;
        Self::relativistic(spec, q.n, j, level)
    }

    /// Nonrelativistic state: ε = √(−2μE),
    /// ζ = √((2ℓ′ + D − 2)² − 8μC + 8μB).
    pub fn nonrelativistic(spec: &PotentialSpec, q: QuantumNumbers, level: EnergyLevel) -> Result<Self> {
        let mu = spec.mu();
        let d = f64::from(spec.dimension());
        let mp = (f64::from(q.m).powi(2) + 2.0 * mu * spec.c()).sqrt();
        let l = 2.0 * f64::from(q.n_tilde) + 2.0 * mp + 1.0;
        let shifted_sq = (d - 2.0).powi(2) + l * l - 1.0;
        let zeta_sq = shifted_sq + 8.0 * mu * (spec.b() - spec.c());
        if zeta_sq < 0.0 {
            return Err(Error::ComplexDenominator { radicand: zeta_sq });
        }
        Self::new(level, zeta_sq.sqrt(), (-2.0 * mu * level.value).max(0.0).sqrt(), q.n, spec.dimension())
    }

    pub fn norm_const(&self) -> f64 {
        self.log_norm.exp()
    }

    /// Exponent of r in front of the exponential, (ζ + 2 − D)/2.
    pub fn power(&self) -> f64 {
        (self.zeta + 2.0 - f64::from(self.dimension)) / 2.0
    }

    pub fn radial(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain { what: "radial", r });
        }
        Ok(self.radial_unchecked(r))
    }

    fn radial_unchecked(&self, r: f64) -> f64 {
        let scaled_radius = 2.0 * self.epsilon * r;
        let envelope = (self.log_norm + self.power() * r.ln() - self.epsilon * r).exp();
        envelope * laguerre_unchecked(self.n, self.zeta, scaled_radius)
    }

    /// ∫₀^∞ R(r)² r^(D−1) dr by composite Gauss–Legendre on a mapped axis.
    pub fn norm(&self) -> Result<Estimate> {
        let d = f64::from(self.dimension);
        overlap_integral(|r| self.radial_unchecked(r).powi(2) * r.powf(d - 1.0), self.epsilon)
    }
}

fn overlap_integral<F: Fn(f64) -> f64>(f: F, epsilon: f64) -> Result<Estimate> {
    let rule = QuadratureRule::gauss_legendre(20)?.with_tolerance(1e-11);
    integrate(f, &rule, Domain::SemiInfinite { lo: 0.0, scale: 1.0 / epsilon })
}

/// ∫₀^∞ R_a R_b r^(D−1) dr. States with different n carry different ε and ζ,
/// so off-diagonal values are reported rather than expected to vanish.
pub fn radial_overlap(a: &RadialState, b: &RadialState) -> Result<f64> {
    let d = f64::from(a.dimension);
    let eps = a.epsilon.min(b.epsilon);
    Ok(overlap_integral(|r| a.radial_unchecked(r) * b.radial_unchecked(r) * r.powf(d - 1.0), eps)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularState {
    pub n_tilde: u32,
    pub m_prime: f64,
    log_norm: f64,
}

impl AngularState {
    pub fn new(n_tilde: u32, m_prime: f64) -> Result<Self> {
        if !(m_prime >= 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "m_prime",
                value: m_prime,
            });
        }
        let nt = f64::from(n_tilde);
        // N_ñ = 1/(2^m′ Γ(ñ + m′ + 1)) · √((2ñ + 2m′ + 1)·Γ(ñ + 2m′ + 1)·ñ! / 2)
        let log_norm = -m_prime * 2f64.ln() - log_gamma(nt + m_prime + 1.0)?
            + 0.5 * ((2.0 * nt + 2.0 * m_prime + 1.0).ln() + log_gamma(nt + 2.0 * m_prime + 1.0)? + log_gamma(nt + 1.0)?
                - 2f64.ln());
        Ok(AngularState {
            n_tilde,
            m_prime,
            log_norm,
        })
    }

    /// m′ = √(m² + Cα₂²) of the relativistic polar sector.
    pub fn relativistic(spec: &PotentialSpec, q: QuantumNumbers, alpha2_sq: f64) -> Result<Self> {
        let ang = angular_j(q.n_tilde, q.m, spec.c(), alpha2_sq, spec.dimension())?;
        Self::new(q.n_tilde, ang.m_prime)
    }

    pub fn norm_const(&self) -> f64 {
        self.log_norm.exp()
    }

    pub fn angular(&self, theta: f64) -> f64 {
        self.norm_const() * theta.sin().powf(self.m_prime) * self.jacobi(theta.cos())
    }

    /// H as a function of s = cos θ.
    pub fn angular_s(&self, s: f64) -> f64 {
        self.norm_const() * (1.0 - s * s).max(0.0).powf(0.5 * self.m_prime) * self.jacobi(s)
    }

    fn jacobi(&self, s: f64) -> f64 {
        jacobi_unchecked(self.n_tilde, self.m_prime, self.m_prime, s)
    }

    /// ∫₋₁¹ H(s)² ds.
    pub fn norm(&self) -> Result<Estimate> {
        let rule = QuadratureRule::gauss_legendre(20)?.with_tolerance(1e-11);
        integrate(|s| self.angular_s(s).powi(2), &rule, Domain::Interval { lo: -1.0, hi: 1.0 })
    }
}

/// e^(imφ)/√(2π); negative m gives the conjugate branch.
pub fn azimuthal(m: i32, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), f64::from(m) * phi)
}

/// ∫₀^{2π} Φ_m Φ_k* dφ.
pub fn azimuthal_overlap(m: i32, k: i32) -> Result<Complex64> {
    let rule = QuadratureRule::gauss_legendre(24)?;
    let domain = Domain::Interval { lo: 0.0, hi: 2.0 * PI };
    let re = integrate(|p| (azimuthal(m, p) * azimuthal(k, p).conj()).re, &rule, domain)?;
    let im = integrate(|p| (azimuthal(m, p) * azimuthal(k, p).conj()).im, &rule, domain)?;
    Ok(Complex64::new(re.value, im.value))
}

/// ψ = R(r)·H(θ)·Φ(φ).
pub fn total(radial: &RadialState, angular: &AngularState, m: i32, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
    Ok(radial.radial(r)? * angular.angular(theta) * azimuthal(m, phi))
}

/// ∫∫∫ |ψ|² r^(D−1) sin θ dr dθ dφ on a tensor-product Gauss–Legendre grid.
pub fn total_norm(radial: &RadialState, angular: &AngularState, m: i32) -> Result<f64> {
    let d = f64::from(radial.dimension);
    let r_rule = QuadratureRule::gauss_legendre(16)?;
    let t_rule = QuadratureRule::gauss_legendre(24)?;
    let p_rule = QuadratureRule::gauss_legendre(4)?;
    let scale = 1.0 / radial.epsilon;

    // r = scale·t/(1 − t) on t ∈ [0, 1), panels in t
    let r_panels = 48;
    let mut r_nodes = Vec::with_capacity(r_panels * 16);
    for p in 0..r_panels {
        let a = p as f64 / r_panels as f64;
        let b = (p + 1) as f64 / r_panels as f64;
        for (x, w) in r_rule.nodes().iter().zip(r_rule.weights()) {
            let t = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let one_minus = 1.0 - t;
            let r = scale * t / one_minus;
            let jac = scale / (one_minus * one_minus);
            r_nodes.push((r, w * 0.5 * (b - a) * jac * r.powf(d - 1.0)));
        }
    }
    let t_panels = 4;
    let mut t_nodes = Vec::with_capacity(t_panels * 24);
    for p in 0..t_panels {
        let a = PI * p as f64 / t_panels as f64;
        let b = PI * (p + 1) as f64 / t_panels as f64;
        for (x, w) in t_rule.nodes().iter().zip(t_rule.weights()) {
            let th = 0.5 * (a + b) + 0.5 * (b - a) * x;
            t_nodes.push((th, w * 0.5 * (b - a) * th.sin()));
        }
    }
    let p_nodes: Vec<(f64, f64)> = p_rule
        .nodes()
        .iter()
        .zip(p_rule.weights())
        .map(|(x, w)| (PI + PI * x, w * PI))
        .collect();

    let mut sum = 0.0;
    for &(r, wr) in &r_nodes {
        if !(r.is_finite() && wr.is_finite()) || wr == 0.0 {
            continue;
        }
        for &(th, wt) in &t_nodes {
            for &(ph, wp) in &p_nodes {
                sum += wr * wt * wp * total(radial, angular, m, r, th, ph)?.norm_sqr();
            }
        }
    }
    Ok(sum)
}

/// Sign changes of `f` on a uniform sample of the open interval (lo, hi).
pub fn count_nodes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize) -> usize {
    let step = (hi - lo) / (samples + 1) as f64;
    let mut count = 0;
    let mut prev = 0.0_f64;
    for i in 1..=samples {
        let v = f(lo + step * i as f64);
        if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    count
}
