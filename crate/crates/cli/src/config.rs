//! JSON run configuration. Unknown keys are rejected at every level.

use anyhow::{bail, ensure, Context, Result};
use kgkratzer::spectrum::SolverOptions;
use kgkratzer::{PotentialSpec, QuantumNumbers};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Spectrum,
    Wavefn,
    Verify,
    Scan,
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Inclusive integer range; a bare integer means a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Range {
    Single(u32),
    Span(Span),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Span {
    pub min: u32,
    pub max: u32,
}

impl Default for Range {
    fn default() -> Self {
        Range::Single(0)
    }
}

impl Range {
    pub fn bounds(&self) -> (u32, u32) {
        match *self {
            Range::Single(v) => (v, v),
            Range::Span(Span { min, max }) => (min, max),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let (lo, hi) = self.bounds();
        ensure!(lo <= hi, "range `{name}` is empty: min {lo} > max {hi}");
        Ok(())
    }

    pub fn values(&self) -> impl Iterator<Item = u32> {
        let (lo, hi) = self.bounds();
        lo..=hi
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub a0: Option<f64>,
    pub r0: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    #[serde(default)]
    pub c: f64,
    #[serde(default = "one")]
    pub mu: f64,
}

fn one() -> f64 {
    1.0
}

impl PotentialConfig {
    pub fn spec(&self, dimension: u32) -> Result<PotentialSpec> {
        let spec = match (self.a0, self.r0, self.a, self.b) {
            (Some(a0), Some(r0), None, None) => PotentialSpec::kratzer(a0, r0, self.c, self.mu, dimension)?,
            (None, None, Some(a), b) => PotentialSpec::general(a, b.unwrap_or(0.0), self.c, self.mu, dimension)?,
            _ => bail!("potential needs either both `a0` and `r0`, or `a` (with optional `b`), not a mix"),
        };
        Ok(spec)
    }

    pub fn is_kratzer(&self) -> bool {
        self.a0.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumRanges {
    #[serde(default)]
    pub n: Range,
    #[serde(default)]
    pub n_tilde: Range,
    #[serde(default)]
    pub m: Range,
}

impl Default for QuantumRanges {
    fn default() -> Self {
        QuantumRanges {
            n: Range::Single(0),
            n_tilde: Range::Single(0),
            m: Range::Single(0),
        }
    }
}

impl QuantumRanges {
    /// Lexicographic in (n, ñ, m).
    pub fn states(&self) -> Vec<QuantumNumbers> {
        let mut out = Vec::new();
        for n in self.n.values() {
            for nt in self.n_tilde.values() {
                for m in self.m.values() {
                    out.push(QuantumNumbers::new(n, nt, m));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoulombConfig {
    pub qe: f64,
    #[serde(default)]
    pub ell: Range,
    #[serde(default = "one")]
    pub mu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanVariable {
    Qe,
    C,
    A0,
    R0,
    Mu,
    Dimension,
}

impl ScanVariable {
    pub fn name(&self) -> &'static str {
        match self {
            ScanVariable::Qe => "qe",
            ScanVariable::C => "c",
            ScanVariable::A0 => "a0",
            ScanVariable::R0 => "r0",
            ScanVariable::Mu => "mu",
            ScanVariable::Dimension => "dimension",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanTarget {
    Spectrum,
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub variable: ScanVariable,
    pub values: Option<Vec<f64>>,
    pub sweep: Option<Sweep>,
    /// Defaults to `coulomb` for a `qe` sweep and `spectrum` otherwise.
    pub target: Option<ScanTarget>,
}

impl ScanConfig {
    pub fn target(&self) -> ScanTarget {
        self.target.unwrap_or(match self.variable {
            ScanVariable::Qe => ScanTarget::Coulomb,
            _ => ScanTarget::Spectrum,
        })
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        let values = match (&self.values, self.sweep) {
            (Some(v), None) => v.clone(),
            (None, Some(s)) => {
                ensure!(s.points >= 1, "scan sweep needs at least one point");
                ensure!(s.points > 1 || s.from == s.to, "a one-point sweep needs from == to");
                if s.points == 1 {
                    vec![s.from]
                } else {
                    let step = (s.to - s.from) / (s.points - 1) as f64;
                    (0..s.points)
                        .map(|i| if i + 1 == s.points { s.to } else { s.from + step * i as f64 })
                        .collect()
                }
            }
            _ => bail!("scan needs exactly one of `values` or `sweep`"),
        };
        ensure!(!values.is_empty(), "scan values are empty");
        ensure!(values.iter().all(|v| v.is_finite()), "scan values must be finite");
        if self.variable == ScanVariable::Dimension {
            ensure!(
                values.iter().all(|&v| v >= 2.0 && v.fract() == 0.0),
                "dimension scan values must be integers ≥ 2"
            );
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    #[default]
    Relativistic,
    Nonrelativistic,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavefnConfig {
    #[serde(default)]
    pub kind: WaveKind,
    #[serde(default = "default_r_points")]
    pub r_points: usize,
    /// Outer sampling radius in decay lengths 1/ε.
    #[serde(default = "default_r_decay")]
    pub r_decay_lengths: f64,
    #[serde(default = "default_theta_points")]
    pub theta_points: usize,
}

fn default_r_points() -> usize {
    200
}
fn default_r_decay() -> f64 {
    30.0
}
fn default_theta_points() -> usize {
    91
}

impl Default for WavefnConfig {
    fn default() -> Self {
        WavefnConfig {
            kind: WaveKind::default(),
            r_points: default_r_points(),
            r_decay_lengths: default_r_decay(),
            theta_points: default_theta_points(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub scan_points: usize,
    pub endpoint_guard: f64,
    pub root_residual: f64,
    pub oracle_points: usize,
    pub oracle_scan_points: usize,
    pub oracle_relativistic: f64,
    pub oracle_coupled_relative: f64,
    pub oracle_nonrelativistic: f64,
    pub normalization: f64,
    pub ode_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            scan_points: 10_000,
            endpoint_guard: 1e-6,
            root_residual: 1e-10,
            oracle_points: 4000,
            oracle_scan_points: 64,
            oracle_relativistic: 1e-4,
            oracle_coupled_relative: 1e-3,
            oracle_nonrelativistic: 1e-5,
            normalization: 1e-7,
            ode_residual: 1e-6,
        }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<()> {
        ensure!(self.scan_points >= 2, "tolerances.scan_points must be ≥ 2");
        ensure!(self.oracle_points >= 3, "tolerances.oracle_points must be ≥ 3");
        ensure!(self.oracle_scan_points >= 2, "tolerances.oracle_scan_points must be ≥ 2");
        for (name, v) in [
            ("endpoint_guard", self.endpoint_guard),
            ("root_residual", self.root_residual),
            ("oracle_relativistic", self.oracle_relativistic),
            ("oracle_coupled_relative", self.oracle_coupled_relative),
            ("oracle_nonrelativistic", self.oracle_nonrelativistic),
            ("normalization", self.normalization),
            ("ode_residual", self.ode_residual),
        ] {
            ensure!(v > 0.0 && v.is_finite(), "tolerances.{name} must be positive, got {v}");
        }
        ensure!(self.endpoint_guard < 1.0, "tolerances.endpoint_guard must be < 1");
        Ok(())
    }

    pub fn solver(&self) -> SolverOptions {
        SolverOptions {
            scan_points: self.scan_points,
            endpoint_guard: self.endpoint_guard,
            ..SolverOptions::default()
        }
    }
}

/// Top-level configuration. Absent sections take the values of
/// [`RunConfig::default`].
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub potential: Option<PotentialConfig>,
    pub dimensions: Vec<u32>,
    pub quantum: QuantumRanges,
    pub coulomb: Option<CoulombConfig>,
    pub scan: Option<ScanConfig>,
    pub wavefn: Option<WavefnConfig>,
    pub output: OutputConfig,
    pub tolerances: Tolerances,
}

fn default_dimensions() -> Vec<u32> {
    vec![3]
}

impl Default for RunConfig {
    /// Kratzer a₀ = 0.1, r₀ = 1, no ring, D = 3 ground state; Coulomb qe = 1.
    fn default() -> Self {
        RunConfig {
            mode: None,
            potential: Some(PotentialConfig {
                a0: Some(0.1),
                r0: Some(1.0),
                a: None,
                b: None,
                c: 0.0,
                mu: 1.0,
            }),
            dimensions: default_dimensions(),
            quantum: QuantumRanges::default(),
            coulomb: Some(CoulombConfig {
                qe: 1.0,
                ell: Range::Single(0),
                mu: 1.0,
            }),
            scan: None,
            wavefn: None,
            output: OutputConfig::default(),
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text).context("invalid configuration")?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Checks everything `mode` will use.
    pub fn validate(&self, mode: Mode) -> Result<()> {
        if let Some(declared) = self.mode {
            ensure!(declared == mode, "config declares mode {declared:?} but the {mode:?} command was run");
        }
        ensure!(!self.dimensions.is_empty(), "`dimensions` is empty");
        ensure!(self.dimensions.iter().all(|&d| d >= 2), "every dimension must be ≥ 2");
        self.quantum.n.validate("quantum.n")?;
        self.quantum.n_tilde.validate("quantum.n_tilde")?;
        self.quantum.m.validate("quantum.m")?;
        self.tolerances.validate()?;

        let needs_potential = match mode {
            Mode::Spectrum | Mode::Wavefn | Mode::Verify => true,
            Mode::Coulomb => false,
            Mode::Scan => self.scan_config()?.target() == ScanTarget::Spectrum,
        };
        if needs_potential {
            let p = self.potential()?;
            for &d in &self.dimensions {
                p.spec(d)?;
            }
        }
        let needs_coulomb = match mode {
            Mode::Coulomb => true,
            Mode::Scan => self.scan_config()?.target() == ScanTarget::Coulomb,
            _ => false,
        };
        if needs_coulomb {
            let c = self.coulomb_config()?;
            c.ell.validate("coulomb.ell")?;
            ensure!(c.qe.is_finite(), "coulomb.qe must be finite");
            for &d in &self.dimensions {
                PotentialSpec::coulomb(c.qe, c.mu, d)?;
            }
        }
        if mode == Mode::Scan {
            let scan = self.scan_config()?;
            scan.values()?;
            match (scan.variable, scan.target()) {
                (ScanVariable::Qe, ScanTarget::Spectrum) => bail!("a `qe` sweep needs target `coulomb`"),
                (ScanVariable::C | ScanVariable::A0 | ScanVariable::R0, ScanTarget::Coulomb) => {
                    bail!("`{}` cannot be swept for the Coulomb target", scan.variable.name())
                }
                (ScanVariable::A0 | ScanVariable::R0, ScanTarget::Spectrum) => {
                    ensure!(self.potential()?.is_kratzer(), "sweeping a0 or r0 needs a Kratzer potential")
                }
                _ => {}
            }
        }
        if mode == Mode::Wavefn {
            let w = self.wavefn.clone().unwrap_or_default();
            ensure!(w.r_points >= 1, "wavefn.r_points must be ≥ 1");
            ensure!(w.r_decay_lengths > 0.0, "wavefn.r_decay_lengths must be positive");
        }
        Ok(())
    }

    pub fn potential(&self) -> Result<&PotentialConfig> {
        self.potential.as_ref().context("config has no `potential` section")
    }

    pub fn coulomb_config(&self) -> Result<&CoulombConfig> {
        self.coulomb.as_ref().context("config has no `coulomb` section")
    }

    pub fn scan_config(&self) -> Result<&ScanConfig> {
        self.scan.as_ref().context("config has no `scan` section")
    }
}
