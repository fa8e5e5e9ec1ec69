//! Orthogonal polynomials with real parameters, ln Γ and quadrature.

use crate::error::{Error, Result};
use std::f64::consts::PI;

fn check_param(name: &'static str, value: f64) -> Result<()> {
    if value > -1.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value })
    }
}

/// Generalized Laguerre polynomial L_n^α(x) by the three-term recurrence
/// (k + 1)L_{k+1} = (2k + 1 + α − x)L_k − (k + α)L_{k−1}.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> Result<f64> {
    check_param("alpha", alpha)?;
    Ok(laguerre_unchecked(n, alpha, x))
}

pub(crate) fn laguerre_unchecked(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial P_n^{(a,b)}(x) by the standard three-term recurrence.
pub fn jacobi(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    check_param("a", a)?;
    check_param("b", b)?;
    Ok(jacobi_unchecked(n, a, b, x))
}

pub(crate) fn jacobi_unchecked(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    let ab = a + b;
    for k in 2..=n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (a * a - b * b);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(statrs::function::gamma::ln_gamma(x))
    } else {
        Err(Error::ParameterOutOfRange { name: "x", value: x })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    GaussLegendre,
    GaussLaguerreMapped,
    AdaptiveSimpson,
}

/// A reference rule: nodes and weights on the rule's native interval.
///
/// Gauss–Legendre lives on [−1, 1]; Gauss–Laguerre on [0, ∞) with weight
/// x^α e^(−x); the adaptive Simpson rule carries its base stencil on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    tolerance: f64,
    max_evaluations: usize,
}

/// Integration domain. Semi-infinite domains carry a length scale which
/// should roughly match the decay length of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval { lo: f64, hi: f64 },
    SemiInfinite { lo: f64, scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

pub const DEFAULT_MAX_EVALUATIONS: usize = 1 << 20;

impl QuadratureRule {
    /// n-point Gauss–Legendre rule (Newton iteration on Pₙ).
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParameterOutOfRange {
                name: "n",
                value: n as f64,
            });
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(QuadratureRule {
            kind: QuadratureKind::GaussLegendre,
            nodes,
            weights,
            alpha: 0.0,
            tolerance: 1e-12,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        })
    }

    /// n-point generalized Gauss–Laguerre rule for weight x^α e^(−x).
    pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Self> {
        check_param("alpha", alpha)?;
        if n < 2 {
            return Err(Error::ParameterOutOfRange {
                name: "n",
                value: n as f64,
            });
        }
        let nf = n as f64;
        let mut nodes = vec![0.0_f64; n];
        let mut weights = vec![0.0_f64; n];
        let log_prefactor = log_gamma(nf + alpha + 1.0)? - log_gamma(nf + 1.0)? - 2.0 * (nf + 1.0).ln();
        let mut z = 0.0_f64;
        for i in 0..n {
            // initial guesses after the classic asymptotic node estimates
            z = match i {
                0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha),
                1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                        * (z - nodes[i - 2])
                        / (1.0 + 0.3 * alpha)
                }
            };
            for _ in 0..200 {
                let (p, pm1) = laguerre_pair(n, alpha, z);
                let dp = (nf * p - (nf + alpha) * pm1) / z;
                let dz = p / dp;
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            nodes[i] = z;
            // w = Γ(n+α+1)·x / (n!·(n+1)²·L_{n+1}(x)²)
            let next = laguerre_unchecked(n as u32 + 1, alpha, z);
            weights[i] = (log_prefactor + z.ln() - 2.0 * next.abs().ln()).exp();
        }
        Ok(QuadratureRule {
            kind: QuadratureKind::GaussLaguerreMapped,
            nodes,
            weights,
            alpha,
            tolerance: 1e-12,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        })
    }

    /// Adaptive Simpson refinement to relative tolerance `tolerance`.
    pub fn adaptive_simpson(tolerance: f64, max_evaluations: usize) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "tolerance",
                value: tolerance,
            });
        }
        Ok(QuadratureRule {
            kind: QuadratureKind::AdaptiveSimpson,
            nodes: vec![0.0, 0.5, 1.0],
            weights: vec![1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0],
            alpha: 0.0,
            tolerance,
            max_evaluations,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Single application of a Gauss–Legendre rule on [lo, hi].
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

/// Pₙ(x) and Pₙ'(x).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// (L_n^α(x), L_{n−1}^α(x)).
fn laguerre_pair(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let n = n as u32;
    (
        laguerre_unchecked(n, alpha, x),
        if n == 0 { 0.0 } else { laguerre_unchecked(n - 1, alpha, x) },
    )
}

/// Maps a semi-infinite integrand onto t ∈ [0, 1) via x = lo + scale·t/(1 − t).
fn mapped<F: Fn(f64) -> f64>(f: &F, lo: f64, scale: f64) -> impl Fn(f64) -> f64 + '_ {
    move |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let one_minus = 1.0 - t;
        let x = lo + scale * t / one_minus;
        let v = f(x) * scale / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    }
}

/// Integral of `f` over `domain` with the given rule.
///
/// Gauss–Legendre runs as a composite rule with the panel count doubled
/// until two successive estimates agree to the rule tolerance relative to
/// ∫|f|. Gauss–Laguerre is a fixed rule; its error estimate compares with
/// the rule of half the order. Adaptive Simpson bisects locally.
pub fn integrate<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule, domain: Domain) -> Result<Estimate> {
    match (rule.kind, domain) {
        (QuadratureKind::GaussLegendre, Domain::Interval { lo, hi }) => composite_legendre(&f, rule, lo, hi),
        (QuadratureKind::GaussLegendre, Domain::SemiInfinite { lo, scale }) => {
            composite_legendre(&mapped(&f, lo, scale), rule, 0.0, 1.0)
        }
        (QuadratureKind::AdaptiveSimpson, Domain::Interval { lo, hi }) => adaptive_simpson(&f, rule, lo, hi),
        (QuadratureKind::AdaptiveSimpson, Domain::SemiInfinite { lo, scale }) => {
            adaptive_simpson(&mapped(&f, lo, scale), rule, 0.0, 1.0)
        }
        (QuadratureKind::GaussLaguerreMapped, Domain::SemiInfinite { lo, scale }) => {
            let apply = |r: &QuadratureRule| -> f64 {
                r.nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(&y, &w)| {
                        let base = y.powf(r.alpha) * (-y).exp();
                        w * f(lo + scale * y) / base
                    })
                    .sum::<f64>()
                    * scale
            };
            let value = apply(rule);
            let half = QuadratureRule::gauss_laguerre((rule.nodes.len() / 2).max(2), rule.alpha)?;
            let error = (value - apply(&half)).abs();
            Ok(Estimate {
                value,
                error,
                evaluations: rule.nodes.len() + half.nodes.len(),
            })
        }
        (QuadratureKind::GaussLaguerreMapped, Domain::Interval { .. }) => Err(Error::UnsupportedDomain {
            rule: "GaussLaguerreMapped",
        }),
    }
}

fn composite_legendre<F: Fn(f64) -> f64>(f: &F, rule: &QuadratureRule, lo: f64, hi: f64) -> Result<Estimate> {
    let per_panel = rule.nodes.len();
    let run = |panels: usize| -> (f64, f64) {
        let width = (hi - lo) / panels as f64;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for p in 0..panels {
            let a = lo + width * p as f64;
            let b = a + width;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let v = f(mid + half * x);
                sum += w * half * v;
                abs_sum += w * half * v.abs();
            }
        }
        (sum, abs_sum)
    };
    let mut panels = 1;
    let mut evaluations = per_panel;
    let (mut prev, _) = run(panels);
    loop {
        panels *= 2;
        evaluations += panels * per_panel;
        let (cur, abs_cur) = run(panels);
        let error = (cur - prev).abs();
        if error <= rule.tolerance * abs_cur || abs_cur == 0.0 {
            return Ok(Estimate {
                value: cur,
                error,
                evaluations,
            });
        }
        if evaluations > rule.max_evaluations {
            return Err(Error::NonConvergent {
                value: cur,
                error,
                evaluations,
            });
        }
        prev = cur;
    }
}

struct Simpson<'a, F> {
    f: &'a F,
    evaluations: usize,
    budget: usize,
    exhausted: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evaluations += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return (left + right + delta / 15.0, delta.abs() / 15.0);
        }
        if self.evaluations >= self.budget {
            self.exhausted = true;
            return (left + right + delta / 15.0, delta.abs() / 15.0);
        }
        let (lv, le) = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
        let (rv, re) = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        (lv + rv, le + re)
    }
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, rule: &QuadratureRule, lo: f64, hi: f64) -> Result<Estimate> {
    // initial scale from a coarse composite pass so the tolerance is
    // relative to the size of ∫|f|
    let coarse_n = 64;
    let h = (hi - lo) / coarse_n as f64;
    let samples: Vec<f64> = (0..=coarse_n).map(|i| f(lo + h * i as f64)).collect();
    let scale = samples.iter().map(|v| v.abs()).sum::<f64>() * h;
    let tol = rule.tolerance * scale.max(f64::MIN_POSITIVE);
    let mut s = Simpson {
        f,
        evaluations: coarse_n + 1,
        budget: rule.max_evaluations,
        exhausted: false,
    };
    let mut total = 0.0;
    let mut error = 0.0;
    let panels = coarse_n / 2;
    for p in 0..panels {
        let a = lo + h * (2 * p) as f64;
        let b = a + 2.0 * h;
        let (fa, fm, fb) = (samples[2 * p], samples[2 * p + 1], samples[2 * p + 2]);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let (v, e) = s.refine(a, b, fa, fm, fb, whole, tol / panels as f64, 50);
        total += v;
        error += e;
    }
    if s.exhausted || error > tol.max(rule.tolerance * total.abs()) * 10.0 {
        return Err(Error::NonConvergent {
            value: total,
            error,
            evaluations: s.evaluations,
        });
    }
    Ok(Estimate {
        value: total,
        error,
        evaluations: s.evaluations,
    })
}
