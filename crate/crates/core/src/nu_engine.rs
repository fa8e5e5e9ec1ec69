//! Nikiforov–Uvarov reduction of hypergeometric-type equations
//!
//! ```text
//! ψ''(s) + τ̃(s)/σ(s) ψ'(s) + σ̃(s)/σ²(s) ψ(s) = 0
//! ```
//!
//! with deg σ, deg σ̃ ≤ 2 and deg τ̃ ≤ 1. The factorization ψ = φ·y turns the
//! equation into σy'' + τy' + λy = 0 where
//!
//! ```text
//! π(s) = (σ' − τ̃)/2 ± √( ((σ' − τ̃)/2)² − σ̃ + kσ )
//! τ(s) = τ̃(s) + 2π(s)
//! λ    = k + π'  =  −nτ' − n(n − 1)σ''/2
//! ```
//!
//! and k is fixed by requiring the radicand to be a perfect square.

use crate::error::{Error, Result};

/// Coefficients are considered equal (or zero) within this relative tolerance.
pub const REL_TOL: f64 = 1e-12;

/// Dense polynomial of degree ≤ 2, lowest degree first.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Poly(pub [f64; 3]);

impl Poly {
    pub const ZERO: Poly = Poly([0.0; 3]);

    pub fn new(c0: f64, c1: f64, c2: f64) -> Self {
        Poly([c0, c1, c2])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly([c0, c1, 0.0])
    }

    /// Builds from a coefficient slice, rejecting anything above `max_degree`.
    pub fn from_slice(name: &'static str, coeffs: &[f64], max_degree: usize) -> Result<Self> {
        let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let degree = coeffs
            .iter()
            .rposition(|c| c.abs() > REL_TOL * scale)
            .unwrap_or(0);
        if degree > max_degree {
            return Err(Error::InvalidDegree {
                name,
                degree,
                max: max_degree,
            });
        }
        let mut out = [0.0; 3];
        for (dst, src) in out.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Ok(Poly(out))
    }

    pub fn coeffs(&self) -> [f64; 3] {
        self.0
    }

    pub fn eval(&self, s: f64) -> f64 {
        let [c0, c1, c2] = self.0;
        c0 + s * (c1 + s * c2)
    }

    pub fn derivative(&self) -> Poly {
        Poly([self.0[1], 2.0 * self.0[2], 0.0])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0.0)
    }

    /// Degree, treating coefficients below `REL_TOL · max|c|` as zero.
    pub fn degree(&self) -> usize {
        let scale = self.max_abs();
        self.0
            .iter()
            .rposition(|c| c.abs() > REL_TOL * scale)
            .unwrap_or(0)
    }

    pub fn scale(&self, factor: f64) -> Poly {
        Poly(self.0.map(|c| c * factor))
    }

    /// Coefficient-wise comparison with relative tolerance `tol`.
    pub fn approx_eq(&self, other: &Poly, tol: f64) -> bool {
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| (a - b).abs() <= tol * scale)
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        Poly([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl std::ops::Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        Poly([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

/// The polynomial data (σ, σ̃, τ̃) of a hypergeometric-type equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuProblem {
    sigma: Poly,
    sigma_tilde: Poly,
    tau_tilde: Poly,
}

impl NuProblem {
    pub fn new(sigma: &[f64], sigma_tilde: &[f64], tau_tilde: &[f64]) -> Result<Self> {
        let sigma = Poly::from_slice("sigma", sigma, 2)?;
        let sigma_tilde = Poly::from_slice("sigma_tilde", sigma_tilde, 2)?;
        let tau_tilde = Poly::from_slice("tau_tilde", tau_tilde, 1)?;
        if sigma.is_zero() {
            return Err(Error::DegenerateProblem);
        }
        Ok(NuProblem {
            sigma,
            sigma_tilde,
            tau_tilde,
        })
    }

    pub fn sigma(&self) -> Poly {
        self.sigma
    }

    pub fn sigma_tilde(&self) -> Poly {
        self.sigma_tilde
    }

    pub fn tau_tilde(&self) -> Poly {
        self.tau_tilde
    }

    /// (σ' − τ̃)/2, the part of π outside the square root.
    fn half_shift(&self) -> Poly {
        (self.sigma.derivative() - self.tau_tilde).scale(0.5)
    }

    /// The radicand Q(s; k) = ((σ' − τ̃)/2)² − σ̃ + kσ.
    pub fn radicand(&self, k: f64) -> Poly {
        let [h0, h1, _] = self.half_shift().0;
        let square = Poly::new(h0 * h0, 2.0 * h0 * h1, h1 * h1);
        square - self.sigma_tilde + self.sigma.scale(k)
    }
}

/// Discriminant q₁² − 4q₀q₂ of a quadratic, lowest degree first.
pub fn discriminant(q: &Poly) -> f64 {
    let [q0, q1, q2] = q.0;
    q1 * q1 - 4.0 * q0 * q2
}

/// One π-branch: the k value and the resulting degree-≤1 π(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiCandidate {
    pub k: f64,
    pub pi: Poly,
    /// Sign in front of the square root, ±1.
    pub branch_sign: f64,
}

/// Real roots of a·k² + b·k + c = 0 with a possibly-vanishing leading term.
fn real_roots(a: f64, b: f64, c: f64) -> Result<Vec<f64>> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        // every k works: the radicand does not depend on k at all
        return Err(Error::DegenerateProblem);
    }
    if a.abs() <= REL_TOL * scale {
        if b.abs() <= REL_TOL * scale {
            return Err(Error::NoPerfectSquare);
        }
        return Ok(vec![-c / b]);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -REL_TOL * b.abs().max((4.0 * a * c).abs()) {
        return Err(Error::NoPerfectSquare);
    }
    let sq = disc.max(0.0).sqrt();
    if sq == 0.0 {
        return Ok(vec![-b / (2.0 * a)]);
    }
    let q = -0.5 * (b + b.signum() * sq);
    let (r1, r2) = if q == 0.0 {
        (sq / (2.0 * a), -sq / (2.0 * a))
    } else {
        (q / a, c / q)
    };
    Ok(if r1 <= r2 { vec![r1, r2] } else { vec![r2, r1] })
}

/// Square root of a perfect-square quadratic as a degree-≤1 polynomial.
///
/// Returns `None` when Q is a negative square (no real root polynomial).
fn sqrt_perfect_square(q: &Poly) -> Option<Poly> {
    let [q0, q1, q2] = q.0;
    let scale = q.max_abs();
    let tiny = REL_TOL * scale;
    if q0 < -tiny || q2 < -tiny {
        return None;
    }
    let (q0, q2) = (q0.max(0.0), q2.max(0.0));
    if scale == 0.0 {
        return Some(Poly::ZERO);
    }
    if q2 >= q0 {
        let p1 = q2.sqrt();
        Some(Poly::linear(q1 / (2.0 * p1), p1))
    } else {
        let p0 = q0.sqrt();
        Some(Poly::linear(p0, q1 / (2.0 * p0)))
    }
}

/// All π-branches: for each real k zeroing the discriminant of Q(s; k),
/// both signs of the square root. Candidates come ordered by k, then `+`
/// before `−`.
pub fn pi_candidates(problem: &NuProblem) -> Result<Vec<PiCandidate>> {
    // Q(s; k) = U(s) + k·σ(s), so disc(k) is quadratic in k.
    let u = problem.radicand(0.0).0;
    let v = problem.sigma.0;
    let a = v[1] * v[1] - 4.0 * v[0] * v[2];
    let b = 2.0 * u[1] * v[1] - 4.0 * (u[0] * v[2] + v[0] * u[2]);
    let c = u[1] * u[1] - 4.0 * u[0] * u[2];
    let ks = real_roots(a, b, c)?;

    let shift = problem.half_shift();
    let mut out = Vec::with_capacity(4);
    for k in ks {
        let Some(root) = sqrt_perfect_square(&problem.radicand(k)) else {
            continue;
        };
        for sign in [1.0, -1.0] {
            out.push(PiCandidate {
                k,
                pi: shift + root.scale(sign),
                branch_sign: sign,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NoPerfectSquare);
    }
    Ok(out)
}

/// The selected branch with τ' < 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuSolution {
    pub k: f64,
    pub pi: Poly,
    pub tau: Poly,
    pub tau_slope: f64,
    pub branch_sign: f64,
    /// How many candidates had τ' < 0; more than one means the tie-break
    /// (smallest k, then steepest τ', then the `−` branch) decided.
    pub admissible_count: usize,
}

impl NuSolution {
    /// λ from the branch data, k + π'.
    pub fn lambda_from_k(&self) -> f64 {
        self.k + self.pi.0[1]
    }
}

pub fn select_branch(candidates: &[PiCandidate], problem: &NuProblem) -> Result<NuSolution> {
    let mut admissible: Vec<NuSolution> = candidates
        .iter()
        .map(|c| {
            let tau = problem.tau_tilde + c.pi.scale(2.0);
            NuSolution {
                k: c.k,
                pi: c.pi,
                tau,
                tau_slope: tau.0[1],
                branch_sign: c.branch_sign,
                admissible_count: 0,
            }
        })
        .filter(|s| s.tau_slope < 0.0)
        .collect();
    let count = admissible.len();
    admissible.sort_by(|x, y| {
        x.k.total_cmp(&y.k)
            .then(x.tau_slope.total_cmp(&y.tau_slope))
            .then(x.branch_sign.total_cmp(&y.branch_sign))
    });
    let mut best = *admissible.first().ok_or(Error::NoAdmissibleBranch)?;
    best.admissible_count = count;
    Ok(best)
}

/// λₙ = −nτ' − n(n − 1)σ''/2.
pub fn lambda_n(solution: &NuSolution, problem: &NuProblem, n: u32) -> f64 {
    let n = f64::from(n);
    let sigma_second = 2.0 * problem.sigma.0[2];
    -n * solution.tau_slope - 0.5 * n * (n - 1.0) * sigma_second
}

/// Weight ρ(s) solving (σρ)' = τρ, for the two σ families in use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// ρ(s) = s^power · e^(−rate·s), from σ = c·s.
    PowerExponential { power: f64, rate: f64 },
    /// ρ(s) = (1 − s)^alpha · (1 + s)^beta, from σ = c·(1 − s²).
    Jacobi { alpha: f64, beta: f64 },
}

impl Weight {
    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            Weight::PowerExponential { power, rate } => s.powf(power) * (-rate * s).exp(),
            Weight::Jacobi { alpha, beta } => (1.0 - s).powf(alpha) * (1.0 + s).powf(beta),
        }
    }
}

pub fn rodrigues_weight(solution: &NuSolution, problem: &NuProblem) -> Result<Weight> {
    let [s0, s1, s2] = problem.sigma.0;
    let scale = problem.sigma.max_abs();
    let zero = |x: f64| x.abs() <= REL_TOL * scale;
    let [t0, t1, _] = solution.tau.0;

    if zero(s0) && zero(s2) && !zero(s1) {
        // ρ'/ρ = (τ − σ')/σ = (t0 − c)/(c s) + t1/c
        let c = s1;
        return Ok(Weight::PowerExponential {
            power: (t0 - c) / c,
            rate: -t1 / c,
        });
    }
    if !zero(s0) && zero(s1) && ((s2 + s0).abs() <= REL_TOL * scale) {
        // σ = c(1 − s²): ρ'/ρ = (t0 + (t1 + 2c)s) / (c(1 − s)(1 + s))
        let c = s0;
        let p = (t0 + t1 + 2.0 * c) / (2.0 * c);
        let q = (t0 - t1 - 2.0 * c) / (2.0 * c);
        return Ok(Weight::Jacobi { alpha: -p, beta: q });
    }
    Err(Error::UnsupportedSigmaFamily)
}

/// Convenience: candidates, branch selection and λ-matching in one call.
pub fn solve(problem: &NuProblem) -> Result<NuSolution> {
    let candidates = pi_candidates(problem)?;
    select_branch(&candidates, problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radial(eps: f64, beta_sq: f64, gamma_sq: f64) -> NuProblem {
        NuProblem::new(&[0.0, 1.0], &[-gamma_sq, beta_sq, -eps * eps], &[0.0]).unwrap()
    }

    fn angular(m_prime: f64, nu_prime: f64) -> NuProblem {
        NuProblem::new(
            &[1.0, 0.0, -1.0],
            &[nu_prime - m_prime * m_prime, 0.0, -nu_prime],
            &[0.0, -2.0],
        )
        .unwrap()
    }

    #[test]
    fn radial_candidates_hand_values() {
        let p = radial(1.0, 3.0, 2.0);
        let c = pi_candidates(&p).unwrap();
        assert_eq!(c.len(), 4);
        assert!((c[0].k - 0.0).abs() < 1e-12 && (c[2].k - 6.0).abs() < 1e-12);
        assert!(c.iter().any(|x| x.k.abs() < 1e-12 && x.pi.approx_eq(&Poly::linear(2.0, -1.0), 1e-12)));
        assert!(c.iter().any(|x| (x.k - 6.0).abs() < 1e-12 && x.pi.approx_eq(&Poly::linear(-1.0, -1.0), 1e-12)));
    }

    #[test]
    fn angular_candidates_hand_values() {
        let p = angular(1.0, 2.0);
        let c = pi_candidates(&p).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().any(|x| (x.k - 1.0).abs() < 1e-12 && x.pi.approx_eq(&Poly::linear(0.0, -1.0), 1e-12)));
        assert!(c.iter().any(|x| (x.k - 2.0).abs() < 1e-12 && x.pi.approx_eq(&Poly::linear(-1.0, 0.0), 1e-12)));
    }

    #[test]
    fn oscillator_single_k() {
        let p = NuProblem::new(&[1.0], &[0.0, 0.0, -1.0], &[0.0]).unwrap();
        let c = pi_candidates(&p).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].k, 0.0);
        assert!(c[0].pi.approx_eq(&Poly::linear(0.0, 1.0), 1e-15));
        assert!(c[1].pi.approx_eq(&Poly::linear(0.0, -1.0), 1e-15));
    }

    #[test]
    fn selection_matches_hand_values() {
        let p = radial(1.0, 3.0, 2.0);
        let s = select_branch(&pi_candidates(&p).unwrap(), &p).unwrap();
        assert!(s.k.abs() < 1e-12);
        assert!(s.tau.approx_eq(&Poly::linear(4.0, -2.0), 1e-12));
        assert_eq!(s.admissible_count, 2);

        let p = angular(1.0, 2.0);
        let s = select_branch(&pi_candidates(&p).unwrap(), &p).unwrap();
        assert!((s.k - 1.0).abs() < 1e-12);
        assert!(s.pi.approx_eq(&Poly::linear(0.0, -1.0), 1e-12));
        assert!(s.tau.approx_eq(&Poly::linear(0.0, -4.0), 1e-12));
    }

    #[test]
    fn no_admissible_branch() {
        let p = radial(1.0, 3.0, 2.0);
        let bad = [PiCandidate {
            k: 0.0,
            pi: Poly::linear(0.0, 1.0),
            branch_sign: 1.0,
        }];
        assert_eq!(select_branch(&bad, &p), Err(Error::NoAdmissibleBranch));
    }

    #[test]
    fn lambda_values() {
        let p = radial(1.0, 3.0, 2.0);
        let s = solve(&p).unwrap();
        assert!((lambda_n(&s, &p, 3) - 6.0).abs() < 1e-12);
        assert_eq!(lambda_n(&s, &p, 0), 0.0);

        let p = angular(1.0, 2.0);
        let s = solve(&p).unwrap();
        assert!((lambda_n(&s, &p, 2) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn weights() {
        let p = radial(1.0, 3.0, 2.0);
        let s = solve(&p).unwrap();
        match rodrigues_weight(&s, &p).unwrap() {
            Weight::PowerExponential { power, rate } => {
                assert!((power - 3.0).abs() < 1e-12);
                assert!((rate - 2.0).abs() < 1e-12);
            }
            w => panic!("unexpected {w:?}"),
        }
        let p = angular(1.0, 2.0);
        let s = solve(&p).unwrap();
        match rodrigues_weight(&s, &p).unwrap() {
            Weight::Jacobi { alpha, beta } => {
                assert!((alpha - 1.0).abs() < 1e-12);
                assert!((beta - 1.0).abs() < 1e-12);
            }
            w => panic!("unexpected {w:?}"),
        }
    }

    #[test]
    fn weight_solves_pearson_equation() {
        // (σρ)' = τρ checked by central differences on the angular family
        let p = angular(1.0, 2.0);
        let s = solve(&p).unwrap();
        let w = rodrigues_weight(&s, &p).unwrap();
        for &x in &[-0.7, -0.2, 0.3, 0.8] {
            let h = 1e-5;
            let sr = |t: f64| p.sigma().eval(t) * w.eval(t);
            let lhs = (sr(x + h) - sr(x - h)) / (2.0 * h);
            let rhs = s.tau.eval(x) * w.eval(x);
            assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn unsupported_sigma() {
        let p = NuProblem::new(&[1.0, 0.0, 1.0], &[-1.0], &[0.0, -2.0]).unwrap();
        let sol = NuSolution {
            k: 0.0,
            pi: Poly::ZERO,
            tau: Poly::linear(0.0, -2.0),
            tau_slope: -2.0,
            branch_sign: 1.0,
            admissible_count: 1,
        };
        assert_eq!(rodrigues_weight(&sol, &p), Err(Error::UnsupportedSigmaFamily));
    }

    #[test]
    fn rejects_bad_degrees() {
        assert!(matches!(
            NuProblem::new(&[0.0, 0.0, 0.0, 1.0], &[1.0], &[0.0]),
            Err(Error::InvalidDegree { name: "sigma", .. })
        ));
        assert!(matches!(
            NuProblem::new(&[1.0], &[1.0], &[0.0, 0.0, 1.0]),
            Err(Error::InvalidDegree { name: "tau_tilde", .. })
        ));
        assert_eq!(NuProblem::new(&[0.0], &[1.0], &[0.0]), Err(Error::DegenerateProblem));
    }

    #[test]
    fn complex_k_has_no_perfect_square() {
        // σ = 1, τ̃ = 0, σ̃ = s² gives Q = −s² + k whose square root is never real
        let p = NuProblem::new(&[1.0], &[0.0, 0.0, 1.0], &[0.0]).unwrap();
        assert_eq!(pi_candidates(&p), Err(Error::NoPerfectSquare));
    }
}
