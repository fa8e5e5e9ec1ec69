use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial `{name}` has degree {degree}, at most {max} allowed")]
    InvalidDegree {
        name: &'static str,
        degree: usize,
        max: usize,
    },
    #[error("sigma is identically zero")]
    DegenerateProblem,
    #[error("no real k turns the radicand into a perfect square")]
    NoPerfectSquare,
    #[error("no pi branch gives tau' < 0")]
    NoAdmissibleBranch,
    #[error("weight extraction supports sigma = c·s and sigma = c·(1 − s²) only")]
    UnsupportedSigmaFamily,
    #[error("parameter `{name}` = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("quadrature did not converge: estimate {value}, error {error} after {evaluations} evaluations")]
    NonConvergent {
        value: f64,
        error: f64,
        evaluations: usize,
    },
    #[error("quadrature rule {rule} cannot integrate over this domain")]
    UnsupportedDomain { rule: &'static str },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("complex angular momentum: radicand {radicand} < 0")]
    ComplexAngularMomentum { radicand: f64 },
    #[error("derived polar index {value} is negative")]
    NegativeIndex { value: f64 },
    #[error("no bound state: defining equation has no sign change in ({lo}, {hi})")]
    NoBoundState { lo: f64, hi: f64 },
    #[error("invalid coupling: radicand negative for E in [{e_lo}, {e_hi}]")]
    InvalidCoupling { e_lo: f64, e_hi: f64 },
    #[error("complex denominator: radicand {radicand} < 0")]
    ComplexDenominator { radicand: f64 },
    #[error("{what} requires r > 0, got {r}")]
    Domain { what: &'static str, r: f64 },
    #[error("grid too coarse: {coarse} ({coarse_points} points) vs {fine} ({fine_points} points), relative gap {relative_gap:e}")]
    GridTooCoarse {
        coarse: f64,
        fine: f64,
        coarse_points: usize,
        fine_points: usize,
        relative_gap: f64,
    },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
