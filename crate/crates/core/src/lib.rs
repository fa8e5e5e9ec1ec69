//! Exact bound states of the D-dimensional Klein-Gordon equation with equal
//! scalar and vector ring-shaped Kratzer potential
//!
//! ```text
//! V(r, θ) = −A/r + B/r² + C·cot²θ/r²,    A = 2a₀r₀,  B = a₀r₀²
//! ```
//!
//! in natural units (ħ = c = 1) with the rest mass μ as the energy scale.
//!
//! The crate is split by role:
//!
//! - [`nu_engine`] reduces hypergeometric-type ODEs with polynomial
//!   coefficients to their π-branches, k values, τ(s) and λₙ.
//! - [`special_fn`] evaluates Laguerre and Jacobi polynomials with real
//!   parameters, ln Γ and the quadrature used for normalization integrals.
//! - [`spectrum`] holds the potential and quantum-number types and all the
//!   energy-eigenvalue solvers (transcendental root solves and closed forms).
//! - [`wavefn`] evaluates the normalized radial, polar, azimuthal and total
//!   wavefunctions.
//! - [`oracle`] is an independent finite-difference eigensolver used to
//!   cross-check every closed form.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod nu_engine;
pub mod oracle;
pub mod roots;
pub mod special_fn;
pub mod spectrum;
pub mod wavefn;

pub use error::{Error, Result};
pub use spectrum::{EnergyKind, EnergyLevel, Method, PotentialSpec, QuantumNumbers};
