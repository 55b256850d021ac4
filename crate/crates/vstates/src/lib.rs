//! Doubly-connected rotating vortex patches (V-states) of the 2D Euler
//! equations.
//!
//! A V-state is a patch of uniform vorticity that rotates rigidly with
//! angular velocity Ω. This crate studies the doubly-connected case: the
//! patch is D₁ \ D₂ with D₂ compactly contained in D₁, and the trivial
//! solution is the annulus 𝔸_b = {b < |z| < 1}. Both boundaries are
//! parametrized by exterior conformal maps with real Laurent coefficients,
//!
//! ```text
//! φ_j(w) = b_j w + Σ_{n≥1} a_{j,n} w^{-(nm-1)},   b₁ = 1, b₂ = b,
//! ```
//!
//! where the exponents nm−1 enforce m-fold symmetry. Writing λ = 1 − 2Ω,
//! the rigid-rotation condition becomes a pair of scalar equations
//! G_j(λ, f₁, f₂) = 0 on the unit circle, built from Cauchy-type boundary
//! integrals ([`contour_functional`]).
//!
//! The linearization at the annulus acts diagonally on modes through 2×2
//! multiplier matrices M_n(λ) ([`spectral_core`]). For most (m, b) the
//! matrix M_m has two simple nonlinear eigenvalues λ_m^± and bifurcation
//! is classical; this crate focuses on the degenerate points where the two
//! eigenvalues collide (Δ_m = 0, λ_m = (1+b²)/2):
//!
//! * m = 2 is degenerate for every b,
//! * each m ≥ 3 is degenerate exactly at one radius b_m.
//!
//! At such points transversality fails and the local behavior is decided
//! by a two-parameter Lyapunov-Schmidt reduction F₂(λ, t)
//! ([`lyapunov_schmidt`]), whose Hessian at the degenerate point has
//! closed-form entries ([`closed_forms`]). The sign dichotomy of ∂_tt F₂
//! yields a transcritical bifurcation for m = 2 and no bifurcation at all
//! for m ≥ 3, and both behaviors are verified non-perturbatively by
//! predictor-corrector continuation ([`continuation`]).
//!
//! Every closed form is cross-checked against an independent quadrature or
//! finite-difference oracle; the `verify` CLI subcommand runs those oracles
//! end to end.

pub mod cli_io;
pub mod closed_forms;
pub mod continuation;
pub mod contour_functional;
pub mod error;
pub mod lyapunov_schmidt;
pub mod spectral_core;

pub use error::{Error, Result};
