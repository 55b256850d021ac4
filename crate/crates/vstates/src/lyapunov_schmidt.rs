//! Numerical Lyapunov-Schmidt reduction at a degenerate point.
//!
//! At (m, b) with double eigenvalue λ_m, the linearization at the annulus
//! has the one-dimensional kernel span{v_m}, v_m = (εb, 1)ᵀ on the first
//! harmonic, and a range whose mode-1 part is span{ŵ⊥}, ŵ⊥ = (ε, 1)/√2.
//! Splitting the truncated coefficient space accordingly, a state is
//!
//! ```text
//! f = t·v_m + k,    k = α·(1, 0)ᵀ w̄^{m−1} + Σ_{n≥2} A_n w̄^{nm−1},
//! ```
//!
//! with k ranging over the complement (2N−1 real unknowns). The reduction
//! solves the range part of the equation for k = φ(λ, t·v_m) by Newton
//! iteration and leaves the scalar
//!
//! ```text
//! F₂(λ, t) = ⟨B₁(G(λ, t·v_m + k)), Ŵ⟩ / t,    Ŵ = (1, −ε)/√2,
//! ```
//!
//! whose zero set near (λ_m, 0) is exactly the set of nontrivial V-states.
//! Dividing by t removes the root carried by the trivial branch; at t = 0
//! the value is defined as 0, which is exact there since φ(λ, 0) = 0. The
//! scaled residual reproduces the closed-form Taylor data of
//! [`crate::closed_forms`] with no extra normalization: its second
//! derivatives at (λ_m, 0) equal ∂_λλF₂ = √2m²b^{1−m} and ∂_ttF₂ directly,
//! which the ∂_λλ check at (3, 1/2) pins down and every other entry then
//! confirms.
//!
//! The Hessian stencil never places a sample on the t = 0 line (where the
//! convention would hide the λ-curvature): it uses the six points
//! (λ_m + i·h_λ, ±h_t), i ∈ {−1, 0, 1}, extracts ∂_tt from the t-pair at
//! i = 0 (the center value is exactly 0), and ∂_λλ from the second
//! difference of the even-in-t averages S_i = (f(i, +h) + f(i, −h))/2.

use nalgebra::{DMatrix, DVector};

use crate::closed_forms::{hessian_closed, ReducedHessian};
use crate::contour_functional::{eval_g, project_modes, QuadratureGrid, VStateCoeffs};
use crate::error::{Error, Result};
use crate::spectral_core::{epsilon, AnnulusConfig};

/// Newton controls for the complement solve.
///
/// Defaults follow a robustness-over-speed policy: the systems are tiny
/// (2N−1 unknowns), so the Jacobian is refreshed by forward differences at
/// every iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Residual tolerance in the mode-coefficient max norm.
    pub tol: f64,
    /// Iteration cap; exceeding it signals leaving the contraction
    /// neighborhood rather than a solver bug.
    pub max_iters: usize,
    /// Forward-difference step for the Jacobian columns.
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-11,
            max_iters: 25,
            fd_step: 1e-7,
        }
    }
}

/// Coordinates of the complement component k: the flat layout is
/// [α, A₂ᵒᵘᵗ, A₂ⁱⁿ, ..., A_Nᵒᵘᵗ, A_Nⁱⁿ]. The mode-1 inner coordinate is
/// structurally absent, so k never has a component along v_m.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementCoords {
    pub values: Vec<f64>,
}

impl ComplementCoords {
    pub fn zeros(n_modes: usize) -> Self {
        ComplementCoords {
            values: vec![0.0; 2 * n_modes - 1],
        }
    }

    pub fn n_modes(&self) -> usize {
        (self.values.len() + 1) / 2
    }

    /// Coefficient α of the (1, 0)ᵀ w̄^{m−1} direction.
    pub fn alpha(&self) -> f64 {
        self.values[0]
    }

    /// Coefficient pair A_n = (outer, inner) for n ≥ 2.
    pub fn mode_pair(&self, n: usize) -> (f64, f64) {
        (self.values[2 * n - 3], self.values[2 * n - 2])
    }

    /// Euclidean size of the complement component.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// The coefficient state t·v_m + k this complement point represents.
    pub fn embed(&self, cfg: &AnnulusConfig, t: f64) -> VStateCoeffs {
        let n_modes = self.n_modes();
        let mut coeffs = VStateCoeffs::annulus(cfg.m, cfg.b, n_modes);
        coeffs.outer[0] = t * cfg.epsilon() * cfg.b + self.values[0];
        coeffs.inner[0] = t;
        for n in 2..=n_modes {
            coeffs.outer[n - 1] = self.values[2 * n - 3];
            coeffs.inner[n - 1] = self.values[2 * n - 2];
        }
        coeffs
    }
}

/// Complement solve outcome: the coordinates plus Newton diagnostics and
/// the mode-1 coefficient pair of G at the solution (what F₂ projects).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementSolution {
    pub coords: ComplementCoords,
    pub newton_iters: usize,
    pub residual: f64,
    pub mode1: (f64, f64),
}

/// One evaluation of the reduced function.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSample {
    pub lambda: f64,
    pub t: f64,
    /// Coordinate of F₂ along the co-range direction Ŵ.
    pub f2: f64,
    /// Size of the complement component φ(λ, t·v_m).
    pub k_norm: f64,
    pub newton_iters: usize,
    pub residual: f64,
    pub complement: ComplementCoords,
}

/// Numeric Hessian of F₂ at the degenerate point, with its closed-form
/// counterpart and agreement diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianReport {
    /// First-derivative estimates; both vanish at the critical point.
    pub d_lambda: f64,
    pub d_t: f64,
    pub d_ll: f64,
    pub d_tl: f64,
    pub d_tt: f64,
    /// (h_λ, h_t) of the coarse stencil; the fine one halves both.
    pub steps: (f64, f64),
    pub closed: ReducedHessian,
    /// |numeric − closed| / max(1, |closed|) for (d_ll, d_tl, d_tt).
    pub rel_err: (f64, f64, f64),
}

/// Scalar coordinate of a mode-1 pair along Ŵ = (1, −ε)/√2.
pub fn project_q(mode1: (f64, f64), m: usize) -> f64 {
    (mode1.0 - epsilon(m) * mode1.1) / std::f64::consts::SQRT_2
}

/// Scalar coordinate of a mode-1 pair along the range direction
/// ŵ⊥ = (ε, 1)/√2; this component is what the complement solve drives to
/// zero on the first harmonic.
pub fn project_range(mode1: (f64, f64), m: usize) -> f64 {
    (epsilon(m) * mode1.0 + mode1.1) / std::f64::consts::SQRT_2
}

/// Projected functional modes (B₁ of outer values, B₂ of inner values) at
/// the state t·v_m + k.
fn modes_at(
    lambda: f64,
    t: f64,
    k: &ComplementCoords,
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let coeffs = k.embed(cfg, t);
    let n_modes = k.n_modes();
    let g = eval_g(lambda, &coeffs, grid)?;
    Ok((
        project_modes(&g.outer, grid, cfg.m, n_modes)?,
        project_modes(&g.inner, grid, cfg.m, n_modes)?,
    ))
}

/// Residual of the complement equation (Id − Q)Ĝ = 0 in the flat layout:
/// entry 0 is the range component on mode 1, the rest are the full pairs on
/// modes n ≥ 2.
fn complement_residual(
    lambda: f64,
    t: f64,
    k: &ComplementCoords,
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
) -> Result<(DVector<f64>, (f64, f64))> {
    let (b1, b2) = modes_at(lambda, t, k, cfg, grid)?;
    let n_modes = k.n_modes();
    let mut r = DVector::zeros(2 * n_modes - 1);
    r[0] = project_range((b1[0], b2[0]), cfg.m);
    for n in 2..=n_modes {
        r[2 * n - 3] = b1[n - 1];
        r[2 * n - 2] = b2[n - 1];
    }
    Ok((r, (b1[0], b2[0])))
}

/// Solve the complement equation for k = φ(λ, t·v_m) with explicit Newton
/// controls and an optional warm start.
pub fn solve_complement_with(
    lambda: f64,
    t: f64,
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
    opts: &NewtonOptions,
    warm: Option<&ComplementCoords>,
) -> Result<ComplementSolution> {
    let dim = 2 * n_modes - 1;
    let mut k = match warm {
        Some(w) if w.values.len() == dim => w.clone(),
        _ => ComplementCoords::zeros(n_modes),
    };
    let mut last_residual = f64::INFINITY;
    for iter in 0..=opts.max_iters {
        let (r, mode1) = complement_residual(lambda, t, &k, cfg, grid)?;
        last_residual = r.amax();
        if last_residual < opts.tol {
            return Ok(ComplementSolution {
                coords: k,
                newton_iters: iter,
                residual: last_residual,
                mode1,
            });
        }
        if iter == opts.max_iters {
            break;
        }
        let mut jac = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut shifted = k.clone();
            shifted.values[col] += opts.fd_step;
            let (r_shift, _) = complement_residual(lambda, t, &shifted, cfg, grid)?;
            jac.set_column(col, &((r_shift - &r) / opts.fd_step));
        }
        let lu = jac.lu();
        let delta = lu.solve(&r).ok_or(Error::NoConvergence {
            iters: iter,
            residual: last_residual,
        })?;
        for i in 0..dim {
            k.values[i] -= delta[i];
        }
    }
    Err(Error::NoConvergence {
        iters: opts.max_iters,
        residual: last_residual,
    })
}

/// Solve the complement equation with default Newton controls.
pub fn solve_complement(
    lambda: f64,
    t: f64,
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
) -> Result<ComplementSolution> {
    solve_complement_with(lambda, t, cfg, grid, n_modes, &NewtonOptions::default(), None)
}

/// Evaluate the reduced function with explicit Newton controls.
pub fn eval_f2_with(
    lambda: f64,
    t: f64,
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
    opts: &NewtonOptions,
    warm: Option<&ComplementCoords>,
) -> Result<ReducedSample> {
    if t == 0.0 {
        return Ok(ReducedSample {
            lambda,
            t,
            f2: 0.0,
            k_norm: 0.0,
            newton_iters: 0,
            residual: 0.0,
            complement: ComplementCoords::zeros(n_modes),
        });
    }
    let sol = solve_complement_with(lambda, t, cfg, grid, n_modes, opts, warm)?;
    Ok(ReducedSample {
        lambda,
        t,
        f2: project_q(sol.mode1, cfg.m) / t,
        k_norm: sol.coords.norm(),
        newton_iters: sol.newton_iters,
        residual: sol.residual,
        complement: sol.coords,
    })
}

/// Evaluate the reduced function F₂(λ, t) with default controls.
pub fn eval_f2(
    lambda: f64,
    t: f64,
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
) -> Result<ReducedSample> {
    eval_f2_with(lambda, t, cfg, grid, n_modes, &NewtonOptions::default(), None)
}

/// Five stencil estimates (d_ll, d_tl, d_tt, d_λ, d_t) at one step pair.
fn hessian_stencil(
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
    hl: f64,
    ht: f64,
) -> Result<[f64; 5]> {
    let lam0 = cfg.lambda_m();
    let opts = NewtonOptions::default();
    // vals[i][j]: i indexes lambda offsets (-1, 0, +1), j the t signs (+, -)
    let mut vals = [[0.0f64; 2]; 3];
    for (j, t_sign) in [1.0f64, -1.0].into_iter().enumerate() {
        let mut warm: Option<ComplementCoords> = None;
        for (i, lam_off) in [-1.0f64, 0.0, 1.0].into_iter().enumerate() {
            let sample = eval_f2_with(
                lam0 + lam_off * hl,
                t_sign * ht,
                cfg,
                grid,
                n_modes,
                &opts,
                warm.as_ref(),
            )?;
            vals[i][j] = sample.f2;
            warm = Some(sample.complement);
        }
    }
    let s = |i: usize| 0.5 * (vals[i][0] + vals[i][1]);
    // f2(lambda_m, 0) = 0 exactly, so the centered second difference in t
    // needs no middle term.
    let d_tt = (vals[1][0] + vals[1][1]) / (ht * ht);
    let d_ll = (s(2) - 2.0 * s(1) + s(0)) / (hl * hl);
    let d_tl = (vals[2][0] - vals[2][1] - vals[0][0] + vals[0][1]) / (4.0 * hl * ht);
    let d_l = (s(2) - s(0)) / (2.0 * hl);
    let d_t = (vals[1][0] - vals[1][1]) / (2.0 * ht);
    Ok([d_ll, d_tl, d_tt, d_l, d_t])
}

/// Numeric Hessian of F₂ at (λ_m, 0) with Richardson extrapolation over
/// the step pair (h, h/2), compared against the closed forms.
///
/// The steps trade O(h²) stencil truncation against the Newton tolerance
/// noise amplified by 1/h²; 1e−3 with one halving keeps both at or below
/// the 1e−3 relative target.
pub fn numeric_hessian(
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
    h_lambda: f64,
    h_t: f64,
) -> Result<HessianReport> {
    let coarse = hessian_stencil(cfg, grid, n_modes, h_lambda, h_t)?;
    let fine = hessian_stencil(cfg, grid, n_modes, h_lambda / 2.0, h_t / 2.0)?;
    let richardson = |i: usize| (4.0 * fine[i] - coarse[i]) / 3.0;
    let closed = hessian_closed(cfg.m, cfg.b);
    let d_ll = richardson(0);
    let d_tl = richardson(1);
    let d_tt = richardson(2);
    let rel = |num: f64, cl: f64| (num - cl).abs() / cl.abs().max(1.0);
    Ok(HessianReport {
        d_lambda: richardson(3),
        d_t: richardson(4),
        d_ll,
        d_tl,
        d_tt,
        steps: (h_lambda, h_t),
        closed,
        rel_err: (
            rel(d_ll, closed.d_ll),
            rel(d_tl, closed.d_tl),
            rel(d_tt, closed.d_tt),
        ),
    })
}

/// Second-order coefficient of the complement correction on the harmonic
/// 2m, extracted from the even part (k(t) + k(−t))/t² with Richardson
/// extrapolation over (t, t/2). Converges to ṽ_m of
/// [`crate::closed_forms::vtilde`]; the odd O(t³) part cancels exactly and
/// the remaining O(t²) contamination is removed by the extrapolation.
///
/// The Newton tolerance is tightened to 1e−13: the signal is O(t²) ≈ 1e−5
/// at the default base step, so the default 1e−11 would leave only six
/// reliable digits before the division by t².
pub fn complement_curvature(
    cfg: &AnnulusConfig,
    grid: &QuadratureGrid,
    n_modes: usize,
    t_base: f64,
) -> Result<(f64, f64)> {
    let lam = cfg.lambda_m();
    let opts = NewtonOptions {
        tol: 1e-13,
        max_iters: 40,
        ..Default::default()
    };
    let even = |tt: f64| -> Result<(f64, f64)> {
        let plus = solve_complement_with(lam, tt, cfg, grid, n_modes, &opts, None)?;
        let minus = solve_complement_with(lam, -tt, cfg, grid, n_modes, &opts, None)?;
        let (p, m) = (plus.coords.mode_pair(2), minus.coords.mode_pair(2));
        Ok(((p.0 + m.0) / (tt * tt), (p.1 + m.1) / (tt * tt)))
    };
    let coarse = even(t_base)?;
    let fine = even(t_base / 2.0)?;
    Ok((
        (4.0 * fine.0 - coarse.0) / 3.0,
        (4.0 * fine.1 - coarse.1) / 3.0,
    ))
}
