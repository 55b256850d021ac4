//! Pseudo-arclength continuation of V-state branches and empirical
//! verification of the local bifurcation picture.
//!
//! The unknown vector stacks the 2N real Laurent amplitudes with λ,
//! x = [a_{1,1}, a_{2,1}, ..., a_{1,N}, a_{2,N}, λ]; the equations are the
//! 2N sine-mode coefficients of (G₁, G₂) on the harmonics nm plus one
//! linear normalization row. Real coefficients already pin the rotational
//! phase, so the square bordered system is well conditioned near onset and
//! a plain Newton corrector with finite-difference Jacobian converges in a
//! few iterations.
//!
//! Three regimes are covered:
//!
//! * Δ_m > 0: two simple nonlinear eigenvalues λ_m^±. Branches seed with
//!   the kernel of M_m(λ_m^±) under an amplitude normalization and march
//!   outward ([`branch_from_eigenvalue`]).
//! * m = 2 at the double eigenvalue λ₂: the crossing is transcritical with
//!   analytic tangent slopes ±(1−b²)/2. The linearization is singular in
//!   every direction there, so a generic tangent solve cannot start the
//!   trace; instead both half-rays of one curve are seeded from the slope
//!   itself and concatenated through the crossing
//!   ([`branch_transcritical`]).
//! * m ≥ 3 at b = b_m: no bifurcation. [`no_bifurcation_scan`] certifies
//!   strict convexity of the reduced function on a disc and confirms that
//!   Newton attempts at fixed λ collapse back to the annulus.

use nalgebra::{DMatrix, DVector};

use crate::closed_forms::{hessian_closed, transcritical_slope};
use crate::contour_functional::{eval_g, project_modes, QuadratureGrid, VStateCoeffs};
use crate::error::{Error, Result};
use crate::lyapunov_schmidt::NewtonOptions;
use crate::spectral_core::{
    classify_point, degenerate_radius, epsilon, multiplier_matrix, AnnulusConfig, DegeneracyClass,
};

/// Which of a pair is meant: the root λ_m^± selector in
/// [`branch_from_eigenvalue`] (by angular velocity, Ω_m^+ ↔ the smaller λ)
/// and the tangent-slope sign in [`branch_transcritical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Plus,
    Minus,
}

impl RootSign {
    pub fn factor(self) -> f64 {
        match self {
            RootSign::Plus => 1.0,
            RootSign::Minus => -1.0,
        }
    }
}

/// Why a trace stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    StepBudget,
    SeparationViolation,
    CorrectorFailure,
}

/// One accepted point on a branch.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchPoint {
    pub coeffs: VStateCoeffs,
    pub lambda: f64,
    /// Angular velocity Ω = (1−λ)/2.
    pub omega: f64,
    /// Cumulative Euclidean arclength in (coefficients, λ) space.
    pub arclength: f64,
    /// Max-norm residual of the projected V-state equations.
    pub residual: f64,
    /// Leading amplitudes (a_{1,1}, a_{2,1}), the diagram coordinates.
    pub a11: f64,
    pub a21: f64,
}

/// Where a branch comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchOrigin {
    pub m: usize,
    pub b: f64,
    /// λ at onset: the eigenvalue λ_m^± for a simple-eigenvalue branch, the
    /// double eigenvalue λ₂ for a transcritical one.
    pub lambda_onset: f64,
    pub sign: RootSign,
}

/// An ordered solution curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub origin: BranchOrigin,
    pub points: Vec<BranchPoint>,
    pub termination: TerminationReason,
}

impl Branch {
    /// Signed amplitude of a point along the degenerate kernel direction
    /// v = (εb, 1): the parameter t of the reduced picture. Meaningful for
    /// branches at the double eigenvalue.
    pub fn signed_kernel_amplitude(&self, p: &BranchPoint) -> f64 {
        let e = epsilon(self.origin.m);
        let v = (e * self.origin.b, 1.0);
        (p.a11 * v.0 + p.a21 * v.1) / (v.0 * v.0 + v.1 * v.1)
    }

    /// Onset slope dλ/dt at t = 0: least-squares fit of
    /// λ − λ_onset = s·t + c·t² over the points with 0 < |t| ≤ window. The
    /// quadratic term absorbs the branch curvature, which would otherwise
    /// bias the slope when the window covers the two sides unevenly. For a
    /// transcritical branch s converges to ±(1−b²)/2 as the window shrinks.
    pub fn fitted_slope(&self, window: f64) -> Option<f64> {
        let (mut s2, mut s3, mut s4, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for p in &self.points {
            let t = self.signed_kernel_amplitude(p);
            if t != 0.0 && t.abs() <= window {
                let dl = p.lambda - self.origin.lambda_onset;
                s2 += t * t;
                s3 += t * t * t;
                s4 += t * t * t * t;
                b1 += dl * t;
                b2 += dl * t * t;
            }
        }
        let det = s2 * s4 - s3 * s3;
        (det > 1e-300).then(|| (b1 * s4 - b2 * s3) / det)
    }

    /// Onset estimate from the first two points by removing the quadratic
    /// λ(s) − λ_onset ∝ s² drift in the mode-1 amplitude s: the
    /// extrapolation (λ₁s₂² − λ₂s₁²)/(s₂² − s₁²).
    pub fn onset_extrapolation(&self) -> Option<f64> {
        if self.points.len() < 2 {
            return None;
        }
        let amp = |p: &BranchPoint| (p.a11 * p.a11 + p.a21 * p.a21).sqrt();
        let (p1, p2) = (&self.points[0], &self.points[1]);
        let (s1, s2) = (amp(p1), amp(p2));
        let denom = s2 * s2 - s1 * s1;
        (denom.abs() > 1e-300)
            .then(|| (p1.lambda * s2 * s2 - p2.lambda * s1 * s1) / denom)
    }
}

/// Result of [`no_bifurcation_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub m: usize,
    pub b: f64,
    pub lambda_m: f64,
    pub radius: f64,
    pub grid_n: usize,
    /// Grid points evaluated (t ≠ 0, inside the disc).
    pub samples: usize,
    /// Grid points where the complement solve left its contraction
    /// neighborhood; reported and excluded.
    pub excluded: usize,
    /// Fitted convexity constant: min over samples of
    /// f2·sign(d_ll)/(λ̂² + t²).
    pub min_ratio: f64,
    /// Rayleigh reference: half the smaller closed-form Hessian eigenvalue.
    pub half_min_eigenvalue: f64,
    /// |min_ratio − half_min_eigenvalue| / half_min_eigenvalue.
    pub rayleigh_rel_dev: f64,
    /// True when every sampled ratio is strictly positive.
    pub witness_holds: bool,
    /// Fixed-λ Newton probes seeded at nontrivial amplitude.
    pub collapse_probes: usize,
    /// Largest amplitude among probes that converged inside the disc;
    /// collapse to the annulus means this stays below 1e−6.
    pub max_collapse_amplitude: f64,
    /// Probes that converged to a nontrivial solution inside the disc.
    /// Nonzero would falsify the no-bifurcation claim.
    pub nontrivial_found: usize,
}

/// Hard cap on coefficient magnitude inside the corrector; beyond desk
/// scale the iteration has left the local branch and cannot recover.
const DIVERGENCE_GUARD: f64 = 0.5;

/// Arclength step controls.
const MAX_STEP: f64 = 5e-3;
const MIN_STEP: f64 = 1e-7;
const STEP_GROWTH: f64 = 1.4;

/// Default accepted-point budget for a trace.
pub const DEFAULT_STEP_BUDGET: usize = 200;

struct FullSystem<'a> {
    cfg: AnnulusConfig,
    grid: &'a QuadratureGrid,
    n_modes: usize,
}

impl FullSystem<'_> {
    fn dim(&self) -> usize {
        2 * self.n_modes + 1
    }

    fn coeffs_of(&self, x: &DVector<f64>) -> VStateCoeffs {
        let mut coeffs = VStateCoeffs::annulus(self.cfg.m, self.cfg.b, self.n_modes);
        for n in 0..self.n_modes {
            coeffs.outer[n] = x[2 * n];
            coeffs.inner[n] = x[2 * n + 1];
        }
        coeffs
    }

    /// The 2N projected equations at the state x.
    fn residual(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let coeffs = self.coeffs_of(x);
        let lambda = x[2 * self.n_modes];
        let g = eval_g(lambda, &coeffs, self.grid)?;
        let b1 = project_modes(&g.outer, self.grid, self.cfg.m, self.n_modes)?;
        let b2 = project_modes(&g.inner, self.grid, self.cfg.m, self.n_modes)?;
        let mut r = DVector::zeros(2 * self.n_modes);
        for n in 0..self.n_modes {
            r[2 * n] = b1[n];
            r[2 * n + 1] = b2[n];
        }
        Ok(r)
    }

    /// Newton on the bordered system {residual = 0, ⟨row, x⟩ = rhs}.
    /// Returns the solution with the equation residual and iteration count.
    fn corrector(
        &self,
        mut x: DVector<f64>,
        row: &DVector<f64>,
        rhs: f64,
        opts: &NewtonOptions,
    ) -> Result<(DVector<f64>, f64, usize)> {
        let dim = self.dim();
        let mut eq_residual = f64::INFINITY;
        for iter in 0..=opts.max_iters {
            if x.rows(0, 2 * self.n_modes).amax() > DIVERGENCE_GUARD {
                return Err(Error::NoConvergence {
                    iters: iter,
                    residual: eq_residual,
                });
            }
            let r = self.residual(&x)?;
            let constraint = row.dot(&x) - rhs;
            eq_residual = r.amax();
            if eq_residual.max(constraint.abs()) < opts.tol {
                return Ok((x, eq_residual, iter));
            }
            if iter == opts.max_iters {
                break;
            }
            let mut jac = DMatrix::zeros(dim, dim);
            for col in 0..dim {
                let mut shifted = x.clone();
                shifted[col] += opts.fd_step;
                let dr = (self.residual(&shifted)? - &r) / opts.fd_step;
                for i in 0..2 * self.n_modes {
                    jac[(i, col)] = dr[i];
                }
                jac[(dim - 1, col)] = row[col];
            }
            let mut aug = DVector::zeros(dim);
            for i in 0..2 * self.n_modes {
                aug[i] = r[i];
            }
            aug[dim - 1] = constraint;
            let delta = jac.lu().solve(&aug).ok_or(Error::NoConvergence {
                iters: iter,
                residual: eq_residual,
            })?;
            x -= delta;
        }
        Err(Error::NoConvergence {
            iters: opts.max_iters,
            residual: eq_residual,
        })
    }
}

/// March outward from `first`, with the initial tangent taken as the secant
/// from `prev`. Returns accepted states with their residuals and the reason
/// the trace stopped.
fn trace_half(
    sys: &FullSystem,
    prev: &DVector<f64>,
    first: (DVector<f64>, f64),
    budget: usize,
    opts: &NewtonOptions,
) -> Result<(Vec<(DVector<f64>, f64)>, TerminationReason)> {
    let mut points = vec![first];
    if budget <= 1 {
        return Ok((points, TerminationReason::StepBudget));
    }
    let mut tangent = (&points[0].0 - prev).normalize();
    let mut h = MAX_STEP;
    while points.len() < budget {
        let base = &points.last().unwrap().0;
        let pred = base + h * &tangent;
        let rhs = tangent.dot(&pred);
        match sys.corrector(pred, &tangent, rhs, opts) {
            Ok((x, resid, _)) => {
                let step = (&x - base).norm();
                if step > 2.5 * h {
                    // Landed far from the predictor: curvature too strong
                    // for this step; retry shorter.
                    h *= 0.5;
                    if h < MIN_STEP {
                        return Ok((points, TerminationReason::CorrectorFailure));
                    }
                    continue;
                }
                tangent = (&x - base).normalize();
                points.push((x, resid));
                h = (h * STEP_GROWTH).min(MAX_STEP);
            }
            Err(Error::NoConvergence { .. }) => {
                h *= 0.5;
                if h < MIN_STEP {
                    return Ok((points, TerminationReason::CorrectorFailure));
                }
            }
            Err(Error::SeparationViolation { .. }) => {
                h *= 0.5;
                if h < MIN_STEP {
                    return Ok((points, TerminationReason::SeparationViolation));
                }
            }
            Err(other) => return Err(other),
        }
    }
    Ok((points, TerminationReason::StepBudget))
}

/// Assemble branch points from raw states, assigning cumulative arclength.
fn assemble_points(sys: &FullSystem, states: &[(DVector<f64>, f64)]) -> Vec<BranchPoint> {
    let mut out = Vec::with_capacity(states.len());
    let mut arclength = 0.0;
    for (k, (x, resid)) in states.iter().enumerate() {
        if k > 0 {
            arclength += (x - &states[k - 1].0).norm();
        }
        let coeffs = sys.coeffs_of(x);
        let lambda = x[2 * sys.n_modes];
        out.push(BranchPoint {
            a11: coeffs.outer[0],
            a21: coeffs.inner[0],
            coeffs,
            lambda,
            omega: (1.0 - lambda) / 2.0,
            arclength,
            residual: *resid,
        });
    }
    out
}

/// Truncation order and grid used by the branch drivers.
const BRANCH_N_MODES: usize = 6;
const BRANCH_GRID: usize = 256;

fn branch_system(m: usize, b: f64, grid: &QuadratureGrid) -> Result<FullSystem<'_>> {
    Ok(FullSystem {
        cfg: AnnulusConfig::new(m, b)?,
        grid,
        n_modes: BRANCH_N_MODES,
    })
}

/// Trace the V-state branch bifurcating from the simple nonlinear
/// eigenvalue λ_m^± at a non-degenerate parameter point (Δ_m > 0).
///
/// `which` selects by angular velocity: `Plus` is the larger Ω_m^+, hence
/// the smaller λ. The seed predictor is t0 times the kernel of M_m(λ_m^±)
/// under the amplitude normalization ⟨mode-1 pair, kernel⟩ = t0; the
/// first accepted point sits at distance O(t0) from the annulus with λ
/// within O(t0²) of the onset.
pub fn branch_from_eigenvalue(
    m: usize,
    b: f64,
    which: RootSign,
    t0: f64,
    steps: usize,
) -> Result<Branch> {
    if classify_point(m, b)? != DegeneracyClass::NonDegenerate {
        return Err(Error::InvalidInput(format!(
            "({m}, {b}) does not carry two simple eigenvalues on mode {m}"
        )));
    }
    if t0 < 0.0 {
        return Err(Error::InvalidInput(format!("t0 = {t0}, need t0 >= 0")));
    }
    let grid = QuadratureGrid::standard(BRANCH_GRID)?;
    let sys = branch_system(m, b, &grid)?;
    let (lo, hi) = multiplier_matrix(m, 0.0, b).roots.expect("checked Delta_m > 0");
    let lambda_onset = match which {
        RootSign::Plus => lo,
        RootSign::Minus => hi,
    };
    if t0 == 0.0 {
        // Zero-amplitude seed: every corrector target is the annulus
        // itself, so emit the trivial curve, marched in λ from the onset.
        let dim = sys.dim();
        let mut states = Vec::with_capacity(steps.max(1));
        for k in 0..steps.max(1) {
            let mut x = DVector::zeros(dim);
            x[dim - 1] = lambda_onset + k as f64 * MAX_STEP;
            let resid = sys.residual(&x)?.amax();
            states.push((x, resid));
        }
        return Ok(Branch {
            origin: BranchOrigin {
                m,
                b,
                lambda_onset,
                sign: which,
            },
            points: assemble_points(&sys, &states),
            termination: TerminationReason::StepBudget,
        });
    }
    let mat = multiplier_matrix(m, lambda_onset, b);
    let mut u = (-mat.entries[0][1], mat.entries[0][0]);
    if (u.0 * u.0 + u.1 * u.1).sqrt() < 1e-12 {
        u = (mat.entries[1][1], -mat.entries[1][0]);
    }
    let norm = (u.0 * u.0 + u.1 * u.1).sqrt();
    u = (u.0 / norm, u.1 / norm);

    let dim = sys.dim();
    let mut trivial = DVector::zeros(dim);
    trivial[dim - 1] = lambda_onset;
    let mut seed = trivial.clone();
    seed[0] = t0 * u.0;
    seed[1] = t0 * u.1;
    let mut row = DVector::zeros(dim);
    row[0] = u.0;
    row[1] = u.1;

    let opts = NewtonOptions::default();
    let first = sys
        .corrector(seed, &row, t0, &opts)
        .map_err(|e| Error::SeedFailure(format!("eigenvalue-branch seed at λ = {lambda_onset}: {e}")))?;
    let (states, termination) = trace_half(&sys, &trivial, (first.0, first.1), steps, &opts)?;
    Ok(Branch {
        origin: BranchOrigin {
            m,
            b,
            lambda_onset,
            sign: which,
        },
        points: assemble_points(&sys, &states),
        termination,
    })
}

/// Trace one of the two transcritical curves through (annulus, λ₂) for
/// m = 2: the curve with initial tangent dλ/dt = ±(1−b²)/2.
///
/// The corrector cannot be started at the crossing itself (the bordered
/// Jacobian is singular there: the trivial curve and the nontrivial one
/// intersect), so both sides are seeded from the analytic slope at kernel
/// amplitude ±t0. The emitted branch starts at the t = +t0 seed, passes
/// through the exact crossing point, and spends the remaining budget
/// marching outward on the t < 0 side, so λ − λ₂ changes sign right at the
/// start and the curve is ordered by arclength throughout.
pub fn branch_transcritical(b: f64, sign: RootSign, steps: usize) -> Result<Branch> {
    if classify_point(2, b)? != DegeneracyClass::Degenerate1D {
        return Err(Error::InvalidInput(format!(
            "b = {b} carries a higher-dimensional kernel or is out of range"
        )));
    }
    let grid = QuadratureGrid::standard(BRANCH_GRID)?;
    let sys = branch_system(2, b, &grid)?;
    let lambda2 = sys.cfg.lambda_m();
    let slope = sign.factor() * transcritical_slope(b);
    let v = (b, 1.0);
    let v_norm = (v.0 * v.0 + v.1 * v.1).sqrt();
    let t0 = 1e-3;

    let dim = sys.dim();
    let mut row = DVector::zeros(dim);
    row[0] = v.0 / v_norm;
    row[1] = v.1 / v_norm;
    let opts = NewtonOptions::default();
    let mut trivial = DVector::zeros(dim);
    trivial[dim - 1] = lambda2;

    let seed_at = |t: f64| -> Result<(DVector<f64>, f64, usize)> {
        let mut seed = trivial.clone();
        seed[0] = t * v.0;
        seed[1] = t * v.1;
        seed[dim - 1] = lambda2 + slope * t;
        sys.corrector(seed, &row, t * v_norm, &opts)
            .map_err(|e| Error::SeedFailure(format!("transcritical seed at t = {t}: {e}")))
    };

    let near = seed_at(t0)?;
    let far = seed_at(-t0)?;
    let far_budget = steps.saturating_sub(2).max(1);
    let (far_states, termination) =
        trace_half(&sys, &trivial, (far.0, far.1), far_budget, &opts)?;

    let mut states = vec![(near.0, near.1)];
    let crossing = trivial;
    let crossing_resid = sys.residual(&crossing)?.amax();
    states.push((crossing, crossing_resid));
    states.extend(far_states);

    Ok(Branch {
        origin: BranchOrigin {
            m: 2,
            b,
            lambda_onset: lambda2,
            sign,
        },
        points: assemble_points(&sys, &states),
        termination,
    })
}

/// Certify the no-bifurcation claim at (m, b_m), m ≥ 3, on the disc
/// λ̂² + t² ≤ radius².
///
/// Two independent witnesses: (1) strict convexity, meaning every sampled
/// reduced value satisfies f2·sign(d_ll) ≥ c(λ̂² + t²) with fitted c > 0
/// close to the Rayleigh bound (half the smaller Hessian eigenvalue), and
/// (2) collapse: full Newton at fixed λ from nontrivial seeds converges to the
/// annulus, never to a nontrivial V-state inside the disc.
pub fn no_bifurcation_scan(m: usize, radius: f64, grid_n: usize) -> Result<ScanReport> {
    if m < 3 {
        return Err(Error::InvalidInput(format!(
            "no-bifurcation scan is defined for m >= 3, got m = {m}"
        )));
    }
    if radius <= 0.0 || radius > 0.1 {
        return Err(Error::InvalidInput(format!(
            "radius = {radius} outside the local regime (0, 0.1]"
        )));
    }
    if grid_n < 3 {
        return Err(Error::InvalidInput("grid_n >= 3 required".into()));
    }
    let b = degenerate_radius(m, 1e-13)?;
    let cfg = AnnulusConfig::new(m, b)?;
    let grid = QuadratureGrid::standard(BRANCH_GRID)?;
    let lambda_m = cfg.lambda_m();
    let hess = hessian_closed(m, b);
    let half_min_eigenvalue = 0.5 * hess.d_ll.min(hess.d_tt);
    let d_ll_sign = hess.d_ll.signum();

    let mut samples = 0usize;
    let mut excluded = 0usize;
    let mut min_ratio = f64::INFINITY;
    let coord = |i: usize| -radius + 2.0 * radius * i as f64 / (grid_n - 1) as f64;
    for i in 0..grid_n {
        let lhat = coord(i);
        for j in 0..grid_n {
            let t = coord(j);
            let rho2 = lhat * lhat + t * t;
            if t == 0.0 || rho2 == 0.0 || rho2 > radius * radius {
                continue;
            }
            match crate::lyapunov_schmidt::eval_f2(
                lambda_m + lhat,
                t,
                &cfg,
                &grid,
                BRANCH_N_MODES,
            ) {
                Ok(sample) => {
                    samples += 1;
                    min_ratio = min_ratio.min(sample.f2 * d_ll_sign / rho2);
                }
                Err(Error::NoConvergence { .. }) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
    }

    // Collapse probes: fix lambda by a constraint row selecting the last
    // unknown, seed a nontrivial kernel-direction amplitude, and let the
    // corrector decide where the solution actually is.
    let sys = branch_system(m, b, &grid)?;
    let dim = sys.dim();
    let e = cfg.epsilon();
    let v = (e * b, 1.0);
    let probe_opts = NewtonOptions {
        max_iters: 40,
        ..Default::default()
    };
    let mut collapse_probes = 0usize;
    let mut max_collapse_amplitude: f64 = 0.0;
    let mut nontrivial_found = 0usize;
    for lhat in [-radius, -radius / 2.0, radius / 2.0, radius] {
        let lambda = lambda_m + lhat;
        let mut seed = DVector::zeros(dim);
        seed[0] = (radius / 2.0) * v.0;
        seed[1] = (radius / 2.0) * v.1;
        seed[dim - 1] = lambda;
        let mut row = DVector::zeros(dim);
        row[dim - 1] = 1.0;
        collapse_probes += 1;
        match sys.corrector(seed, &row, lambda, &probe_opts) {
            Ok((x, _, _)) => {
                let amplitude = (x[0] * x[0] + x[1] * x[1]).sqrt();
                let inside = lhat * lhat + amplitude * amplitude <= radius * radius;
                if inside {
                    max_collapse_amplitude = max_collapse_amplitude.max(amplitude);
                    if amplitude >= 1e-6 {
                        nontrivial_found += 1;
                    }
                }
            }
            Err(Error::NoConvergence { .. }) => {
                // No solution reachable from the seed: consistent with the
                // no-bifurcation claim, nothing to record.
            }
            Err(e) => return Err(e),
        }
    }

    let rayleigh_rel_dev = (min_ratio - half_min_eigenvalue).abs() / half_min_eigenvalue;
    Ok(ScanReport {
        m,
        b,
        lambda_m,
        radius,
        grid_n,
        samples,
        excluded,
        min_ratio,
        half_min_eigenvalue,
        rayleigh_rel_dev,
        witness_holds: samples > 0 && min_ratio > 0.0,
        collapse_probes,
        max_collapse_amplitude,
        nontrivial_found,
    })
}

/// Plot-ready diagram rows (Ω, a_{1,1}, a_{2,1}) in branch order.
pub fn emit_diagram(branch: &Branch) -> Result<Vec<(f64, f64, f64)>> {
    if branch.points.is_empty() {
        return Err(Error::InvalidInput("empty branch".into()));
    }
    Ok(branch
        .points
        .iter()
        .map(|p| (p.omega, p.a11, p.a21))
        .collect())
}
