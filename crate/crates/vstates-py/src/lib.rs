//! Python bindings for the V-state analysis library.
//!
//! Build the importable module with
//!
//! ```text
//! cargo build -p vstates-py --release --features extension-module
//! ```
//!
//! and copy `target/release/libvstates_py.so` to `vstates_py.so` somewhere
//! on `sys.path` (see `python/smoke_test.py`). The functions return plain
//! Python scalars, tuples, lists, and dicts; errors surface as
//! `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vstates::closed_forms::{self, ResidueKind};
use vstates::continuation::{self, RootSign};
use vstates::contour_functional::{eval_g, QuadratureGrid, VStateCoeffs};
use vstates::lyapunov_schmidt;
use vstates::spectral_core::{self, AnnulusConfig, DegeneracyClass};

fn err(e: vstates::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_sign(sign: &str) -> PyResult<RootSign> {
    match sign {
        "plus" | "+" => Ok(RootSign::Plus),
        "minus" | "-" => Ok(RootSign::Minus),
        other => Err(PyValueError::new_err(format!(
            "sign must be 'plus' or 'minus', got '{other}'"
        ))),
    }
}

/// The trivial annulus solution b < |z| < 1 in symmetry class m, with the
/// spectral data of the linearization at the double eigenvalue.
#[pyclass(frozen)]
struct Annulus {
    inner: AnnulusConfig,
}

#[pymethods]
impl Annulus {
    #[new]
    fn new(m: usize, b: f64) -> PyResult<Self> {
        Ok(Annulus {
            inner: AnnulusConfig::new(m, b).map_err(err)?,
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }

    /// Merged eigenvalue λ_m = (1+b²)/2.
    fn lambda_m(&self) -> f64 {
        self.inner.lambda_m()
    }

    /// Sign ε: +1 for m = 2, −1 for m ≥ 3.
    fn epsilon(&self) -> f64 {
        self.inner.epsilon()
    }

    /// Kernel direction (εb, 1) of M_m(λ_m) on the mode-1 pair.
    fn kernel_vector(&self) -> (f64, f64) {
        let v = self.inner.kernel_vector();
        v.components
    }

    /// One of "non_degenerate", "degenerate_1d", "degenerate_2d",
    /// "no_eigenvalue".
    fn classify(&self) -> PyResult<String> {
        let class = spectral_core::classify_point(self.inner.m, self.inner.b).map_err(err)?;
        Ok(match class {
            DegeneracyClass::NonDegenerate => "non_degenerate",
            DegeneracyClass::Degenerate1D => "degenerate_1d",
            DegeneracyClass::Degenerate2D => "degenerate_2d",
            DegeneracyClass::NoEigenvalue => "no_eigenvalue",
        }
        .to_string())
    }

    fn __repr__(&self) -> String {
        format!("Annulus(m={}, b={})", self.inner.m, self.inner.b)
    }
}

/// Discriminant Δ_n(b) deciding how many eigenvalues mode n carries.
#[pyfunction]
fn discriminant(n: usize, b: f64) -> f64 {
    spectral_core::discriminant(n, b)
}

/// The pair (λ_n^−, λ_n^+), or None when Δ_n < 0.
#[pyfunction]
fn eigenvalue_pair(n: usize, b: f64) -> Option<(f64, f64)> {
    spectral_core::multiplier_matrix(n, 0.0, b).roots
}

/// Unique b with Δ_m(b) = 0, for m ≥ 3.
#[pyfunction]
#[pyo3(signature = (m, tol=1e-13))]
fn degenerate_radius(m: usize, tol: f64) -> PyResult<f64> {
    spectral_core::degenerate_radius(m, tol).map_err(err)
}

/// Quadratic kernel-ray coefficient α̂ = 2m(b² − εb^m)².
#[pyfunction]
fn alpha_hat(m: usize, b: f64) -> f64 {
    closed_forms::alpha_hat(m, b)
}

/// Complement-feedback coefficient β̂ (zero for m = 2).
#[pyfunction]
fn beta_hat(m: usize, b: f64) -> f64 {
    closed_forms::beta_hat(m, b)
}

/// Cubic coefficient γ̂ entering ∂_tt F₂ for m ≥ 3.
#[pyfunction]
fn gamma_hat(m: usize, b: f64) -> f64 {
    closed_forms::gamma_hat(m, b)
}

/// Closed-form reduced Hessian (d_ll, d_tl, d_tt) at the degenerate point.
#[pyfunction]
fn hessian_closed(m: usize, b: f64) -> (f64, f64, f64) {
    let h = closed_forms::hessian_closed(m, b);
    (h.d_ll, h.d_tl, h.d_tt)
}

/// Second-order complement response ṽ_m on mode 2m−1 (zero for m = 2).
#[pyfunction]
fn vtilde(m: usize, b: f64) -> (f64, f64) {
    closed_forms::vtilde(m, b).components
}

/// Tangent slope magnitude (1−b²)/2 of the two transcritical curves.
#[pyfunction]
fn transcritical_slope(b: f64) -> f64 {
    closed_forms::transcritical_slope(b)
}

/// Residue identity oracle: (closed value, trapezoid quadrature) of
/// ⨍ τ̄^m/(1−bτ)^p dτ for p in {1, 2, 3}.
#[pyfunction]
#[pyo3(signature = (p, m, b, grid=256))]
fn residue_oracle(p: u32, m: usize, b: f64, grid: usize) -> PyResult<(f64, f64)> {
    let kind = match p {
        1 => ResidueKind::Pole1,
        2 => ResidueKind::Pole2,
        3 => ResidueKind::Pole3,
        other => {
            return Err(PyValueError::new_err(format!(
                "pole order must be 1, 2, or 3, got {other}"
            )))
        }
    };
    let g = QuadratureGrid::standard(grid).map_err(err)?;
    Ok(closed_forms::residue_oracle(kind, m, b, &g))
}

/// Max-norm of the rotation functional (G₁, G₂) at the unperturbed
/// annulus; zero up to quadrature accuracy for every λ.
#[pyfunction]
#[pyo3(signature = (m, b, lam, grid=256))]
fn annulus_residual(m: usize, b: f64, lam: f64, grid: usize) -> PyResult<f64> {
    let g = QuadratureGrid::standard(grid).map_err(err)?;
    let coeffs = VStateCoeffs::annulus(m, b, 4);
    let values = eval_g(lam, &coeffs, &g).map_err(err)?;
    let max = values
        .outer
        .iter()
        .chain(values.inner.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    Ok(max)
}

/// One sample of the reduced bifurcation function F₂(λ, t).
#[pyfunction]
#[pyo3(signature = (m, b, lam, t, grid=256, n_modes=6))]
fn eval_f2(m: usize, b: f64, lam: f64, t: f64, grid: usize, n_modes: usize) -> PyResult<f64> {
    let cfg = AnnulusConfig::new(m, b).map_err(err)?;
    let g = QuadratureGrid::standard(grid).map_err(err)?;
    let sample = lyapunov_schmidt::eval_f2(lam, t, &cfg, &g, n_modes).map_err(err)?;
    Ok(sample.f2)
}

/// Finite-difference reduced Hessian with closed-form comparison.
/// Returns {"d_ll", "d_tl", "d_tt", "closed_ll", "closed_tl", "closed_tt",
/// "rel_ll", "rel_tl", "rel_tt"}.
#[pyfunction]
#[pyo3(signature = (m, b, grid=256, n_modes=6))]
fn numeric_hessian<'py>(
    py: Python<'py>,
    m: usize,
    b: f64,
    grid: usize,
    n_modes: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = AnnulusConfig::new(m, b).map_err(err)?;
    let g = QuadratureGrid::standard(grid).map_err(err)?;
    let report = lyapunov_schmidt::numeric_hessian(&cfg, &g, n_modes, 1e-3, 1e-3).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("d_ll", report.d_ll)?;
    dict.set_item("d_tl", report.d_tl)?;
    dict.set_item("d_tt", report.d_tt)?;
    dict.set_item("closed_ll", report.closed.d_ll)?;
    dict.set_item("closed_tl", report.closed.d_tl)?;
    dict.set_item("closed_tt", report.closed.d_tt)?;
    dict.set_item("rel_ll", report.rel_err.0)?;
    dict.set_item("rel_tl", report.rel_err.1)?;
    dict.set_item("rel_tt", report.rel_err.2)?;
    Ok(dict)
}

/// Trace a branch; rows are (arclength, lambda, omega, a11, a21).
///
/// `kind` is "pitchfork" (simple eigenvalue λ_m^±, non-degenerate (m, b))
/// or "transcritical" (m = 2; `t0` ignored, the curve runs through the
/// crossing).
#[pyfunction]
#[pyo3(signature = (kind, sign, m, b, t0=1e-3, steps=32))]
fn trace_branch(
    kind: &str,
    sign: &str,
    m: usize,
    b: f64,
    t0: f64,
    steps: usize,
) -> PyResult<Vec<(f64, f64, f64, f64, f64)>> {
    let sign = parse_sign(sign)?;
    let branch = match kind {
        "pitchfork" => continuation::branch_from_eigenvalue(m, b, sign, t0, steps),
        "transcritical" => {
            if m != 2 {
                return Err(PyValueError::new_err(format!(
                    "transcritical branches exist in the m = 2 class, got m = {m}"
                )));
            }
            continuation::branch_transcritical(b, sign, steps)
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "kind must be 'pitchfork' or 'transcritical', got '{other}'"
            )))
        }
    }
    .map_err(err)?;
    Ok(branch
        .points
        .iter()
        .map(|p| (p.arclength, p.lambda, p.omega, p.a11, p.a21))
        .collect())
}

/// No-bifurcation certificate at (m, b_m); returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (m, radius=5e-3, grid_n=5))]
fn no_bifurcation_scan<'py>(
    py: Python<'py>,
    m: usize,
    radius: f64,
    grid_n: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = continuation::no_bifurcation_scan(m, radius, grid_n).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("m", report.m)?;
    dict.set_item("b", report.b)?;
    dict.set_item("lambda_m", report.lambda_m)?;
    dict.set_item("radius", report.radius)?;
    dict.set_item("samples", report.samples)?;
    dict.set_item("excluded", report.excluded)?;
    dict.set_item("min_ratio", report.min_ratio)?;
    dict.set_item("half_min_eigenvalue", report.half_min_eigenvalue)?;
    dict.set_item("rayleigh_rel_dev", report.rayleigh_rel_dev)?;
    dict.set_item("witness_holds", report.witness_holds)?;
    dict.set_item("collapse_probes", report.collapse_probes)?;
    dict.set_item("max_collapse_amplitude", report.max_collapse_amplitude)?;
    dict.set_item("nontrivial_found", report.nontrivial_found)?;
    Ok(dict)
}

#[pymodule]
fn vstates_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Annulus>()?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalue_pair, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate_radius, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_hat, m)?)?;
    m.add_function(wrap_pyfunction!(beta_hat, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_hat, m)?)?;
    m.add_function(wrap_pyfunction!(hessian_closed, m)?)?;
    m.add_function(wrap_pyfunction!(vtilde, m)?)?;
    m.add_function(wrap_pyfunction!(transcritical_slope, m)?)?;
    m.add_function(wrap_pyfunction!(residue_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(annulus_residual, m)?)?;
    m.add_function(wrap_pyfunction!(eval_f2, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_hessian, m)?)?;
    m.add_function(wrap_pyfunction!(trace_branch, m)?)?;
    m.add_function(wrap_pyfunction!(no_bifurcation_scan, m)?)?;
    Ok(())
}
