//! Boundary functional of rotating doubly-connected patches, evaluated by
//! trapezoid quadrature on the unit circle.
//!
//! A patch D = D₁ \ D₂ rotating with angular velocity Ω = (1−λ)/2 is a
//! V-state exactly when both interfaces are streamlines in the co-rotating
//! frame. With each interface parametrized by a conformal map of the unit
//! circle,
//!
//! ```text
//! φ_j(w) = b_j w + Σ_{n≥1} a_{j,n} w^{−(nm−1)},    b₁ = 1, b₂ = b,
//! ```
//!
//! the streamline conditions read G_j(λ, f₁, f₂)(w) = 0 on |w| = 1, where
//!
//! ```text
//! G_j(w) = Im{ ((1−λ) conj(φ_j(w)) + I(φ_j(w))) · w · φ_j′(w) },
//! I(z)   = ⨍ (z̄ − conj(φ₁(τ)))/(z − φ₁(τ)) φ₁′(τ) dτ
//!        − ⨍ (z̄ − conj(φ₂(τ)))/(z − φ₂(τ)) φ₂′(τ) dτ,
//! ```
//!
//! and ⨍ = (1/2πi)∫_{|τ|=1}. Restricting the coefficients a_{j,n} to real
//! values and exponents nm−1 enforces m-fold symmetry, and G_j lands in the
//! span of sin(nmθ).
//!
//! The slit integrand has a removable singularity at τ = w when z sits on
//! the integrated boundary itself; its limit is −conj(φ′(w))/w², which the
//! equispaced quadrature inserts on the diagonal. For trapezoid sums of
//! smooth periodic integrands the error decays spectrally in the node count
//! M, so modest grids (M = 256) deliver near machine precision.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficient state of the two boundary maps at symmetry class m.
///
/// `outer[n-1]` and `inner[n-1]` are the real Laurent coefficients a_{1,n}
/// and a_{2,n} on the exponent −(nm−1); both vectors share one truncation
/// order N.
#[derive(Debug, Clone, PartialEq)]
pub struct VStateCoeffs {
    /// Fold symmetry m ≥ 1 of the perturbation class.
    pub m: usize,
    /// Conformal radius b of the inner boundary, 0 < b < 1.
    pub b: f64,
    /// Outer-map coefficients a_{1,n}, n = 1..N.
    pub outer: Vec<f64>,
    /// Inner-map coefficients a_{2,n}, n = 1..N.
    pub inner: Vec<f64>,
}

impl VStateCoeffs {
    /// The annulus itself: all coefficients zero at truncation order N.
    pub fn annulus(m: usize, b: f64, n_modes: usize) -> Self {
        VStateCoeffs {
            m,
            b,
            outer: vec![0.0; n_modes],
            inner: vec![0.0; n_modes],
        }
    }

    /// Truncation order N shared by the two coefficient vectors.
    pub fn n_modes(&self) -> usize {
        self.outer.len()
    }
}

/// Which interface a value or map evaluation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Outer,
    Inner,
}

/// Equispaced nodes τ_k on the unit circle.
///
/// The `offset` variant samples between the standard nodes,
/// τ_k = exp(2πi(k+½)/M). Evaluating the boundary integral at standard
/// nodes with offset sources avoids the diagonal entirely, which gives an
/// independent check of the analytic diagonal limit.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    nodes: Vec<Complex64>,
    thetas: Vec<f64>,
    offset: bool,
}

impl QuadratureGrid {
    /// Standard grid τ_k = exp(2πik/M). M must be a power of two: the
    /// projections below are plain discrete sine transforms, and powers of
    /// two keep node symmetries exact and grids trivially refinable.
    pub fn standard(m_nodes: usize) -> Result<Self> {
        Self::build(m_nodes, false)
    }

    /// Offset grid τ_k = exp(2πi(k+½)/M).
    pub fn offset(m_nodes: usize) -> Result<Self> {
        Self::build(m_nodes, true)
    }

    fn build(m_nodes: usize, offset: bool) -> Result<Self> {
        if m_nodes < 4 || !m_nodes.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "node count {m_nodes} is not a power of two >= 4"
            )));
        }
        let shift = if offset { 0.5 } else { 0.0 };
        let step = 2.0 * std::f64::consts::PI / m_nodes as f64;
        let thetas: Vec<f64> = (0..m_nodes).map(|k| (k as f64 + shift) * step).collect();
        let nodes = thetas
            .iter()
            .map(|&t| Complex64::new(t.cos(), t.sin()))
            .collect();
        Ok(QuadratureGrid {
            nodes,
            thetas,
            offset,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_offset(&self) -> bool {
        self.offset
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
}

/// Values of the streamline functional on the two boundary grids.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalValue {
    /// G₁ at the outer-boundary nodes.
    pub outer: Vec<f64>,
    /// G₂ at the inner-boundary nodes.
    pub inner: Vec<f64>,
}

/// Evaluate the boundary map φ_j at a point w.
pub fn eval_map(coeffs: &VStateCoeffs, boundary: Boundary, w: Complex64) -> Complex64 {
    let (lead, a) = match boundary {
        Boundary::Outer => (1.0, &coeffs.outer),
        Boundary::Inner => (coeffs.b, &coeffs.inner),
    };
    let mut z = lead * w;
    for (n, &an) in a.iter().enumerate() {
        if an != 0.0 {
            let exp = ((n + 1) * coeffs.m - 1) as i32;
            z += an * w.powi(-exp);
        }
    }
    z
}

/// Evaluate the derivative φ_j′ at a point w.
pub fn eval_map_deriv(coeffs: &VStateCoeffs, boundary: Boundary, w: Complex64) -> Complex64 {
    let (lead, a) = match boundary {
        Boundary::Outer => (1.0, &coeffs.outer),
        Boundary::Inner => (coeffs.b, &coeffs.inner),
    };
    let mut d = Complex64::new(lead, 0.0);
    for (n, &an) in a.iter().enumerate() {
        if an != 0.0 {
            let exp = ((n + 1) * coeffs.m - 1) as f64;
            d -= an * exp * w.powi(-(((n + 1) * coeffs.m) as i32));
        }
    }
    d
}

/// Images and derivatives of one boundary map on the whole grid.
struct BoundaryTrace {
    phi: Vec<Complex64>,
    dphi: Vec<Complex64>,
}

fn trace(coeffs: &VStateCoeffs, boundary: Boundary, grid: &QuadratureGrid) -> BoundaryTrace {
    let phi = grid
        .nodes()
        .iter()
        .map(|&w| eval_map(coeffs, boundary, w))
        .collect();
    let dphi = grid
        .nodes()
        .iter()
        .map(|&w| eval_map_deriv(coeffs, boundary, w))
        .collect();
    BoundaryTrace { phi, dphi }
}

/// One slit integral ⨍ (z̄ − conj(φ(τ)))/(z − φ(τ)) φ′(τ) dτ over the given
/// source trace. When `self_index` marks the node where z = φ(τ_k), the
/// removable singularity is replaced by its limit −conj(φ′(w))/w².
fn slit_integral(
    z: Complex64,
    src: &BoundaryTrace,
    tau: &[Complex64],
    self_index: Option<usize>,
) -> Complex64 {
    let m_nodes = tau.len() as f64;
    let zbar = z.conj();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..tau.len() {
        let term = if self_index == Some(k) {
            let w = tau[k];
            -src.dphi[k].conj() / (w * w)
        } else {
            (zbar - src.phi[k].conj()) / (z - src.phi[k]) * src.dphi[k]
        };
        acc += term * tau[k];
    }
    acc / m_nodes
}

/// The induced field term I(z) at the node images of one boundary, with the
/// self-boundary diagonal handled by its analytic limit.
pub fn eval_i(
    coeffs: &VStateCoeffs,
    grid: &QuadratureGrid,
    boundary: Boundary,
) -> Vec<Complex64> {
    let outer = trace(coeffs, Boundary::Outer, grid);
    let inner = trace(coeffs, Boundary::Inner, grid);
    let tau = grid.nodes();
    let targets = match boundary {
        Boundary::Outer => &outer.phi,
        Boundary::Inner => &inner.phi,
    };
    (0..tau.len())
        .map(|k| {
            let z = targets[k];
            match boundary {
                Boundary::Outer => {
                    slit_integral(z, &outer, tau, Some(k)) - slit_integral(z, &inner, tau, None)
                }
                Boundary::Inner => {
                    slit_integral(z, &outer, tau, None) - slit_integral(z, &inner, tau, Some(k))
                }
            }
        })
        .collect()
}

/// I(z) at an arbitrary target not lying on either sampled boundary.
pub fn eval_i_at(coeffs: &VStateCoeffs, grid: &QuadratureGrid, z: Complex64) -> Complex64 {
    let outer = trace(coeffs, Boundary::Outer, grid);
    let inner = trace(coeffs, Boundary::Inner, grid);
    let tau = grid.nodes();
    slit_integral(z, &outer, tau, None) - slit_integral(z, &inner, tau, None)
}

/// Fraction of the annulus width 1−b that the two image boundaries must
/// keep between them. Closer approach than this makes the slit integrand
/// too peaked for the grid and the quadrature silently loses digits, so it
/// is rejected instead.
const SEPARATION_FRACTION: f64 = 0.05;

/// Nodes required per unit of the top retained product mode. The functional
/// is quadratic in the maps, so coefficients up to exponent Nm produce
/// modes up to 2Nm; a factor 4 margin keeps aliased tails below roundoff.
const NODES_PER_MODE: usize = 4;

/// Evaluate the streamline functional G = (G₁, G₂) on the grid.
///
/// Fails when the truncation order demands more nodes than the grid has
/// (aliasing) or when the image boundaries approach within
/// [`SEPARATION_FRACTION`] of the annulus width.
pub fn eval_g(
    lambda: f64,
    coeffs: &VStateCoeffs,
    grid: &QuadratureGrid,
) -> Result<FunctionalValue> {
    let required = NODES_PER_MODE * coeffs.m * coeffs.n_modes();
    if grid.len() < required {
        return Err(Error::AliasingRisk {
            nodes: grid.len(),
            required,
        });
    }
    let outer = trace(coeffs, Boundary::Outer, grid);
    let inner = trace(coeffs, Boundary::Inner, grid);
    let tau = grid.nodes();

    let min_outer = outer
        .phi
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    let max_inner = inner.phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let gap = min_outer - max_inner;
    let required_gap = SEPARATION_FRACTION * (1.0 - coeffs.b);
    if gap <= required_gap {
        return Err(Error::SeparationViolation {
            gap,
            required: required_gap,
        });
    }

    let one_minus_lambda = 1.0 - lambda;
    let eval_side = |side: &BoundaryTrace, other: &BoundaryTrace, is_outer: bool| -> Vec<f64> {
        (0..tau.len())
            .map(|k| {
                let z = side.phi[k];
                let i_val = if is_outer {
                    slit_integral(z, side, tau, Some(k)) - slit_integral(z, other, tau, None)
                } else {
                    slit_integral(z, other, tau, None) - slit_integral(z, side, tau, Some(k))
                };
                ((one_minus_lambda * z.conj() + i_val) * tau[k] * side.dphi[k]).im
            })
            .collect()
    };

    Ok(FunctionalValue {
        outer: eval_side(&outer, &inner, true),
        inner: eval_side(&inner, &outer, false),
    })
}

/// Project grid values onto the symmetry-class sine modes.
///
/// The functional takes values in span{e_{nm}} with e_n(θ) = Im(w̄^n)
/// = −sin(nθ); the returned vector holds the coefficients B_n of e_{nm}
/// for n = 1..n_max, i.e. B_n = −(2/M) Σ_k values[k] sin(nmθ_k).
pub fn project_modes(
    values: &[f64],
    grid: &QuadratureGrid,
    m: usize,
    n_max: usize,
) -> Result<Vec<f64>> {
    if values.len() != grid.len() {
        return Err(Error::InvalidInput(format!(
            "{} values on a grid of {} nodes",
            values.len(),
            grid.len()
        )));
    }
    if 2 * n_max * m >= grid.len() {
        return Err(Error::AliasingRisk {
            nodes: grid.len(),
            required: 2 * n_max * m + 1,
        });
    }
    let m_nodes = grid.len() as f64;
    Ok((1..=n_max)
        .map(|n| {
            let freq = (n * m) as f64;
            let s: f64 = values
                .iter()
                .zip(grid.thetas())
                .map(|(&v, &t)| v * (freq * t).sin())
                .sum();
            -2.0 * s / m_nodes
        })
        .collect())
}
