//! Explicit coefficients of the reduced bifurcation function.
//!
//! At a degenerate point (m, b) with double eigenvalue λ_m = (1+b²)/2, the
//! one-dimensional reduced function F₂(λ, t) carries all local bifurcation
//! information. Its Taylor data at (λ_m, 0) admits closed forms:
//!
//! ```text
//! ∂_λλ F₂ = √2 m² b^{1−m}                      (always positive)
//! ∂_tλ F₂ = 0
//! ∂_tt F₂ = −√2 (1−b²)²/b                       for m = 2
//!         = (1/√2)[m(m−1)(1−b²)²/b + β̂_m γ̂_m]  for m ≥ 3
//! ```
//!
//! The sign of ∂_tt F₂ decides everything: negative for m = 2 (a
//! transcritical crossing of two curves of V-states), positive for m ≥ 3
//! at b = b_m (an isolated point, no bifurcation). The m ≥ 3 correction
//! involves the quadratic response on the first harmonic: along the kernel
//! ray, the second-order term of the complement correction is
//! (t²/2)·ṽ_m with ṽ_m = β̂_m(−1−2b^m, b^{2m−1})ᵀ on the exponent 2m−1,
//! where
//!
//! ```text
//! β̂_m = 2m(b² + b^m)² / [(b^m+1)²(1 + 2b^m − b^{2m})],
//! γ̂_m = (m−2)b + m b^{2m−1} + (4m−6)b^{m+1} + 4(m−1)b^{2m+1} + 2m b^{3m−1}.
//! ```
//!
//! For m = 2 the quadratic source α̂ = 2m(b² − εb^m)² vanishes identically
//! (ε = +1 makes b² − b² = 0), hence ṽ₂ = 0 and the pure cubic term is the
//! whole story. All formulas here are independent of the quadrature
//! pipeline; the agreement of the two computation paths is the strongest
//! correctness check in the crate.

use num_complex::Complex64;

use crate::contour_functional::QuadratureGrid;
use crate::spectral_core::epsilon;

/// Reduced Hessian entries at the degenerate point, in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedHessian {
    /// ∂_λλ F₂(λ_m, 0).
    pub d_ll: f64,
    /// ∂_t∂_λ F₂(λ_m, 0), identically zero.
    pub d_tl: f64,
    /// ∂_tt F₂(λ_m, 0).
    pub d_tt: f64,
}

/// Second-order complement response β̂_m(−1−2b^m, b^{2m−1})ᵀ on the Laurent
/// exponent 2m−1; the zero vector for m = 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VTilde {
    pub components: (f64, f64),
    /// Exponent of the monomial w̄^{2m−1} the pair multiplies.
    pub mode: usize,
}

/// Every explicit derivative coefficient at one degenerate point, bundled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCoefficients {
    pub alpha_hat: f64,
    /// Zero for m = 2, where the quadratic source vanishes.
    pub beta_hat: f64,
    pub gamma_hat: f64,
    pub third_deriv: f64,
    pub hessian: ReducedHessian,
    pub vtilde: VTilde,
}

impl DerivativeCoefficients {
    pub fn at(m: usize, b: f64) -> Self {
        DerivativeCoefficients {
            alpha_hat: alpha_hat(m, b),
            beta_hat: if m == 2 { 0.0 } else { beta_hat(m, b) },
            gamma_hat: gamma_hat(m, b),
            third_deriv: third_derivative_coeff(m, b),
            hessian: hessian_closed(m, b),
            vtilde: vtilde(m, b),
        }
    }
}

/// Quadratic source coefficient α̂ = 2m(b² − εb^m)² feeding the harmonic
/// 2m. Vanishes exactly when m = 2.
pub fn alpha_hat(m: usize, b: f64) -> f64 {
    let diff = b * b - epsilon(m) * b.powi(m as i32);
    2.0 * m as f64 * diff * diff
}

/// β̂_m = 2m(b² + b^m)² / [(b^m+1)²(1 + 2b^m − b^{2m})]. Meaningful for
/// m ≥ 3 at the degenerate radius b = b_m, where it is positive (the
/// denominator 1 + 2b^m − b^{2m} exceeds 1 on 0 < b < 1).
pub fn beta_hat(m: usize, b: f64) -> f64 {
    let mf = m as f64;
    let bm = b.powi(m as i32);
    let num = 2.0 * mf * (b * b + bm) * (b * b + bm);
    let den = (bm + 1.0) * (bm + 1.0) * (1.0 + 2.0 * bm - bm * bm);
    num / den
}

/// γ̂_m = (m−2)b + m b^{2m−1} + (4m−6)b^{m+1} + 4(m−1)b^{2m+1} + 2m b^{3m−1}.
pub fn gamma_hat(m: usize, b: f64) -> f64 {
    let mf = m as f64;
    let mi = m as i32;
    (mf - 2.0) * b
        + mf * b.powi(2 * mi - 1)
        + (4.0 * mf - 6.0) * b.powi(mi + 1)
        + 4.0 * (mf - 1.0) * b.powi(2 * mi + 1)
        + 2.0 * mf * b.powi(3 * mi - 1)
}

/// Closed-form reduced Hessian at the degenerate point (m, b).
pub fn hessian_closed(m: usize, b: f64) -> ReducedHessian {
    let mf = m as f64;
    let sqrt2 = std::f64::consts::SQRT_2;
    let d_ll = sqrt2 * mf * mf * b.powi(1 - m as i32);
    let one_minus_b2 = 1.0 - b * b;
    let d_tt = if m == 2 {
        -sqrt2 * one_minus_b2 * one_minus_b2 / b
    } else {
        (mf * (mf - 1.0) * one_minus_b2 * one_minus_b2 / b + beta_hat(m, b) * gamma_hat(m, b))
            / sqrt2
    };
    ReducedHessian {
        d_ll,
        d_tl: 0.0,
        d_tt,
    }
}

/// Coefficient −ε·m(m−1)(1−b²)²/(b√2) of the pure cubic term: along the
/// uncorrected kernel ray, (1/3)·d³/dt³ of the projected functional equals
/// this value. For m = 2 it coincides with ∂_tt F₂ because ṽ₂ = 0 leaves
/// the cubic as the only contribution.
pub fn third_derivative_coeff(m: usize, b: f64) -> f64 {
    let mf = m as f64;
    let one_minus_b2 = 1.0 - b * b;
    -epsilon(m) * mf * (mf - 1.0) * one_minus_b2 * one_minus_b2 / (b * std::f64::consts::SQRT_2)
}

/// Second-order complement response along the kernel ray. At b = b_m it
/// satisfies −M_{2m}(λ_m)·ṽ_m = (α̂, 0)ᵀ exactly.
pub fn vtilde(m: usize, b: f64) -> VTilde {
    let mode = 2 * m - 1;
    if m == 2 {
        return VTilde {
            components: (0.0, 0.0),
            mode,
        };
    }
    let bh = beta_hat(m, b);
    let bm = b.powi(m as i32);
    VTilde {
        components: (bh * (-1.0 - 2.0 * bm), bh * b.powi(2 * m as i32 - 1)),
        mode,
    }
}

/// Which boundary-integral identity [`residue_oracle`] checks: the pole
/// order p of ⨍ τ̄^m/(1−bτ)^p dτ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueKind {
    Pole1,
    Pole2,
    Pole3,
}

impl ResidueKind {
    pub fn order(self) -> u32 {
        match self {
            ResidueKind::Pole1 => 1,
            ResidueKind::Pole2 => 2,
            ResidueKind::Pole3 => 3,
        }
    }
}

/// The residue identities behind the explicit coefficients:
///
/// ```text
/// ⨍ τ̄^m/(1−bτ)  dτ = b^{m−1}
/// ⨍ τ̄^m/(1−bτ)² dτ = m b^{m−1}
/// ⨍ τ̄^m/(1−bτ)³ dτ = (m+1)m b^{m−1}/2
/// ```
///
/// (the pole at τ = 1/b lies outside the unit disc, so only the order-m
/// pole at the origin contributes). Returns the closed value together with
/// its trapezoid quadrature on the grid; the pair is the unit-level oracle
/// for the quadrature conventions used everywhere else.
pub fn residue_oracle(
    kind: ResidueKind,
    m: usize,
    b: f64,
    grid: &QuadratureGrid,
) -> (f64, f64) {
    let mf = m as f64;
    let lead = b.powi(m as i32 - 1);
    let closed = match kind {
        ResidueKind::Pole1 => lead,
        ResidueKind::Pole2 => mf * lead,
        ResidueKind::Pole3 => (mf + 1.0) * mf * lead / 2.0,
    };
    let p = kind.order() as i32;
    let mut acc = Complex64::new(0.0, 0.0);
    for &tau in grid.nodes() {
        let integrand = tau.powi(-(m as i32)) / (Complex64::new(1.0, 0.0) - b * tau).powi(p);
        acc += integrand * tau;
    }
    let quadrature = (acc / grid.len() as f64).re;
    (closed, quadrature)
}

/// Magnitude (1−b²)/2 of dλ/dt for the two V-state curves crossing the
/// trivial one at (λ₂, 0) when m = 2: the zero set of the quadratic part
/// d_ll λ̂² + d_tt t² factors into the lines λ̂ = ±t(1−b²)/2.
pub fn transcritical_slope(b: f64) -> f64 {
    (1.0 - b * b) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::{degenerate_radius, multiplier_matrix};
    use approx::assert_relative_eq;

    #[test]
    fn alpha_hat_values() {
        for &b in &[0.2, 0.5, 0.8] {
            assert_eq!(alpha_hat(2, b), 0.0);
        }
        assert_relative_eq!(alpha_hat(3, 0.5), 0.84375, max_relative = 1e-15);
        let b4 = (2.0f64.sqrt() - 1.0).sqrt();
        let want = 8.0 * (b4 * b4 + b4.powi(4)).powi(2);
        assert_relative_eq!(alpha_hat(4, b4), want, max_relative = 1e-14);
    }

    #[test]
    fn beta_hat_reference_value_and_sign() {
        // 0.84375 / (1.265625 * 1.234375) as an exact dyadic ratio
        assert_relative_eq!(beta_hat(3, 0.5), 3456.0 / 6399.0, max_relative = 1e-15);
        for m in 3..=12 {
            let b = degenerate_radius(m, 1e-13).unwrap();
            assert!(beta_hat(m, b) > 0.0, "m={m}");
        }
    }

    #[test]
    fn gamma_hat_reference_value() {
        // 0.5 + 3/32 + 6/16 + 8/128 + 6/256
        assert_relative_eq!(gamma_hat(3, 0.5), 1.0546875, max_relative = 1e-15);
    }

    #[test]
    fn hessian_reference_values() {
        let h = hessian_closed(2, 0.4);
        assert_relative_eq!(
            h.d_tt,
            -std::f64::consts::SQRT_2 * 0.84f64.powi(2) / 0.4,
            max_relative = 1e-14
        );
        assert!((h.d_tt + 2.49467).abs() < 1e-5);
        assert_eq!(h.d_tl, 0.0);

        let h3 = hessian_closed(3, 0.5);
        assert_relative_eq!(h3.d_ll, 36.0 * std::f64::consts::SQRT_2, max_relative = 1e-14);
    }

    /// The sign dichotomy driving the whole analysis: ∂_tt F₂ < 0 for
    /// m = 2 at every b, > 0 for m ≥ 3 at the degenerate radius.
    #[test]
    fn d_tt_sign_dichotomy() {
        for k in 1..10 {
            let b = 0.1 * k as f64;
            assert!(hessian_closed(2, b).d_tt < 0.0, "b={b}");
        }
        for m in 3..=12 {
            let b = degenerate_radius(m, 1e-13).unwrap();
            assert!(hessian_closed(m, b).d_tt > 0.0, "m={m}");
        }
    }

    #[test]
    fn third_derivative_values() {
        let c2 = third_derivative_coeff(2, 0.4);
        assert_relative_eq!(c2, hessian_closed(2, 0.4).d_tt, max_relative = 1e-14);
        let c3 = third_derivative_coeff(3, 0.5);
        assert_relative_eq!(
            c3,
            6.0 * 0.5625 / (0.5 * std::f64::consts::SQRT_2),
            max_relative = 1e-14
        );
        assert!((c3 - 4.77297).abs() < 1e-5);
        // sign is -epsilon
        for m in 2..=8usize {
            let sign = third_derivative_coeff(m, 0.5).signum();
            assert_eq!(sign, -epsilon(m));
        }
    }

    #[test]
    fn vtilde_values_and_inversion_identity() {
        let z = vtilde(2, 0.4);
        assert_eq!(z.components, (0.0, 0.0));
        assert_eq!(z.mode, 3);

        let v3 = vtilde(3, 0.5);
        let bh = beta_hat(3, 0.5);
        assert_relative_eq!(v3.components.0, bh * -1.25, max_relative = 1e-14);
        assert_relative_eq!(v3.components.1, bh * 0.03125, max_relative = 1e-14);
        assert_eq!(v3.mode, 5);

        // -M_{2m}(lambda_m) vtilde = (alpha_hat, 0) at the degenerate radius
        for m in 3..=10 {
            let b = degenerate_radius(m, 1e-13).unwrap();
            let lam = (1.0 + b * b) / 2.0;
            let mat = multiplier_matrix(2 * m, lam, b);
            let v = vtilde(m, b);
            let (r0, r1) = mat.apply(v.components);
            assert!(
                (-r0 - alpha_hat(m, b)).abs() < 1e-10,
                "m={m}: {} vs {}",
                -r0,
                alpha_hat(m, b)
            );
            assert!(r1.abs() < 1e-10, "m={m}: residual {r1}");
        }
    }

    #[test]
    fn residue_quadrature_matches_closed_forms() {
        let grid = QuadratureGrid::standard(256).unwrap();
        let (c1, _) = residue_oracle(ResidueKind::Pole1, 3, 0.5, &grid);
        let (c2, _) = residue_oracle(ResidueKind::Pole2, 3, 0.5, &grid);
        let (c3, _) = residue_oracle(ResidueKind::Pole3, 3, 0.5, &grid);
        assert_eq!((c1, c2, c3), (0.25, 0.75, 1.5));

        for m in 1..=10usize {
            for &b in &[0.2, 0.5, 0.8] {
                for kind in [ResidueKind::Pole1, ResidueKind::Pole2, ResidueKind::Pole3] {
                    let (closed, quad) = residue_oracle(kind, m, b, &grid);
                    assert!(
                        (closed - quad).abs() <= 1e-10,
                        "{kind:?} m={m} b={b}: {closed} vs {quad}"
                    );
                }
            }
        }
    }

    #[test]
    fn slope_squared_is_hessian_ratio() {
        for k in 1..10 {
            let b = 0.1 * k as f64;
            let h = hessian_closed(2, b);
            let s = transcritical_slope(b);
            assert!((s * s - (-h.d_tt / h.d_ll)).abs() < 1e-12, "b={b}");
        }
        assert_relative_eq!(transcritical_slope(0.4), 0.42, max_relative = 1e-15);
    }

    /// Finite-difference derivative in b vs the symbolic derivative of each
    /// hard-coded formula. A transcription typo in any exponent or
    /// coefficient breaks this at far above the tolerance.
    #[test]
    fn coefficient_formulas_differentiate_consistently() {
        let h = 1e-6;
        for &(m, b) in &[(3usize, 0.5f64), (4, 0.6), (5, 0.7)] {
            let mf = m as f64;
            let mi = m as i32;
            let bm = b.powi(mi);

            let da_sym = 4.0 * mf * (b * b + bm) * (2.0 * b + mf * b.powi(mi - 1));
            let da_fd = (alpha_hat(m, b + h) - alpha_hat(m, b - h)) / (2.0 * h);
            assert_relative_eq!(da_fd, da_sym, max_relative = 1e-6);

            let dg_sym = (mf - 2.0)
                + mf * (2.0 * mf - 1.0) * b.powi(2 * mi - 2)
                + (4.0 * mf - 6.0) * (mf + 1.0) * b.powi(mi)
                + 4.0 * (mf - 1.0) * (2.0 * mf + 1.0) * b.powi(2 * mi)
                + 2.0 * mf * (3.0 * mf - 1.0) * b.powi(3 * mi - 2);
            let dg_fd = (gamma_hat(m, b + h) - gamma_hat(m, b - h)) / (2.0 * h);
            assert_relative_eq!(dg_fd, dg_sym, max_relative = 1e-6);

            let num = 2.0 * mf * (b * b + bm) * (b * b + bm);
            let dnum = 4.0 * mf * (b * b + bm) * (2.0 * b + mf * b.powi(mi - 1));
            let den = (bm + 1.0) * (bm + 1.0) * (1.0 + 2.0 * bm - bm * bm);
            let dbm = mf * b.powi(mi - 1);
            let dden = 2.0 * (bm + 1.0) * dbm * (1.0 + 2.0 * bm - bm * bm)
                + (bm + 1.0) * (bm + 1.0) * (2.0 * dbm - 2.0 * bm * dbm);
            let db_sym = (dnum * den - num * dden) / (den * den);
            let db_fd = (beta_hat(m, b + h) - beta_hat(m, b - h)) / (2.0 * h);
            assert_relative_eq!(db_fd, db_sym, max_relative = 1e-6);
        }
    }
}
