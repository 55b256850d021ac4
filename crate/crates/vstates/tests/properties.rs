//! Randomized structural properties: identities that must hold across the
//! whole parameter domain, not just at the hand-picked points of the unit
//! tests.

use proptest::prelude::*;

use vstates::cli_io::{read_branch_json, write_branch_json};
use vstates::closed_forms::{residue_oracle, ResidueKind};
use vstates::continuation::{Branch, BranchOrigin, BranchPoint, RootSign, TerminationReason};
use vstates::contour_functional::{eval_g, project_modes, QuadratureGrid, VStateCoeffs};
use vstates::spectral_core::{degenerate_radius, discriminant, multiplier_matrix, AnnulusConfig};

fn grid(m_nodes: usize) -> QuadratureGrid {
    QuadratureGrid::standard(m_nodes).unwrap()
}

proptest! {
    /// Roots of det M_n exist exactly when the discriminant is
    /// non-negative, and the determinant vanishes at each root.
    #[test]
    fn multiplier_roots_solve_determinant(n in 1usize..=12, b in 0.05f64..0.95) {
        let delta = discriminant(n, b);
        let mat = multiplier_matrix(n, 0.3, b);
        prop_assert_eq!(mat.roots.is_some(), delta >= 0.0);
        if let Some((lo, hi)) = mat.roots {
            prop_assert!(lo <= hi);
            for root in [lo, hi] {
                let det = multiplier_matrix(n, root, b).det;
                prop_assert!(det.abs() <= 1e-10, "n={} b={} det={:e}", n, b, det);
            }
        }
    }

    /// The degenerate radius solves 1 + b^m = (1-b^2) m / 2 and separates
    /// the two-root regime (below) from the no-root regime (above).
    #[test]
    fn degenerate_radius_separates_regimes(m in 3usize..=12) {
        let b = degenerate_radius(m, 1e-13).unwrap();
        prop_assert!(0.0 < b && b < 1.0);
        let residual = 1.0 + b.powi(m as i32) - (1.0 - b * b) * m as f64 / 2.0;
        prop_assert!(residual.abs() <= 1e-12);
        prop_assert!(discriminant(m, b - 1e-3) > 0.0);
        prop_assert!(discriminant(m, b + 1e-3) < 0.0);
    }

    /// The closed kernel vector annihilates the multiplier matrix at the
    /// merged eigenvalue, for m = 2 at every radius.
    #[test]
    fn kernel_vector_annihilates_m2(b in 0.05f64..0.95) {
        let cfg = AnnulusConfig::new(2, b).unwrap();
        let mat = multiplier_matrix(2, cfg.lambda_m(), b);
        let (r0, r1) = mat.apply(cfg.kernel_vector().components);
        prop_assert!(r0.abs() <= 1e-12 && r1.abs() <= 1e-12);
    }

    /// Sine-mode projection recovers a synthetic pure mode exactly and
    /// reads zero on every other harmonic.
    #[test]
    fn projection_recovers_pure_modes(
        m in 1usize..=6,
        n in 1usize..=4,
        c in -0.5f64..0.5,
    ) {
        let g = grid(128);
        let values: Vec<f64> = g
            .thetas()
            .iter()
            .map(|theta| -c * ((n * m) as f64 * theta).sin())
            .collect();
        let coeffs = project_modes(&values, &g, m, 4).unwrap();
        for (k, &got) in coeffs.iter().enumerate() {
            let want = if k + 1 == n { c } else { 0.0 };
            prop_assert!((got - want).abs() <= 1e-12 * (1.0 + c.abs()),
                "mode {}: got {:e}, want {}", k + 1, got, want);
        }
    }

    /// The annulus is a V-state for every rotation number: the functional
    /// vanishes there identically.
    #[test]
    fn annulus_solves_for_every_lambda(
        m in 1usize..=6,
        b in 0.05f64..0.7,
        lambda in -0.5f64..1.5,
    ) {
        let g = grid(128);
        let coeffs = VStateCoeffs::annulus(m, b, 4);
        let values = eval_g(lambda, &coeffs, &g).unwrap();
        for v in values.outer.iter().chain(values.inner.iter()) {
            prop_assert!(v.abs() <= 1e-12);
        }
    }

    /// Rotating the patch by pi/m maps a_{j,n} -> (-1)^n a_{j,n} and is a
    /// symmetry of the equations: the projected modes transform the same
    /// way.
    #[test]
    fn rotation_equivariance(
        m in 1usize..=5,
        b in 0.1f64..0.6,
        lambda in 0.0f64..1.0,
        amp1 in -1.0f64..1.0,
        amp2 in -1.0f64..1.0,
        amp3 in -1.0f64..1.0,
    ) {
        let g = grid(128);
        let scale = 0.02 * (1.0 - b);
        let mut coeffs = VStateCoeffs::annulus(m, b, 4);
        coeffs.outer[0] = scale * amp1;
        coeffs.inner[0] = scale * amp2;
        coeffs.outer[1] = scale * amp3;
        let mut mapped = coeffs.clone();
        for n in 1..=4usize {
            if n % 2 == 1 {
                mapped.outer[n - 1] = -mapped.outer[n - 1];
                mapped.inner[n - 1] = -mapped.inner[n - 1];
            }
        }
        let base = eval_g(lambda, &coeffs, &g).unwrap();
        let turned = eval_g(lambda, &mapped, &g).unwrap();
        let b_base = (
            project_modes(&base.outer, &g, m, 4).unwrap(),
            project_modes(&base.inner, &g, m, 4).unwrap(),
        );
        let b_turned = (
            project_modes(&turned.outer, &g, m, 4).unwrap(),
            project_modes(&turned.inner, &g, m, 4).unwrap(),
        );
        for n in 1..=4usize {
            let flip = if n % 2 == 1 { -1.0 } else { 1.0 };
            prop_assert!((b_turned.0[n - 1] - flip * b_base.0[n - 1]).abs() <= 1e-10);
            prop_assert!((b_turned.1[n - 1] - flip * b_base.1[n - 1]).abs() <= 1e-10);
        }
    }

    /// 17-significant-digit serialization reconstructs every finite f64.
    #[test]
    fn float_serialization_round_trips(x in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        let s = format!("{x:.16e}");
        prop_assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    /// The residue identities hold across the admissible parameter range,
    /// not just on the acceptance grid.
    #[test]
    fn residues_match_quadrature(
        m in 1usize..=10,
        b in 0.05f64..0.8,
        p in 0usize..3,
    ) {
        let kind = [ResidueKind::Pole1, ResidueKind::Pole2, ResidueKind::Pole3][p];
        let (closed, quad) = residue_oracle(kind, m, b, &grid(256));
        prop_assert!((closed - quad).abs() <= 1e-10);
    }

    /// Doubling the quadrature grid does not move the projected modes:
    /// both resolutions sit on the same spectrally-converged values.
    #[test]
    fn grid_refinement_is_converged(
        b in 0.1f64..0.6,
        lambda in 0.2f64..0.9,
        amp in -1.0f64..1.0,
    ) {
        let m = 3usize;
        let scale = 0.02 * (1.0 - b);
        let mut coeffs = VStateCoeffs::annulus(m, b, 4);
        coeffs.outer[0] = scale * amp;
        coeffs.inner[0] = 0.5 * scale * amp;
        let mut projected = Vec::new();
        for nodes in [128usize, 256] {
            let g = grid(nodes);
            let values = eval_g(lambda, &coeffs, &g).unwrap();
            let mut modes = project_modes(&values.outer, &g, m, 4).unwrap();
            modes.extend(project_modes(&values.inner, &g, m, 4).unwrap());
            projected.push(modes);
        }
        for (a, b) in projected[0].iter().zip(projected[1].iter()) {
            prop_assert!((a - b).abs() <= 1e-11);
        }
    }
}

fn finite() -> impl Strategy<Value = f64> {
    any::<f64>().prop_filter("finite", |v| v.is_finite())
}

prop_compose! {
    fn branch_point(m: usize, b: f64, n_modes: usize)(
        outer in prop::collection::vec(finite(), n_modes..=n_modes),
        inner in prop::collection::vec(finite(), n_modes..=n_modes),
        lambda in finite(),
        omega in finite(),
        arclength in finite(),
        residual in finite(),
    ) -> BranchPoint {
        let coeffs = VStateCoeffs { m, b, outer, inner };
        BranchPoint {
            a11: coeffs.outer[0],
            a21: coeffs.inner[0],
            coeffs,
            lambda,
            omega,
            arclength,
            residual,
        }
    }
}

prop_compose! {
    fn synthetic_branch()(
        m in 1usize..=5,
        b in 0.05f64..0.95,
        lambda_onset in finite(),
        sign in prop::bool::ANY,
        termination in 0usize..3,
    )(
        points in prop::collection::vec(branch_point(m, b, 3), 1..5),
        origin in Just(BranchOrigin {
            m,
            b,
            lambda_onset,
            sign: if sign { RootSign::Plus } else { RootSign::Minus },
        }),
        termination in Just([
            TerminationReason::StepBudget,
            TerminationReason::SeparationViolation,
            TerminationReason::CorrectorFailure,
        ][termination]),
    ) -> Branch {
        Branch { origin, points, termination }
    }
}

proptest! {
    /// Branch serialization is an exact bijection: any branch value,
    /// including adversarial floats, survives a JSON round trip bit for
    /// bit.
    #[test]
    fn branch_json_round_trips(branch in synthetic_branch()) {
        let text = write_branch_json(&branch);
        let parsed = read_branch_json(&text).unwrap();
        prop_assert_eq!(&parsed, &branch);
        prop_assert_eq!(write_branch_json(&parsed), text);
    }
}
