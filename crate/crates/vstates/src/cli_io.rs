//! Command implementations and machine-readable serialization.
//!
//! Every command produces a [`Table`]: a flat record set with a `meta`
//! block naming the command and its parameters. Tables render to CSV
//! (header row, comma separator, `\n` line endings, no quoting; all cells
//! are numbers, booleans, or plain identifiers) or to JSON (UTF-8 object
//! `{"meta": {...}, "rows": [...]}`).
//!
//! Floating-point cells are written with 17 significant digits
//! (`{:.16e}`), enough to reconstruct every f64 bit-exactly, so output
//! files are both byte-deterministic for a fixed configuration and
//! re-checkable without rounding slop. [`read_branch_json`] inverts
//! [`write_branch_json`] exactly.

use std::fmt::Write as _;

use crate::closed_forms::{residue_oracle, vtilde, ResidueKind};
use crate::continuation::{
    branch_from_eigenvalue, branch_transcritical, emit_diagram, no_bifurcation_scan, Branch,
    BranchOrigin, BranchPoint, RootSign, TerminationReason,
};
use crate::contour_functional::{eval_g, project_modes, QuadratureGrid, VStateCoeffs};
use crate::error::{Error, Result};
use crate::lyapunov_schmidt::{complement_curvature, numeric_hessian};
use crate::spectral_core::{degenerate_radius, multiplier_matrix, AnnulusConfig};

/// Output encoding selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One table cell. `Blank` renders as an empty CSV field and JSON `null`;
/// it marks values that do not exist (eigenvalues of a negative
/// discriminant), not missing data.
#[derive(Debug, Clone, PartialEq)]
pub enum CellValue {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Blank,
}

/// Full round-trip precision: 17 significant digits reconstruct any f64
/// exactly.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

impl CellValue {
    fn csv(&self) -> String {
        match self {
            CellValue::Int(v) => v.to_string(),
            CellValue::Float(v) => fmt_float(*v),
            CellValue::Bool(v) => v.to_string(),
            CellValue::Text(v) => {
                debug_assert!(
                    !v.contains([',', '"', '\n', '\r']),
                    "text cells stay in the unquoted CSV subset"
                );
                v.clone()
            }
            CellValue::Blank => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            CellValue::Int(v) => v.to_string(),
            CellValue::Float(v) => fmt_float(*v),
            CellValue::Bool(v) => v.to_string(),
            CellValue::Text(v) => format!("\"{}\"", json_escape(v)),
            CellValue::Blank => "null".to_string(),
        }
    }
}

/// A record set with named columns and a command-identifying meta block.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, CellValue)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<CellValue>>,
}

impl Table {
    fn new(meta: Vec<(&str, CellValue)>, columns: &[&str]) -> Self {
        Table {
            meta: meta.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let cells: Vec<String> = row.iter().map(CellValue::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"meta\": {");
        for (i, (key, value)) in self.meta.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{}\": {}", json_escape(key), value.json());
        }
        out.push_str("},\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            debug_assert_eq!(row.len(), self.columns.len());
            out.push_str("    {");
            for (j, (col, value)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{}\": {}", json_escape(col), value.json());
            }
            out.push('}');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Eigenvalue table for harmonics n = 1..=modes at inner radius b: the
/// discriminant Δ_n and, where Δ_n ≥ 0, the pair λ_n^− ≤ λ_n^+. The two
/// root columns are blank when mode n carries no eigenvalue and coincide
/// exactly at a degenerate radius.
pub fn cmd_spectrum(b: f64, modes: usize) -> Result<Table> {
    AnnulusConfig::new(1, b)?;
    if modes == 0 {
        return Err(Error::InvalidInput("modes >= 1 required".into()));
    }
    let mut table = Table::new(
        vec![
            ("kind", CellValue::Text("spectrum".into())),
            ("b", CellValue::Float(b)),
            ("modes", CellValue::Int(modes as i64)),
        ],
        &["n", "delta", "lambda_minus", "lambda_plus"],
    );
    for n in 1..=modes {
        let mat = multiplier_matrix(n, 0.0, b);
        let (lo, hi) = match mat.roots {
            Some((lo, hi)) => (CellValue::Float(lo), CellValue::Float(hi)),
            None => (CellValue::Blank, CellValue::Blank),
        };
        table.rows.push(vec![
            CellValue::Int(n as i64),
            CellValue::Float(mat.discriminant),
            lo,
            hi,
        ]);
    }
    Ok(table)
}

/// Degenerate radii b_m with the merged eigenvalue λ_m = (1+b_m²)/2 and
/// the discriminant residual at the computed root. A specific `m` yields a
/// single row; otherwise rows cover m = 3..=modes.
pub fn cmd_roots(m: Option<usize>, modes: usize, tol: f64) -> Result<Table> {
    let targets: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (3..=modes.max(3)).collect(),
    };
    let mut table = Table::new(
        vec![("kind", CellValue::Text("roots".into()))],
        &["m", "b_m", "lambda_m", "delta_residual"],
    );
    for m in targets {
        let b = degenerate_radius(m, tol)?;
        table.rows.push(vec![
            CellValue::Int(m as i64),
            CellValue::Float(b),
            CellValue::Float((1.0 + b * b) / 2.0),
            CellValue::Float(crate::spectral_core::discriminant(m, b)),
        ]);
    }
    Ok(table)
}

/// Reduced Hessian at the degenerate point of symmetry class m: numeric
/// stencil entries next to the closed forms. For m ≥ 3 the inner radius
/// defaults to b_m; for m = 2 it must be supplied (every b is degenerate).
pub fn cmd_hessian(m: usize, b: Option<f64>, grid_m: usize, n_modes: usize) -> Result<Table> {
    let b = match (m, b) {
        (_, Some(b)) => b,
        (0..=2, None) => {
            return Err(Error::InvalidInput(
                "m = 2 needs an explicit inner radius b".into(),
            ))
        }
        (m, None) => degenerate_radius(m, 1e-13)?,
    };
    let cfg = AnnulusConfig::new(m, b)?;
    let grid = QuadratureGrid::standard(grid_m)?;
    let report = numeric_hessian(&cfg, &grid, n_modes, 1e-3, 1e-3)?;
    let mut table = Table::new(
        vec![
            ("kind", CellValue::Text("hessian".into())),
            ("m", CellValue::Int(m as i64)),
            ("b", CellValue::Float(b)),
            ("lambda_m", CellValue::Float(cfg.lambda_m())),
            ("grid", CellValue::Int(grid_m as i64)),
            ("n_modes", CellValue::Int(n_modes as i64)),
        ],
        &["entry", "numeric", "closed", "rel_err"],
    );
    let rows = [
        ("d_lambda", report.d_lambda, 0.0, report.d_lambda.abs()),
        ("d_t", report.d_t, 0.0, report.d_t.abs()),
        ("d_ll", report.d_ll, report.closed.d_ll, report.rel_err.0),
        ("d_tl", report.d_tl, report.closed.d_tl, report.rel_err.1),
        ("d_tt", report.d_tt, report.closed.d_tt, report.rel_err.2),
    ];
    for (entry, numeric, closed, rel) in rows {
        table.rows.push(vec![
            CellValue::Text(entry.into()),
            CellValue::Float(numeric),
            CellValue::Float(closed),
            CellValue::Float(rel),
        ]);
    }
    Ok(table)
}

/// Verification suite selector for [`cmd_verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifySuite {
    /// Trapezoid quadrature against the three closed residue identities.
    Residues,
    /// Finite-difference linearization of G against the multiplier
    /// matrices.
    Linearization,
    /// Numeric reduced Hessian against the closed forms at (3, 1/2).
    Hessian,
    /// Complement curvature against ṽ_m at (3, 1/2) and its vanishing at
    /// (2, 0.4).
    Vtilde,
}

impl VerifySuite {
    pub fn name(self) -> &'static str {
        match self {
            VerifySuite::Residues => "residues",
            VerifySuite::Linearization => "linearization",
            VerifySuite::Hessian => "hessian",
            VerifySuite::Vtilde => "vtilde",
        }
    }
}

fn check_row(check: String, measured: f64, reference: f64, error: f64, tol: f64) -> Vec<CellValue> {
    vec![
        CellValue::Text(check),
        CellValue::Float(measured),
        CellValue::Float(reference),
        CellValue::Float(error),
        CellValue::Float(tol),
        CellValue::Bool(error <= tol),
    ]
}

/// Run one verification suite. Returns the per-check report and whether
/// every check passed; the caller owns the exit-status contract (nonzero
/// iff some check failed).
pub fn cmd_verify(suite: VerifySuite) -> Result<(Table, bool)> {
    let mut table = Table::new(
        vec![
            ("kind", CellValue::Text("verify".into())),
            ("suite", CellValue::Text(suite.name().into())),
        ],
        &["check", "measured", "reference", "error", "tol", "pass"],
    );
    let grid = QuadratureGrid::standard(256)?;
    match suite {
        VerifySuite::Residues => {
            let tol = 1e-10;
            for m in 1..=10usize {
                for b in [0.2, 0.5, 0.8] {
                    for kind in [ResidueKind::Pole1, ResidueKind::Pole2, ResidueKind::Pole3] {
                        let (closed, quad) = residue_oracle(kind, m, b, &grid);
                        table.rows.push(check_row(
                            format!("residue p={} m={m} b={b}", kind.order()),
                            quad,
                            closed,
                            (quad - closed).abs(),
                            tol,
                        ));
                    }
                }
            }
        }
        VerifySuite::Linearization => {
            let tol = 1e-6;
            let h = 1e-5;
            let n_modes = 8;
            for (m, b, lambda) in [(3usize, 0.5f64, 0.625f64), (2, 0.4, 0.7)] {
                for n in 1..=4usize {
                    let mat = multiplier_matrix(n * m, lambda, b);
                    for (col, dir) in [(0usize, (1.0, 0.0)), (1, (0.0, 1.0))] {
                        let mut plus = VStateCoeffs::annulus(m, b, n_modes);
                        plus.outer[n - 1] = h * dir.0;
                        plus.inner[n - 1] = h * dir.1;
                        let mut minus = VStateCoeffs::annulus(m, b, n_modes);
                        minus.outer[n - 1] = -h * dir.0;
                        minus.inner[n - 1] = -h * dir.1;
                        let gp = eval_g(lambda, &plus, &grid)?;
                        let gm = eval_g(lambda, &minus, &grid)?;
                        let fd = (
                            (project_modes(&gp.outer, &grid, m, n_modes)?[n - 1]
                                - project_modes(&gm.outer, &grid, m, n_modes)?[n - 1])
                                / (2.0 * h),
                            (project_modes(&gp.inner, &grid, m, n_modes)?[n - 1]
                                - project_modes(&gm.inner, &grid, m, n_modes)?[n - 1])
                                / (2.0 * h),
                        );
                        for (row_idx, (got, want)) in [
                            (fd.0, mat.entries[0][col]),
                            (fd.1, mat.entries[1][col]),
                        ]
                        .into_iter()
                        .enumerate()
                        {
                            let scale = want.abs().max(1e-3);
                            table.rows.push(check_row(
                                format!("linearization m={m} n={n} entry={row_idx}{col}"),
                                got,
                                want,
                                (got - want).abs() / scale,
                                tol,
                            ));
                        }
                    }
                }
            }
        }
        VerifySuite::Hessian => {
            let tol = 1e-3;
            let cfg = AnnulusConfig::new(3, 0.5)?;
            let report = numeric_hessian(&cfg, &grid, 6, 1e-3, 1e-3)?;
            for (entry, numeric, closed, rel) in [
                ("d_ll", report.d_ll, report.closed.d_ll, report.rel_err.0),
                ("d_tl", report.d_tl, report.closed.d_tl, report.rel_err.1),
                ("d_tt", report.d_tt, report.closed.d_tt, report.rel_err.2),
            ] {
                table.rows.push(check_row(
                    format!("hessian m=3 b=0.5 {entry}"),
                    numeric,
                    closed,
                    rel,
                    tol,
                ));
            }
        }
        VerifySuite::Vtilde => {
            let cfg3 = AnnulusConfig::new(3, 0.5)?;
            let numeric3 = complement_curvature(&cfg3, &grid, 6, 4e-3)?;
            let closed3 = vtilde(3, 0.5).components;
            for (label, got, want) in [
                ("outer", numeric3.0, closed3.0),
                ("inner", numeric3.1, closed3.1),
            ] {
                table.rows.push(check_row(
                    format!("vtilde m=3 b=0.5 {label}"),
                    got,
                    want,
                    (got - want).abs() / want.abs(),
                    1e-3,
                ));
            }
            let cfg2 = AnnulusConfig::new(2, 0.4)?;
            let numeric2 = complement_curvature(&cfg2, &grid, 6, 4e-3)?;
            for (label, got) in [("outer", numeric2.0), ("inner", numeric2.1)] {
                table.rows.push(check_row(
                    format!("vtilde m=2 b=0.4 {label}"),
                    got,
                    0.0,
                    got.abs(),
                    1e-6,
                ));
            }
        }
    }
    let all_pass = table
        .rows
        .iter()
        .all(|row| row.last() == Some(&CellValue::Bool(true)));
    Ok((table, all_pass))
}

/// No-bifurcation certificate at (m, b_m): a single-row table carrying the
/// convexity witness and the collapse-probe outcome, plus a `pass` verdict.
pub fn cmd_scan(m: usize, radius: f64, grid_n: usize) -> Result<(Table, bool)> {
    let report = no_bifurcation_scan(m, radius, grid_n)?;
    let pass = report.witness_holds && report.nontrivial_found == 0;
    let mut table = Table::new(
        vec![("kind", CellValue::Text("scan".into()))],
        &[
            "m",
            "b",
            "lambda_m",
            "radius",
            "grid_n",
            "samples",
            "excluded",
            "min_ratio",
            "half_min_eigenvalue",
            "rayleigh_rel_dev",
            "witness_holds",
            "collapse_probes",
            "max_collapse_amplitude",
            "nontrivial_found",
            "pass",
        ],
    );
    table.rows.push(vec![
        CellValue::Int(report.m as i64),
        CellValue::Float(report.b),
        CellValue::Float(report.lambda_m),
        CellValue::Float(report.radius),
        CellValue::Int(report.grid_n as i64),
        CellValue::Int(report.samples as i64),
        CellValue::Int(report.excluded as i64),
        CellValue::Float(report.min_ratio),
        CellValue::Float(report.half_min_eigenvalue),
        CellValue::Float(report.rayleigh_rel_dev),
        CellValue::Bool(report.witness_holds),
        CellValue::Int(report.collapse_probes as i64),
        CellValue::Float(report.max_collapse_amplitude),
        CellValue::Int(report.nontrivial_found as i64),
        CellValue::Bool(pass),
    ]);
    Ok((table, pass))
}

/// Branch construction selector for [`cmd_branch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// Simple-eigenvalue branch at non-degenerate (m, b).
    Pitchfork,
    /// The m = 2 curve crossing the annulus at λ₂ with slope ±(1−b²)/2.
    Transcritical,
}

/// Trace a branch. `t0` is the seed amplitude for the pitchfork kind
/// (zero yields the trivial branch: the annulus marched in λ); the
/// transcritical seed amplitude is fixed internally.
pub fn cmd_branch(
    kind: BranchKind,
    sign: RootSign,
    m: usize,
    b: f64,
    t0: f64,
    steps: usize,
) -> Result<Branch> {
    match kind {
        BranchKind::Pitchfork => branch_from_eigenvalue(m, b, sign, t0, steps),
        BranchKind::Transcritical => {
            if m != 2 {
                return Err(Error::InvalidInput(format!(
                    "transcritical branches exist in the m = 2 class, got m = {m}"
                )));
            }
            branch_transcritical(b, sign, steps)
        }
    }
}

fn sign_name(sign: RootSign) -> &'static str {
    match sign {
        RootSign::Plus => "plus",
        RootSign::Minus => "minus",
    }
}

fn termination_name(t: TerminationReason) -> &'static str {
    match t {
        TerminationReason::StepBudget => "step_budget",
        TerminationReason::SeparationViolation => "separation_violation",
        TerminationReason::CorrectorFailure => "corrector_failure",
    }
}

fn branch_n_modes(branch: &Branch) -> usize {
    branch
        .points
        .first()
        .map(|p| p.coeffs.n_modes())
        .unwrap_or(0)
}

/// Full branch record: one row per point, columns
/// (arclength, lambda, omega, a11, a21, residual, a12, a22, ...) with the
/// higher coefficient pairs in mode order.
pub fn branch_table(branch: &Branch) -> Table {
    let n_modes = branch_n_modes(branch);
    let mut columns: Vec<String> = ["arclength", "lambda", "omega", "a11", "a21", "residual"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for n in 2..=n_modes {
        columns.push(format!("a1{n}"));
        columns.push(format!("a2{n}"));
    }
    let mut table = Table {
        meta: vec![
            ("kind".into(), CellValue::Text("branch".into())),
            ("m".into(), CellValue::Int(branch.origin.m as i64)),
            ("b".into(), CellValue::Float(branch.origin.b)),
            (
                "lambda_onset".into(),
                CellValue::Float(branch.origin.lambda_onset),
            ),
            (
                "sign".into(),
                CellValue::Text(sign_name(branch.origin.sign).into()),
            ),
            (
                "termination".into(),
                CellValue::Text(termination_name(branch.termination).into()),
            ),
            ("n_modes".into(), CellValue::Int(n_modes as i64)),
        ],
        columns,
        rows: Vec::new(),
    };
    for p in &branch.points {
        let mut row = vec![
            CellValue::Float(p.arclength),
            CellValue::Float(p.lambda),
            CellValue::Float(p.omega),
            CellValue::Float(p.a11),
            CellValue::Float(p.a21),
            CellValue::Float(p.residual),
        ];
        for n in 2..=n_modes {
            row.push(CellValue::Float(p.coeffs.outer[n - 1]));
            row.push(CellValue::Float(p.coeffs.inner[n - 1]));
        }
        table.rows.push(row);
    }
    table
}

/// Plot-ready diagram: (omega, a11, a21) per point in branch order.
pub fn diagram_table(branch: &Branch) -> Result<Table> {
    let rows = emit_diagram(branch)?;
    let mut table = Table::new(
        vec![
            ("kind", CellValue::Text("diagram".into())),
            ("m", CellValue::Int(branch.origin.m as i64)),
            ("b", CellValue::Float(branch.origin.b)),
            (
                "lambda_onset",
                CellValue::Float(branch.origin.lambda_onset),
            ),
        ],
        &["omega", "a11", "a21"],
    );
    for (omega, a11, a21) in rows {
        table.rows.push(vec![
            CellValue::Float(omega),
            CellValue::Float(a11),
            CellValue::Float(a21),
        ]);
    }
    Ok(table)
}

/// Serialize a branch to the `{meta, rows}` JSON document.
pub fn write_branch_json(branch: &Branch) -> String {
    branch_table(branch).to_json()
}

fn json_f64(v: &serde_json::Value, key: &str) -> Result<f64> {
    v.get(key)
        .and_then(serde_json::Value::as_f64)
        .ok_or_else(|| Error::InvalidInput(format!("branch json: missing number '{key}'")))
}

fn json_usize(v: &serde_json::Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(serde_json::Value::as_u64)
        .map(|u| u as usize)
        .ok_or_else(|| Error::InvalidInput(format!("branch json: missing integer '{key}'")))
}

fn json_str<'a>(v: &'a serde_json::Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(serde_json::Value::as_str)
        .ok_or_else(|| Error::InvalidInput(format!("branch json: missing string '{key}'")))
}

/// Parse a branch back from [`write_branch_json`] output. Exact inverse:
/// the serialized digits reconstruct every float bit for bit.
pub fn read_branch_json(text: &str) -> Result<Branch> {
    let doc: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("branch json: {e}")))?;
    let meta = doc
        .get("meta")
        .ok_or_else(|| Error::InvalidInput("branch json: missing 'meta'".into()))?;
    if json_str(meta, "kind")? != "branch" {
        return Err(Error::InvalidInput(
            "branch json: 'kind' is not 'branch'".into(),
        ));
    }
    let m = json_usize(meta, "m")?;
    let b = json_f64(meta, "b")?;
    let n_modes = json_usize(meta, "n_modes")?;
    let sign = match json_str(meta, "sign")? {
        "plus" => RootSign::Plus,
        "minus" => RootSign::Minus,
        other => {
            return Err(Error::InvalidInput(format!(
                "branch json: unknown sign '{other}'"
            )))
        }
    };
    let termination = match json_str(meta, "termination")? {
        "step_budget" => TerminationReason::StepBudget,
        "separation_violation" => TerminationReason::SeparationViolation,
        "corrector_failure" => TerminationReason::CorrectorFailure,
        other => {
            return Err(Error::InvalidInput(format!(
                "branch json: unknown termination '{other}'"
            )))
        }
    };
    let origin = BranchOrigin {
        m,
        b,
        lambda_onset: json_f64(meta, "lambda_onset")?,
        sign,
    };
    let rows = doc
        .get("rows")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| Error::InvalidInput("branch json: missing 'rows'".into()))?;
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        let mut coeffs = VStateCoeffs::annulus(m, b, n_modes.max(1));
        coeffs.outer[0] = json_f64(row, "a11")?;
        coeffs.inner[0] = json_f64(row, "a21")?;
        for n in 2..=n_modes {
            coeffs.outer[n - 1] = json_f64(row, &format!("a1{n}"))?;
            coeffs.inner[n - 1] = json_f64(row, &format!("a2{n}"))?;
        }
        points.push(BranchPoint {
            a11: coeffs.outer[0],
            a21: coeffs.inner[0],
            coeffs,
            lambda: json_f64(row, "lambda")?,
            omega: json_f64(row, "omega")?,
            arclength: json_f64(row, "arclength")?,
            residual: json_f64(row, "residual")?,
        });
    }
    Ok(Branch {
        origin,
        points,
        termination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_merges_roots_at_degenerate_radius() {
        let table = cmd_spectrum(0.5, 4).unwrap();
        assert_eq!(table.rows.len(), 4);
        // n = 1: roots {b², 1}
        assert_eq!(table.rows[0][2], CellValue::Float(0.25));
        assert_eq!(table.rows[0][3], CellValue::Float(1.0));
        // n = 2: always the double root (1+b²)/2
        assert_eq!(table.rows[1][2], CellValue::Float(0.625));
        assert_eq!(table.rows[1][3], CellValue::Float(0.625));
        // n = 3 at b₃ = 1/2: merged value 0.625
        assert_eq!(table.rows[2][2], CellValue::Float(0.625));
        assert_eq!(table.rows[2][3], CellValue::Float(0.625));
    }

    #[test]
    fn spectrum_blanks_modes_without_eigenvalues() {
        let table = cmd_spectrum(0.6, 3).unwrap();
        let delta = match table.rows[2][1] {
            CellValue::Float(d) => d,
            _ => panic!("delta cell"),
        };
        assert!(delta < 0.0);
        assert_eq!(table.rows[2][2], CellValue::Blank);
        assert_eq!(table.rows[2][3], CellValue::Blank);
    }

    #[test]
    fn roots_table_reports_known_radii() {
        let table = cmd_roots(None, 4, 1e-13).unwrap();
        assert_eq!(table.rows.len(), 2);
        match (&table.rows[0][1], &table.rows[1][1]) {
            (CellValue::Float(b3), CellValue::Float(b4)) => {
                assert!((b3 - 0.5).abs() < 1e-12);
                assert!((b4 - (2.0f64.sqrt() - 1.0).sqrt()).abs() < 1e-12);
            }
            _ => panic!("radius cells"),
        }
    }

    #[test]
    fn csv_rendering_is_frozen() {
        let mut table = Table::new(
            vec![("kind", CellValue::Text("test".into()))],
            &["n", "lambda", "gap"],
        );
        table.rows.push(vec![
            CellValue::Int(2),
            CellValue::Float(0.625),
            CellValue::Blank,
        ]);
        table.rows.push(vec![
            CellValue::Int(3),
            CellValue::Float(-1.0 / 3.0),
            CellValue::Bool(true),
        ]);
        assert_eq!(
            table.to_csv(),
            "n,lambda,gap\n2,6.2500000000000000e-1,\n3,-3.3333333333333331e-1,true\n"
        );
    }

    #[test]
    fn json_rendering_is_frozen() {
        let mut table = Table::new(
            vec![
                ("kind", CellValue::Text("test".into())),
                ("m", CellValue::Int(3)),
            ],
            &["x", "note"],
        );
        table
            .rows
            .push(vec![CellValue::Float(0.5), CellValue::Blank]);
        assert_eq!(
            table.to_json(),
            "{\n  \"meta\": {\"kind\": \"test\", \"m\": 3},\n  \"rows\": [\n    {\"x\": 5.0000000000000000e-1, \"note\": null}\n  ]\n}\n"
        );
    }

    #[test]
    fn float_formatting_round_trips_exactly() {
        for x in [
            0.1,
            -0.3333333333333333,
            1.0 / 7.0,
            6.302e-6,
            f64::MIN_POSITIVE,
            1.7976931348623157e308,
            0.0,
        ] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn branch_json_round_trip_is_exact() {
        let branch = cmd_branch(BranchKind::Pitchfork, RootSign::Plus, 3, 0.4, 2.5e-4, 3).unwrap();
        let text = write_branch_json(&branch);
        let parsed = read_branch_json(&text).unwrap();
        assert_eq!(branch, parsed);
        assert_eq!(write_branch_json(&parsed), text);
    }

    #[test]
    fn trivial_branch_has_zero_amplitude_columns() {
        let branch = cmd_branch(BranchKind::Pitchfork, RootSign::Plus, 3, 0.4, 0.0, 5).unwrap();
        assert_eq!(branch.points.len(), 5);
        for p in &branch.points {
            assert_eq!(p.a11, 0.0);
            assert_eq!(p.a21, 0.0);
            assert!(p.coeffs.outer.iter().all(|&c| c == 0.0));
            assert!(p.coeffs.inner.iter().all(|&c| c == 0.0));
            assert!(p.residual < 1e-12);
        }
        let table = branch_table(&branch);
        assert_eq!(table.columns[..6].join(","), "arclength,lambda,omega,a11,a21,residual");
    }

    #[test]
    fn branch_rejects_transcritical_off_m2() {
        assert!(cmd_branch(BranchKind::Transcritical, RootSign::Plus, 3, 0.4, 1e-3, 8).is_err());
    }

    #[test]
    fn verify_residues_suite_passes() {
        let (table, all_pass) = cmd_verify(VerifySuite::Residues).unwrap();
        assert_eq!(table.rows.len(), 90);
        assert!(all_pass);
    }

    #[test]
    fn verify_linearization_suite_passes() {
        let (table, all_pass) = cmd_verify(VerifySuite::Linearization).unwrap();
        assert_eq!(table.rows.len(), 32);
        assert!(all_pass);
    }

    #[test]
    fn hessian_command_defaults_to_degenerate_radius() {
        let table = cmd_hessian(3, None, 256, 6).unwrap();
        assert_eq!(table.rows.len(), 5);
        for row in &table.rows[2..] {
            match (&row[0], &row[3]) {
                (CellValue::Text(_), CellValue::Float(rel)) => assert!(*rel < 1e-3),
                _ => panic!("row shape"),
            }
        }
        assert!(cmd_hessian(2, None, 256, 6).is_err());
    }

    #[test]
    fn scan_command_reports_pass_verdict() {
        let (table, pass) = cmd_scan(3, 5e-3, 3).unwrap();
        assert!(pass);
        assert_eq!(table.rows[0].last(), Some(&CellValue::Bool(true)));
        assert!(cmd_scan(2, 5e-3, 9).is_err());
    }
}
