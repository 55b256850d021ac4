//! Command-line interface for the V-state toolbox.
//!
//! Subcommands mirror the library surface: `spectrum` and `roots` tabulate
//! the linear theory, `verify` runs the oracle suites, `hessian` and
//! `scan` drive the reduced bifurcation equation, `branch` traces solution
//! curves, and `diagram` re-emits plot data from a saved branch. Exit
//! status: 0 on success, 1 when a verification or scan verdict fails,
//! 2 on configuration or runtime errors.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use vstates::cli_io::{self, BranchKind, OutputFormat, Table, VerifySuite};
use vstates::continuation::{RootSign, DEFAULT_STEP_BUDGET};

#[derive(Parser)]
#[command(
    name = "vstates",
    version,
    about = "Rotating doubly-connected V-states: spectra, reduced bifurcation equation, branch continuation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for RootSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => RootSign::Plus,
            SignArg::Minus => RootSign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Pitchfork,
    Transcritical,
}

impl From<KindArg> for BranchKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Pitchfork => BranchKind::Pitchfork,
            KindArg::Transcritical => BranchKind::Transcritical,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Residues,
    Linearization,
    Hessian,
    Vtilde,
}

impl From<SuiteArg> for VerifySuite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Residues => VerifySuite::Residues,
            SuiteArg::Linearization => VerifySuite::Linearization,
            SuiteArg::Hessian => VerifySuite::Hessian,
            SuiteArg::Vtilde => VerifySuite::Vtilde,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminants and eigenvalue pairs for harmonics n = 1..=N
    Spectrum {
        /// Inner radius of the annulus, 0 < b < 1
        #[arg(long)]
        b: f64,
        /// Highest harmonic to tabulate
        #[arg(long, default_value_t = 8)]
        modes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Degenerate radii b_m where the two mode-m eigenvalues merge
    Roots {
        /// Single symmetry class (m >= 3); omit for a table over 3..=N
        #[arg(long)]
        m: Option<usize>,
        /// Table upper bound when --m is omitted
        #[arg(long, default_value_t = 8)]
        modes: usize,
        /// Root residual tolerance
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run an oracle suite; exit status 1 when any check fails
    Verify {
        /// Which suite to run
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reduced Hessian at a degenerate point: numeric stencil vs closed form
    Hessian {
        /// Symmetry class
        #[arg(long)]
        m: usize,
        /// Inner radius; defaults to b_m for m >= 3, required for m = 2
        #[arg(long)]
        b: Option<f64>,
        /// Quadrature nodes per boundary (power of two >= 4)
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Laurent truncation order
        #[arg(long, default_value_t = 6)]
        modes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// No-bifurcation certificate at (m, b_m); exit status 1 on failure
    Scan {
        /// Symmetry class, m >= 3
        #[arg(long)]
        m: usize,
        /// Witness lattice points per axis
        #[arg(long, default_value_t = 9)]
        grid: usize,
        /// Disc radius in the (λ offset, amplitude) plane
        #[arg(default_value_t = 5e-3)]
        radius: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Trace a solution branch and emit it with a plot-ready diagram
    Branch {
        /// Branch construction
        #[arg(value_enum)]
        kind: KindArg,
        /// Eigenvalue / slope-sign selector
        #[arg(value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        /// Seed amplitude for the pitchfork kind (0 traces the trivial
        /// branch); the transcritical seed is fixed internally
        #[arg(default_value_t = 1e-3)]
        t0: f64,
        /// Symmetry class; defaults to 2 for transcritical, required
        /// otherwise
        #[arg(long)]
        m: Option<usize>,
        /// Inner radius of the annulus
        #[arg(long)]
        b: f64,
        /// Accepted-point budget
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        steps: usize,
        /// Main output: json = branch document, csv = full point table
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Output path; a sibling `<stem>.diagram.csv` is written next to it
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit the (omega, a11, a21) diagram from a saved branch document
    Diagram {
        /// Branch JSON produced by `branch`
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(table: &Table, output: &OutputArgs) -> anyhow::Result<()> {
    let text = table.render(output.format.into());
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Spectrum { b, modes, output } => {
            emit(&cli_io::cmd_spectrum(b, modes)?, &output)?;
            Ok(0)
        }
        Command::Roots {
            m,
            modes,
            tol,
            output,
        } => {
            emit(&cli_io::cmd_roots(m, modes, tol)?, &output)?;
            Ok(0)
        }
        Command::Verify { suite, output } => {
            let (table, pass) = cli_io::cmd_verify(suite.into())?;
            emit(&table, &output)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Hessian {
            m,
            b,
            grid,
            modes,
            output,
        } => {
            emit(&cli_io::cmd_hessian(m, b, grid, modes)?, &output)?;
            Ok(0)
        }
        Command::Scan {
            m,
            grid,
            radius,
            output,
        } => {
            let (table, pass) = cli_io::cmd_scan(m, radius, grid)?;
            emit(&table, &output)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Branch {
            kind,
            sign,
            t0,
            m,
            b,
            steps,
            format,
            out,
        } => {
            let m = match (kind, m) {
                (_, Some(m)) => m,
                (KindArg::Transcritical, None) => 2,
                (KindArg::Pitchfork, None) => {
                    anyhow::bail!("pitchfork branches need --m");
                }
            };
            let branch = cli_io::cmd_branch(kind.into(), sign.into(), m, b, t0, steps)?;
            let text = match format {
                FormatArg::Json => cli_io::write_branch_json(&branch),
                FormatArg::Csv => cli_io::branch_table(&branch).to_csv(),
            };
            match &out {
                Some(path) => {
                    std::fs::write(path, text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    let diagram_path = path.with_extension("diagram.csv");
                    std::fs::write(&diagram_path, cli_io::diagram_table(&branch)?.to_csv())
                        .with_context(|| format!("writing {}", diagram_path.display()))?;
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Diagram { input, output } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let branch = cli_io::read_branch_json(&text)?;
            emit(&cli_io::diagram_table(&branch)?, &output)?;
            Ok(0)
        }
    }
}

fn main() {
    let code = match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}
