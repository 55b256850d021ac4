//! Error type shared by all modules.

/// Errors produced by the numerical layers.
///
/// Geometry violations ([`Error::SeparationViolation`]) and solver failures
/// ([`Error::NoConvergence`]) are ordinary outcomes near the edge of the
/// contraction neighborhood; callers such as the continuation driver catch
/// them and shrink steps rather than abort.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A parameter violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The inner curve came too close to the outer one; quadrature error
    /// bounds for the cross-boundary integrals no longer hold.
    #[error(
        "curve separation violated: min|phi1| - max|phi2| = {gap:.3e} <= required {required:.3e}"
    )]
    SeparationViolation { gap: f64, required: f64 },

    /// The quadrature grid cannot resolve the requested mode content.
    #[error("aliasing risk: grid has {nodes} nodes < 4*N*m = {required}")]
    AliasingRisk { nodes: usize, required: usize },

    /// Newton iteration exceeded its cap without meeting the residual
    /// tolerance.
    #[error("no convergence after {iters} iterations (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },

    /// The corrector diverged on the very first branch point.
    #[error("branch seeding failed: {0}")]
    SeedFailure(String),

    /// Reading or writing an artifact file failed.
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
