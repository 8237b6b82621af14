//! Error types shared across the crate.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("control value {sigma} outside admissible range [0, {sigma0}]")]
    InvalidControl { sigma: f64, sigma0: f64 },

    #[error("state (x={x}, y={y}) outside the simplex by more than {tol:e}")]
    OutsideDomain { x: f64, y: f64, tol: f64 },

    #[error("integration step left the simplex at t={t} (x={x}, y={y}); reduce dt")]
    StepRejected { t: f64, x: f64, y: f64 },

    #[error("Lambert W0 argument {z} lies below the branch point -1/e")]
    LambertDomain { z: f64 },

    #[error("gradient singular near the herd-immunity corner: 1 - sigma0*x_inf = {denom:e}")]
    HerdImmunitySingularity { denom: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no convergence after {iterations} iterations (last residual {last_residual:e})")]
    NonConvergence {
        iterations: usize,
        last_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("dt = {dt} violates the CFL bound {dt_max}")]
    CflViolation { dt: f64, dt_max: f64 },

    #[error("state (x={x}, y={y}) left the policy grid; enlarge the grid domain")]
    OutsideGrid { x: f64, y: f64 },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("invalid scenario: {0}")]
    Validation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 1 validation, 2 non-convergence, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::NonConvergence { .. } => 2,
            Error::Io { .. } => 3,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
