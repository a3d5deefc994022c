use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("site {site} out of range for a layout with {len} factors")]
    SiteOutOfRange { site: usize, len: usize },

    #[error("operands live on different Hilbert-space layouts")]
    LayoutMismatch,

    #[error("partial trace needs at least one subsystem to keep")]
    EmptyKeepSet,

    #[error("invalid subsystem index {0}")]
    InvalidSubsystem(usize),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("operator is not Hermitian (max |H - H^dagger| = {0:.3e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("the cavity dispersion is only defined for a periodic ring")]
    OpenBoundaryDispersion,

    #[error("mode k = {k:.6} is resonant with the drive (delta_k = 0); adiabatic elimination is invalid")]
    ResonantMode { k: f64 },

    #[error("imaginary part of the coupling sum is {0:.3e}")]
    ComplexCoupling(f64),

    #[error("J_z fit residual {residual:.3e} rad exceeds {threshold:.3e} rad; the dispersive regime does not hold")]
    FitResidual { residual: f64, threshold: f64 },

    #[error("norm drifted to {norm} at t = {time} ns")]
    NormDrift { norm: f64, time: f64 },

    #[error("time grids differ")]
    GridMismatch,

    #[error("invalid evolution spec: {0}")]
    InvalidEvolution(String),

    #[error("unknown or malformed channel '{0}'")]
    UnknownChannel(String),

    #[error("channel '{0}' not present in the time series")]
    MissingChannel(String),

    #[error("Fock cutoff n_max = {n_max} not converged: raising it by 2 changed '{channel}' by {change:.3e} (limit {limit:.1e})")]
    Convergence {
        n_max: usize,
        channel: String,
        change: f64,
        limit: f64,
    },

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("expected a {expected}-qubit state, got {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::Json(_)
            | Error::InvalidParams(_)
            | Error::UnknownChannel(_)
            | Error::InvalidEvolution(_)
            | Error::OpenBoundaryDispersion
            | Error::Io { .. } => 2,
            Error::SizeLimit(_) => 4,
            Error::ResonantMode { .. }
            | Error::ComplexCoupling(_)
            | Error::FitResidual { .. }
            | Error::Convergence { .. }
            | Error::NormDrift { .. } => 3,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
