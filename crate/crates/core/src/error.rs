use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("rotation pair indices must be distinct (got {0} twice)")]
    DegeneratePair(usize),

    #[error("matrix is not unitary (max |U†U - I| = {0:e})")]
    NotUnitary(f64),

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("line {line}: {message} (token `{token}`)")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    #[error(
        "Fock truncation: amplitude {amplitude:e} reached phonon level {level} (cutoff {cutoff})"
    )]
    Truncation {
        level: usize,
        cutoff: usize,
        amplitude: f64,
    },

    #[error("phonon mode not in ground state before CZ (ground population {ground_population})")]
    PhononPrecondition { ground_population: f64 },

    #[error("pulse {index}: {source}")]
    AtPulse {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("numeric propagation needs {steps} steps (limit {limit})")]
    StepOverflow { steps: u64, limit: u64 },

    #[error("cannot renormalize after projection: probability {0:e}")]
    ZeroProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no shot records to estimate from")]
    NoShots,
}

/// Coarse classification used by the command-line front end for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or violated preconditions on arguments.
    Validation,
    /// The physics went somewhere the model refuses to follow.
    Physics,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Truncation { .. }
            | Error::PhononPrecondition { .. }
            | Error::StepOverflow { .. }
            | Error::ZeroProbability(_) => ErrorKind::Physics,
            Error::AtPulse { source, .. } => source.kind(),
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn at_pulse(self, index: usize) -> Error {
        Error::AtPulse {
            index,
            source: Box::new(self),
        }
    }
}
