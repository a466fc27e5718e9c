use std::path::PathBuf;

/// Errors produced by the solver, the experiment harness and the CLI front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected:?}, got {got:?}")]
    Dimension {
        op: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("{op}: rank {rank} out of range for a {rows}x{cols} matrix")]
    RankOutOfRange {
        op: &'static str,
        rank: usize,
        rows: usize,
        cols: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown nonlinearity `{0}`")]
    UnknownNonlinearity(String),

    #[error("reference field has zero norm")]
    ZeroReference,

    #[error("time {0} is not a point of the time grid")]
    TimeNotOnGrid(f64),

    #[error("solution blew up at step {step} (t = {time}): non-finite values")]
    BlowUp { step: usize, time: f64 },

    #[error("config parse error at line {line}, column {column}: {message}")]
    ConfigParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid config: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::RankOutOfRange { .. } => "rank",
            Error::NonFinite { .. } => "non_finite",
            Error::InvalidParameter(_) | Error::Validation(_) => "validation",
            Error::UnknownPreset(_) => "unknown_preset",
            Error::UnknownNonlinearity(_) => "unknown_nonlinearity",
            Error::ZeroReference => "zero_reference",
            Error::TimeNotOnGrid(_) => "time_not_on_grid",
            Error::BlowUp { .. } => "blowup",
            Error::ConfigParse { .. } => "config_parse",
            Error::Io { .. } => "io",
        }
    }

    /// True for failures caused by the numerics rather than by the input.
    pub fn is_blow_up(&self) -> bool {
        matches!(self, Error::BlowUp { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
