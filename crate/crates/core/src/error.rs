use thiserror::Error;

/// Errors raised by every operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("time values must be nonnegative, got {0}")]
    NegativeTime(String),

    #[error("b must be ≥ 2, got {0}")]
    BoundTooSmall(u64),

    #[error("window must be positive, got {0}")]
    NonPositiveWindow(String),

    #[error("instance must contain at least one job")]
    EmptyInstance,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("inconsistent trace: {0}")]
    InconsistentTrace(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("instance has {n} jobs, exceeding the exact-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid partition instance: {0}")]
    InvalidPartition(String),

    #[error("odd total sum {0}: no equal-sum split exists")]
    OddSum(u64),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("trace makespan {makespan} differs from threshold {threshold}")]
    ThresholdMismatch { makespan: String, threshold: String },

    #[error("partition extraction failed: {0}")]
    ExtractionFailed(String),

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(String),

    #[error("the approximation scheme requires window = 1, got {0}")]
    WindowNotUnit(String),

    #[error("instance has {n} jobs but at least b = {b} are required")]
    TooFewJobs { n: usize, b: usize },

    #[error("internal DP inconsistency: {0}")]
    DpInternal(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {message}")]
    Format { path: String, message: String },

    #[error("bench assertion failed for `{id}`: {message}")]
    BenchAssertion { id: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn format(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable tag used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidRational(_) => "invalid_rational",
            Error::NegativeTime(_) => "negative_time",
            Error::BoundTooSmall(_) => "bound_too_small",
            Error::NonPositiveWindow(_) => "non_positive_window",
            Error::EmptyInstance => "empty_instance",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::InconsistentTrace(_) => "inconsistent_trace",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::OddSum(_) => "odd_sum",
            Error::InvalidSplit(_) => "invalid_split",
            Error::ThresholdMismatch { .. } => "threshold_mismatch",
            Error::ExtractionFailed(_) => "extraction_failed",
            Error::InvalidEpsilon(_) => "invalid_epsilon",
            Error::WindowNotUnit(_) => "window_not_unit",
            Error::TooFewJobs { .. } => "too_few_jobs",
            Error::DpInternal(_) => "dp_internal",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Format { .. } => "format",
            Error::BenchAssertion { .. } => "bench_assertion",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
