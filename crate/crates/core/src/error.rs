use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand dimensions do not line up.
    #[error("shape error: {0}")]
    Shape(String),

    /// Index arithmetic would overflow `usize`.
    #[error("size error: {0}")]
    Size(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// A state with zero norm cannot be turned into a distribution.
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("degenerate config: {0}")]
    DegenerateConfig(String),

    /// Both slit amplitudes vanish at a screen bin, so no conditional
    /// amplitudes exist there.
    #[error("dark bin {0}: both slit amplitudes vanish")]
    DarkBin(usize),

    #[error("value {value} outside histogram span [{lo}, {hi}]")]
    Overflow { value: f64, lo: f64, hi: f64 },

    #[error("degenerate test: {0}")]
    DegenerateTest(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
