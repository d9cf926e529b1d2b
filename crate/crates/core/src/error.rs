use alloc::string::String;
use core::fmt;

/// Errors raised by ring arithmetic, code construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `q` outside `1..=Q_MAX`.
    RingOutOfRange { q: u32 },
    /// The homogeneous-weight scale must be strictly positive.
    NonPositiveGamma,
    /// Two operands live in different rings.
    RingMismatch { left: u32, right: u32 },
    /// The projection `R_q -> R_{q-1}` needs `q >= 2`.
    NoProjection,
    /// Malformed element, matrix or parameter text.
    Parse(String),
    /// Shapes that do not fit together.
    Dimension(String),
    /// Construction parameters outside their documented range.
    InvalidParameter(String),
    /// An exhaustive operation would exceed its configured guard.
    ResourceLimit { what: &'static str, needed: u128, limit: u128 },
    /// A builder produced a matrix that violates its own counting invariant.
    ConstructionDefect(String),
}

impl Error {
    /// True for the errors caused by a size guard rather than by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingOutOfRange { q } => {
                write!(f, "q = {q} is outside the supported range 1..={}", crate::Q_MAX)
            }
            Error::NonPositiveGamma => write!(f, "gamma must be positive"),
            Error::RingMismatch { left, right } => {
                write!(f, "operands belong to different rings (q = {left} and q = {right})")
            }
            Error::NoProjection => write!(f, "projection is only defined for q >= 2"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Dimension(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::ResourceLimit { what, needed, limit } => {
                write!(f, "{what} needs {needed}, above the limit of {limit}")
            }
            Error::ConstructionDefect(msg) => write!(f, "construction defect: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
