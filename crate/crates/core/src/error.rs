use thiserror::Error;

/// Errors raised by the kernel, the parser and the orbit/oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("overflow: result is outside the finite binary64 range")]
    Overflow,
    #[error("invalid operand: NaN or infinity")]
    Invalid,
    #[error("division by zero")]
    DivByZero,
    #[error("residual underflow: exact product residual is not representable")]
    ResidualUnderflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("orbit left the finite range at index {index}")]
    NonfiniteOrbit { index: usize },
    #[error("exact orbit length {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("length mismatch: pseudo-orbit has {pseudo} values, exact orbit has {exact}")]
    LengthMismatch { pseudo: usize, exact: usize },
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Stable short identifier, used in diagnostics and by the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Overflow => "overflow",
            Error::Invalid => "invalid",
            Error::DivByZero => "div_by_zero",
            Error::ResidualUnderflow => "residual_underflow",
            Error::Parse(_) => "parse_error",
            Error::NonfiniteOrbit { .. } => "nonfinite_orbit",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::Config(_) => "config_error",
        }
    }

    /// True for errors caused by bad input or configuration rather than
    /// by the arithmetic itself.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Config(_) | Error::CapExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
