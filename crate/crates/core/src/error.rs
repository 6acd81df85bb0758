use thiserror::Error;

/// Errors raised by the simulator and estimators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    /// A rate, residual or integral left the finite reals.
    #[error("numeric fault: {message}\n{dump}")]
    NumericFault { message: String, dump: String },

    /// A user-supplied interaction function broke its declared bounds.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn numeric(message: impl Into<String>, dump: impl Into<String>) -> Self {
        Error::NumericFault {
            message: message.into(),
            dump: dump.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
