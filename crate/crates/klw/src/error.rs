use thiserror::Error;

/// Library error type.
///
/// The CLI maps variants to process exit codes: `Usage` to 2, `Capacity`
/// to 3, `Format` and `Io` to 4. Verification failures are not errors;
/// they are reported in the result payload.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("capacity: group order {order} exceeds the configured bound {bound}")]
    Capacity { order: u128, bound: u64 },
    #[error("format: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
