use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A terminal sits in or behind the RIS plane.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Input lies outside the cos^2q element pattern family.
    #[error("outside model domain: {0}")]
    ModelDomain(String),

    #[error("divergent result: {0}")]
    Divergence(String),

    #[error("config error at `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("element budget exceeded: {requested} elements per side requested, cap is {cap}")]
    ResourceCap { requested: usize, cap: usize },

    #[error("numerical self-check failed: {0}")]
    SelfCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            Error::ResourceCap { .. } => 3,
            Error::SelfCheck(_) => 4,
            _ => 1,
        }
    }
}
