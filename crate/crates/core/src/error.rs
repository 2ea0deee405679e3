use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("infeasible selection scheme: {0}")]
    Infeasible(String),

    #[error("site {site} out of range for a ground set of {size} sites")]
    SiteOutOfRange { site: usize, size: usize },

    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
