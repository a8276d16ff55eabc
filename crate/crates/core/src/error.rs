use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid Grassmannian: {0}")]
    InvalidSpec(String),

    #[error("subspaces belong to different Grassmannians")]
    SpecMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence: {what} (estimate {estimate:e}, error {error:e}, tolerance {tolerance:e})")]
    Convergence {
        what: &'static str,
        estimate: f64,
        error: f64,
        tolerance: f64,
    },

    #[error("Gram matrix is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("frame is rank deficient")]
    RankDeficient,
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
