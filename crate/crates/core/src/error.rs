use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("glue conflict: {0}")]
    GlueConflict(String),
    #[error("irregular collapse: {0}")]
    IrregularCollapse(String),
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error("certification failed: {0}")]
    CertifyFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
