use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("not evaluable at ell={ell}: {context}")]
    NotEvaluable { ell: u32, context: String },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parity error: {0}")]
    ParityError(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a minimal idempotent: {0}")]
    NotMinimal(String),
    #[error("diagram is critical: {0}")]
    CriticalDiagram(String),
    #[error("no reflection partner: {0}")]
    NoPartner(String),
    #[error("ideal span not stabilized: {0}")]
    NotStabilized(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable name, used in error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::BadParameter(_) => "BadParameter",
            Error::NotEvaluable { .. } => "NotEvaluable",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::RingMismatch(_) => "RingMismatch",
            Error::ParityError(_) => "ParityError",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotMinimal(_) => "NotMinimal",
            Error::CriticalDiagram(_) => "CriticalDiagram",
            Error::NoPartner(_) => "NoPartner",
            Error::NotStabilized(_) => "NotStabilized",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
