use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring of {size} elements exceeds the size cap of {cap}")]
    SizeCap { size: u128, cap: usize },

    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),

    #[error("infinite ring: {0} requires a finite ring")]
    InfiniteRing(&'static str),

    #[error("elements or ideals from different rings were mixed")]
    CrossRing,

    #[error("invalid element payload {payload}: {reason}")]
    InvalidElement { payload: Value, reason: String },

    #[error("the ideal is not proper")]
    ImproperIdeal,

    #[error("the ideal meets the multiplicative set")]
    MeetsMultiplicativeSet,

    #[error("multiplicative closure reaches zero via the product of {chain:?}")]
    ZeroInClosure { chain: Vec<Value> },

    #[error("not a multiplicative set: {0}")]
    InvalidMultiplicativeSet(String),

    #[error("action map is not a ring homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no element of S saturates every component simultaneously")]
    NoSaturatingElement,

    #[error("post-verification of the minimalized decomposition failed: {0}")]
    PostVerification(String),

    #[error("the family of ideals is empty")]
    EmptyFamily,

    #[error("malformed document: {0}")]
    Document(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Document(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
