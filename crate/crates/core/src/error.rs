use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("composite of maps is nonzero: {0}")]
    NonzeroComposite(String),

    #[error("expected a relation-free group: {0}")]
    NotFree(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("out of supported range: {0}")]
    OutOfRange(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("rule table does not match computation: {0}")]
    RuleMismatch(String),

    #[error("differential d{page} from ({s},{t}) at n={n} is not determined by the rule table")]
    UndeterminedDifferential { n: u32, page: u32, s: u32, t: u32 },

    #[error("verification failed: {check} at n={n}: {detail}")]
    Verification { n: u32, check: String, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn verification(n: u32, check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            n,
            check: check.into(),
            detail: detail.into(),
        }
    }
}
