use thiserror::Error;

use crate::hemiring::AxiomReport;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Table data or a file could not be interpreted.
    #[error("input error: {0}")]
    Input(String),
    /// The tables are well-formed but do not define a hemiring.
    #[error("tables violate the hemiring axioms ({} violation(s))", .0.violations.len())]
    NotAHemiring(Box<AxiomReport>),
    /// An operation was called outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured enumeration cap or budget would be exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Two values built over different hemirings (or grids) were combined.
    #[error("parent mismatch: {0}")]
    ParentMismatch(String),
    #[error("unknown statement id `{0}`")]
    UnknownStatement(String),
    /// Primeness verdicts are only defined for non-constant fuzzy h-ideals.
    #[error("non-constant required")]
    NonConstantRequired,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A copy for errors cached behind shared references.
    pub(crate) fn duplicate(&self) -> Error {
        match self {
            Error::Input(s) => Error::Input(s.clone()),
            Error::NotAHemiring(r) => Error::NotAHemiring(r.clone()),
            Error::Domain(s) => Error::Domain(s.clone()),
            Error::Capacity(s) => Error::Capacity(s.clone()),
            Error::ParentMismatch(s) => Error::ParentMismatch(s.clone()),
            Error::UnknownStatement(s) => Error::UnknownStatement(s.clone()),
            Error::NonConstantRequired => Error::NonConstantRequired,
            Error::Io(e) => Error::Input(e.to_string()),
            Error::Json(e) => Error::Input(e.to_string()),
        }
    }
}
