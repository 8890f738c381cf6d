use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),

    #[error("invalid homomorphism: {0}")]
    InvalidMorphism(String),

    #[error("composition is not zero: {0}")]
    NonzeroComposition(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("dimension inconsistency: {0}")]
    Dimension(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("unknown map `{0}`")]
    UnknownMap(String),

    #[error("missing realization data for atom `{atom}`: {what}")]
    MissingData { atom: String, what: String },

    #[error("invalid atom record `{atom}`: {reason}")]
    InvalidAtom { atom: String, reason: String },

    #[error("validation failure: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Parse errors are reported separately from validation failures by the
    /// command-line front end.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
