use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("element is not parity-homogeneous")]
    Inhomogeneous,
    #[error("generator {0} with series index 0 must be collapsed to a scalar")]
    ZeroIndex(String),
    #[error("element is not in normal form")]
    NotNormal,
    #[error("series mismatch: {0}")]
    Series(String),
    #[error("matrix series is not monic")]
    NotMonic,
    #[error("exponent {0:?} outside cap {1}")]
    OutOfCap(Vec<u8>, u8),
    #[error("series does not vanish on the diagonal; offending total degree {degree}: {coefficient}")]
    NotDivisible { degree: usize, coefficient: String },
    #[error("cap {given} too small; {required} required")]
    CapTooSmall { given: u8, required: u8 },
    #[error("{0}")]
    Domain(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
