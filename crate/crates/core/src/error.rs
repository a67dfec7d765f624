use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("coefficient {0} is not an element of {1}")]
    NotInRing(String, String),
    #[error("expected a degree-zero element, got {0}")]
    NotDegreeZero(String),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid form size: {0}")]
    InvalidForm(String),
    #[error("matrix size {n} below the minimum {min} for the {case} case")]
    SizeBelowMinimum { case: String, n: usize, min: usize },
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("determinant is not 1: {0}")]
    DeterminantNotOne(String),
    #[error("matrix is not congruent to the identity modulo the positive part")]
    NotInCongruenceSubgroup,
    #[error("orthogonality violated: <v, w> = {0}")]
    OrthogonalityViolation(String),
    #[error("I + M(v, w) is not in the group: {0}")]
    TransvectionNotInGroup(String),
    #[error("word does not evaluate to the expected matrix: {0}")]
    WordMismatch(String),
    #[error("invalid localization element: {0}")]
    BadLocalization(String),
    #[error("denominators not cleared: {0}")]
    DenominatorNotCleared(String),
    #[error("elements are not comaximal: gcd = {0}")]
    NotComaximal(String),
    #[error("row is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("local data does not re-evaluate: {0}")]
    BadLocalData(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Variant name, for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "RingMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::NotInRing(..) => "NotInRing",
            Error::NotDegreeZero(_) => "NotDegreeZero",
            Error::IndexOutOfRange(..) => "IndexOutOfRange",
            Error::InvalidGenerator(_) => "InvalidGenerator",
            Error::InvalidForm(_) => "InvalidForm",
            Error::SizeBelowMinimum { .. } => "SizeBelowMinimum",
            Error::NotInvertible(_) => "NotInvertible",
            Error::DeterminantNotOne(_) => "DeterminantNotOne",
            Error::NotInCongruenceSubgroup => "NotInCongruenceSubgroup",
            Error::OrthogonalityViolation(_) => "OrthogonalityViolation",
            Error::TransvectionNotInGroup(_) => "TransvectionNotInGroup",
            Error::WordMismatch(_) => "WordMismatch",
            Error::BadLocalization(_) => "BadLocalization",
            Error::DenominatorNotCleared(_) => "DenominatorNotCleared",
            Error::NotComaximal(_) => "NotComaximal",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::BadLocalData(_) => "BadLocalData",
            Error::Parse { .. } => "Parse",
            Error::Malformed(_) => "Malformed",
            Error::Internal(_) => "Internal",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
