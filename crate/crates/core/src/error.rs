use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} and {1})")]
    MixedFields(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("reduction polynomial is reducible")]
    Reducible,
    #[error("invalid field descriptor `{0}`")]
    InvalidDescriptor(String),
    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),
    #[error("operation requires a finite field")]
    InfiniteField,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unsupported or malformed type `{0}`")]
    UnknownType(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("automorphism is not admissible: {0}")]
    NotAdmissible(String),
    #[error("vector is not a root of {0}")]
    NotARoot(String),
    #[error("root index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("{0} exceeds the enumeration limit")]
    TooLarge(String),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{0} is not a vertex of the section")]
    NotInSection(String),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("objects are not comparable: {0}")]
    Incomparable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("unknown structure-constant scheme `{0}`")]
    UnknownScheme(String),
    #[error("scheme `{0}` does not apply to this type")]
    SchemeNotApplicable(String),
    #[error("divided power is not integral: {0}")]
    NotIntegral(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HallError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("hall oracle supports simply-laced types only, got {0}")]
    NotSimplyLaced(String),
    #[error("total dimension {0} exceeds the enumeration guard")]
    TooLarge(usize),
    #[error("filtration counts are not polynomial in q: {0}")]
    NotPolynomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("group exceeds the enumeration limit of {0} elements")]
    TooLarge(usize),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("normalization did not terminate within {0} steps")]
    NoTermination(usize),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
