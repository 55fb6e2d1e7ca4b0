use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate weight: m must be nonzero")]
    DegenerateWeight,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix scalars of extension parameter {0} and {1}")]
    MixedExtension(i64, i64),
    #[error("elements belong to different generator sets")]
    GeneratorMismatch,
    #[error("generator set declares no pairing for `{0}`")]
    NoPairing(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid representation: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("not a member of {group}: {relation}")]
    NotMember { group: String, relation: String },
    #[error("eigenvalue outside the admissible set: {0}")]
    Eigenvalue(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown tag `{0}`")]
    UnknownTag(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
