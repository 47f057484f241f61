use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponents coincide, a pair needs two distinct exponents")]
    DegeneratePair,
    #[error("direction is a Stokes direction of the pair ({0}, {1})")]
    NonGenericDirection(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("total monodromy is not the identity")]
    MonodromyNotIdentity,
    #[error("filtrations are not opposite: {0}")]
    NotOpposite(String),
    #[error("exponent {0} is not extreme for the layout")]
    NotExtreme(String),
    #[error("layouts are incompatible: {0}")]
    IncompatibleLayouts(String),
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("gluing violation: {0}")]
    GluingViolation(String),
    #[error("exponent {0} is not in the layout")]
    ExponentNotInC(String),
    #[error("0 is not allowed as an exponent")]
    ZeroExponent,
    #[error("exponents are not aligned: {0}")]
    NotAligned(String),
    #[error("base direction is not the canonical half argument of the exponents")]
    NotCanonicalTheta,
    #[error("data is not pure: {0}")]
    NotPure(String),
    #[error("half-line fast path needs odd nu")]
    EvenParity,
    #[error("degenerate pencil: {0}")]
    DegeneratePencil(String),
    #[error("modulus of {0} is irrational")]
    IrrationalModulus(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegeneratePair => "DegeneratePair",
            Error::NonGenericDirection(..) => "NonGenericDirection",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NoSolution => "NoSolution",
            Error::Singular => "Singular",
            Error::MonodromyNotIdentity => "MonodromyNotIdentity",
            Error::NotOpposite(_) => "NotOpposite",
            Error::NotExtreme(_) => "NotExtreme",
            Error::IncompatibleLayouts(_) => "IncompatibleLayouts",
            Error::GenerationFailed(_) => "GenerationFailed",
            Error::GluingViolation(_) => "GluingViolation",
            Error::ExponentNotInC(_) => "ExponentNotInC",
            Error::ZeroExponent => "ZeroExponent",
            Error::NotAligned(_) => "NotAligned",
            Error::NotCanonicalTheta => "NotCanonicalTheta",
            Error::NotPure(_) => "NotPure",
            Error::EvenParity => "EvenParity",
            Error::DegeneratePencil(_) => "DegeneratePencil",
            Error::IrrationalModulus(_) => "IrrationalModulus",
            Error::Invalid(_) => "InvariantError",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Error {
        Error::Parse { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
