use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{p}")]
    Reducible { p: u32 },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("field too large for desk-scale arithmetic: {0}")]
    FieldTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs odd characteristic")]
    EvenCharacteristic,
    #[error("{d} does not divide the degree {n}")]
    NotADivisor { d: usize, n: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("maps act on different carriers")]
    CarrierMismatch,
    #[error("map is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("multiplication is not biadditive")]
    NotBiadditive,
    #[error("zero divisor: the map x -> x*y is singular for y = {witness:?} (enc {enc})")]
    ZeroDivisor { witness: Vec<u32>, enc: u64 },
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("map does not lie in the spread set")]
    NotInSpreadSet,
    #[error("presemifield has no two-sided identity")]
    NoIdentity,
    #[error("computed {space} space is not a field: {reason}")]
    NotAField { space: String, reason: String },
    #[error("bad parameter for {family}: {condition}")]
    BadParameter { family: String, condition: String },
    #[error("isotopism routes disagree")]
    RouteDisagreement,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn bad(family: &str, condition: impl Into<String>) -> Self {
        Error::BadParameter {
            family: family.to_string(),
            condition: condition.into(),
        }
    }

    /// Stable machine-readable tag used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::Reducible { .. } => "Reducible",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::CarrierMismatch => "CarrierMismatch",
            Error::Singular => "Singular",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotBiadditive => "NotBiadditive",
            Error::ZeroDivisor { .. } => "ZeroDivisor",
            Error::ZeroElement => "ZeroElement",
            Error::NotInvertible => "NotInvertible",
            Error::NotInSpreadSet => "NotInSpreadSet",
            Error::NoIdentity => "NoIdentity",
            Error::NotAField { .. } => "NotAField",
            Error::BadParameter { .. } => "BadParameter",
            Error::RouteDisagreement => "RouteDisagreement",
            Error::Parse(_) => "ParseError",
        }
    }
}
