use thiserror::Error;

/// Errors raised by the exact and certified layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("defining polynomial is reducible: {0}")]
    ReducibleDetected(String),
    #[error("invalid defining polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid integral basis: {0}")]
    InvalidBasis(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    MixedFields,
    #[error("field is not CM: {0}")]
    NotCM(String),
    #[error("precision exhausted at {bits} bits while {context}")]
    PrecisionExhausted { bits: u32, context: String },
    #[error("degenerate form (discriminant is zero)")]
    DegenerateForm,
    #[error("form is not totally indefinite at place {place}")]
    NotTotallyIndefinite { place: usize },
    #[error("zero set is a line, not a circle (A = 0)")]
    LineNotCircle,
    #[error("element is not totally positive (place {place})")]
    NotTotallyPositive { place: usize },
    #[error("no norm obstruction for e: verdict is {0}")]
    NormObstructionMissing(String),
    #[error("form is not certified anisotropic: verdict is {0}")]
    NotAnisotropic(String),
    #[error("target vector is not a zero of the form at place {place}")]
    NotAZero { place: usize },
    #[error("factor q*z - p vanishes")]
    FactorZero,
    #[error("element is not integral in the order")]
    NotIntegral,
    #[error("group element has determinant different from 1")]
    NotUnimodular,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
