use thiserror::Error;

/// Errors produced anywhere in the workbench.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`])
/// which the CLI emits next to the human message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected an odd prime")]
    Modulus(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {k} does not give a primitive {p}-th root of unity")]
    NotPrimitive { k: i64, p: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("resource cap exceeded: degree {degree} needs ~{cells} cells, cap is {cap}")]
    Resource { degree: usize, cells: u128, cap: u128 },
    #[error("relations are not stable under {0}")]
    Unstable(String),
    #[error("unknown presentation kind '{0}'")]
    UnknownKind(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("central element {0} fixes every point of projective space")]
    CentralElement(String),
    #[error("ill-conditioned diagonalization: {0}")]
    Conditioning(String),
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("pole: denominator vanishes but numerator is {0}")]
    Pole(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Modulus(_) => "modulus",
            Error::PrimeMismatch(..) => "prime_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::NotPrimitive { .. } => "not_primitive",
            Error::Arity { .. } => "arity",
            Error::RingMismatch => "ring_mismatch",
            Error::Dimension(_) => "dimension",
            Error::OutOfRange(_) => "out_of_range",
            Error::Degree(_) => "degree",
            Error::NotSymmetric => "not_symmetric",
            Error::Resource { .. } => "resource",
            Error::Unstable(_) => "unstable",
            Error::UnknownKind(_) => "unknown_kind",
            Error::Parameter(_) => "parameter",
            Error::CentralElement(_) => "central_element",
            Error::Conditioning(_) => "conditioning",
            Error::SingularParameter(_) => "singular_parameter",
            Error::Pole(_) => "pole",
            Error::Sampling(_) => "sampling",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
