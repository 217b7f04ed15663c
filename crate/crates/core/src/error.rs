use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is reducible")]
    Reducible(String),

    #[error("face {face} of {simplex} has zero weight")]
    ZeroWeight { simplex: String, face: String },

    #[error("weight of face {face} does not divide the weight of {simplex}")]
    InexactDivision { simplex: String, face: String },

    #[error("face {face} of {simplex} is missing from the complex")]
    MissingFace { simplex: String, face: String },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("complex exceeds the simplex cap of {0}")]
    CapExceeded(usize),

    #[error("step {step} out of range for a filtration with {steps} steps")]
    StepOutOfRange { step: usize, steps: usize },

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("ideal chain is not descending at position {0}")]
    NotDescending(usize),

    #[error("weights {0} and {1} are not ordered by division")]
    NotDivisionOrdered(String, String),

    #[error("weight {0} is not positive")]
    NonPositiveWeight(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid coefficient system: {0}")]
    InvalidCoefficients(String),

    #[error("Bockstein tables disagree on the free rank in degree {degree}; a relevant prime is missing or a table is inconsistent")]
    MissingPrime { degree: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Parse failures are reported separately from semantic ones.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
