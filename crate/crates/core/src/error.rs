use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover relation creates a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("chain length must be at least 1")]
    InvalidChain,
    #[error("map {0:?} is not isotone")]
    NotIsotone(Vec<u32>),
    #[error("map {0:?} does not have one value in 1..=n per poset element")]
    MalformedMap(Vec<u32>),
    #[error("poset ideal is empty")]
    EmptyIdeal,
    #[error("Alexander dual of the zero ideal is the unit ideal")]
    ZeroIdeal,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("variable sets do not match")]
    VarSetMismatch,
    #[error("too many variables ({0}); at most {1} are supported")]
    TooManyVariables(usize, usize),
    #[error("face is not in the complex")]
    NotAFace,
    #[error("simplicial complex is not pure")]
    NotPure,
    #[error("simplicial complex is not a homology ball")]
    NotABall,
    #[error("complex is not minimal")]
    NotMinimal,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("poset is not a chain in declaration order")]
    NotAChain,
    #[error("position lookup out of range: j = {0}")]
    OutOfRange(u32),
    #[error("ideal is not strongly stable: {0}")]
    NotStronglyStable(String),
    #[error("antichain with the full poset ideal: the ball degenerates to a sphere")]
    ExceptionCase,
    #[error("certification failed: {reason}; offending face {face:?}")]
    CertificationFailed { reason: String, face: Vec<String> },
    #[error("input complex is the full simplex")]
    FullSimplex,
    #[error("map is not an upper bound of the poset ideal")]
    NotAnUpperBound,
    #[error("artinian ideal is not determined by the given bounds: {0}")]
    NotDetermined(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
