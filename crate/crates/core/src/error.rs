use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("variable z{index} is out of range for ambient dimension {nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("resource limit exceeded after {reductions} pair reductions")]
    ResourceLimit { reductions: usize },

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("ill-conditioned solve: {0}")]
    IllConditioned(String),

    #[error("the vector field is identically zero")]
    ZeroField,

    #[error("component {component} of the field does not vanish on W")]
    WNotInSingularLocus { component: usize },

    #[error("W is not given by coordinate hyperplanes")]
    WNotCoordinate,

    #[error("W is not in graph form: {0}")]
    NotGraphForm(String),

    #[error("W must have codimension at least 2, got {0}")]
    CodimensionTooSmall(usize),

    #[error("W is singular at a sampled point")]
    SingularW,

    #[error("missing table entry {0}")]
    MissingTableEntry(String),

    #[error("invalid setup: {0}")]
    InvalidSetup(String),

    #[error("balance identity violated: {0}")]
    InconsistentBalance(String),

    #[error("field is not totally simple along W")]
    NotTotallySimple,

    #[error("unknown series generator `{0}`")]
    UnknownGenerator(String),

    #[error("a(lambda) and b(lambda) share a root")]
    NonCoprimeAB,

    #[error("P_m has a repeated root")]
    RepeatedRootsInPm,

    #[error("ambiguous trajectory matching: {0}")]
    AmbiguousMatching(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("manifest error on line {line}: {message}")]
    Manifest { line: usize, message: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
