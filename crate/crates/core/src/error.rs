use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown point label `{0}`")]
    UnknownLabel(String),

    #[error("invalid point labels: {0}")]
    InvalidLabels(String),

    #[error("matrix is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("negative entry d({x}, {y}) = {value}")]
    NegativeEntry { x: String, y: String, value: String },

    #[error("nonzero diagonal entry d({point}, {point}) = {value}")]
    NonzeroDiagonal { point: String, value: String },

    #[error("triangle inequality fails: d({x}, {y}) = {direct} > d({x}, {via}) + d({via}, {y}) = {detour}")]
    TriangleViolation {
        x: String,
        via: String,
        y: String,
        direct: String,
        detour: String,
    },

    #[error("entry d({x}, {y}) = {value} exceeds the bound {bound}")]
    UnboundedInput {
        x: String,
        y: String,
        value: String,
        bound: String,
    },

    #[error("radius must be positive, got {0}")]
    NonpositiveRadius(String),

    #[error("invalid entourage chain at level {index}: {reason}")]
    InvalidChain { index: usize, reason: String },

    #[error("ground sets differ ({left} vs {right} points)")]
    GroundMismatch { left: usize, right: usize },

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("relation is not a valid quasi-uniformity generator: {0}")]
    InvalidGenerator(String),

    #[error("not a subset: {0}")]
    NotASubset(String),

    #[error("inclusion is not continuous: {0}")]
    InclusionNotContinuous(String),

    #[error("entourage does not contain the generator: pair ({x}, {y}) missing")]
    NotInFilter { x: String, y: String },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("word has odd length {0}")]
    OddLength(usize),

    #[error("word is not reduced: letters {0} and {1} cancel")]
    NotReduced(usize, usize),

    #[error("padding half-length {n} is too small for a word of length {len}")]
    PaddingTooShort { n: usize, len: usize },

    #[error("scheme size {scheme} does not match word length {word}")]
    SchemeMismatch { scheme: usize, word: usize },

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("the neutral element has no decomposition")]
    NeutralInput,

    #[error("subspace is not quasi-P*-embedded: pair ({x}, {y}) lies in the trace of the superspace generator but not in the subspace generator")]
    NotEmbedded { x: String, y: String },

    #[error("distance is not quasi-uniform: d({x}, {y}) > 0 on a generator pair")]
    NotQuasiUniform { x: String, y: String },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("unknown check suite `{0}` (available: {list})", list = crate::checks::SUITES.join(", "))]
    UnknownSuite(String),

    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Input errors (malformed files, unknown labels) as opposed to
    /// mathematical axiom or property failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::UnknownLabel(_)
                | Error::InvalidLabels(_)
                | Error::NotSquare { .. }
                | Error::UnknownSuite(_)
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
