use thiserror::Error;

/// Errors raised when an operation's precondition is violated.
///
/// Every message names the offending value so that CLI users can see which
/// constraint failed without reading the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge bit string for n = {n} must have {expected} bits, got {actual}")]
    LengthMismatch {
        n: usize,
        expected: usize,
        actual: usize,
    },

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0} is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("vertex subset must be strictly increasing and 1-based, got {0:?}")]
    MalformedSubset(Vec<usize>),

    #[error("{what}: expected {expected}, got {actual}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{what} is {value}, above the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("vertex {0} is isolated; the model assumes every vertex has at least one neighbour")]
    IsolatedVertex(usize),

    #[error("{0} is not a subset of {1}")]
    NotSubset(String, String),

    #[error("the given vertices do not form an occurrence of the pattern: {0}")]
    NotAnOccurrence(String),

    #[error("{field} = {value} is out of range (must be < {bound})")]
    RankOutOfRange {
        field: &'static str,
        value: String,
        bound: String,
    },

    #[error("coloring is not total on the edge set: {0}")]
    PartialColoring(String),

    #[error("degenerate coordination game: need a > d and b > c, got a={a}, b={b}, c={c}, d={d}")]
    DegenerateGame { a: i64, b: i64, c: i64, d: i64 },

    #[error("no candidate in the declared set verified: {0}")]
    NotFound(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
