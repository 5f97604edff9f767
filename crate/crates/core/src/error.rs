use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid fraction {n}/{d}: need gcd(n, d) = 1 and 0 < d < n")]
    InvalidFraction { n: u64, d: u64 },
    #[error("invalid chain entry {0}: continued fraction entries must be >= 2")]
    InvalidChainEntry(u64),
    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: i64, n: u64 },
    #[error("invalid cusp pair ({p}, {q}): need gcd(p, q) = 1 and p > q >= 1")]
    InvalidCuspPair { p: u64, q: u64 },
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("duplicate curve `{0}`")]
    DuplicateCurve(String),
    #[error("invalid edge {0} -- {1}: {2}")]
    InvalidEdge(String, String, &'static str),
    #[error("invalid blow-up center: {0}")]
    InvalidCenter(String),
    #[error("cannot blow down `{name}`: {reason}")]
    NotContractible { name: String, reason: String },
    #[error("graph is not negative definite")]
    NotNegativeDefinite,
    #[error("graph is not connected")]
    NotConnected,
    #[error("inconsistent blow-up context: {0}")]
    InconsistentContext(&'static str),

    #[error("cyclic type ({n}, {d}) is invalid: need n >= 2, gcd(n, d) = 1, 0 < d < n")]
    InvalidCyclicType { n: u64, d: u64 },
    #[error("operation needs d > 1, got the Hirzebruch case d = 1")]
    HirzebruchCase,
    #[error("fork is not admissible: {0}")]
    InadmissibleFork(String),
    #[error("section weight search exhausted for ({n}, {d}) within {bound} blow-ups")]
    SearchExhausted { n: u64, d: u64, bound: u64 },
    #[error("section weight search is ambiguous for ({n}, {d}): candidates {candidates:?}")]
    AmbiguousSectionWeight { n: u64, d: u64, candidates: Vec<i64> },
    #[error("fiber completion failed: {0}")]
    FiberCompletion(String),
    #[error("contraction step {index} (`{name}`) failed: {reason}")]
    ContractionFailed { index: usize, name: String, reason: String },
    #[error("invalid pencil parameters n = {n}, a = {a}: need n >= 1, a >= 1")]
    InvalidPencil { n: u64, a: u64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("linear part is degenerate (det = 0); the map is not étale at the origin")]
    DegenerateLinearPart,
    #[error("zero polynomial has no finite fiber")]
    ZeroPolynomial,
    #[error("invalid group action ({n}, {d}): need gcd(n, d) = 1 and 0 < d < n")]
    InvalidAction { n: u64, d: u64 },

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
