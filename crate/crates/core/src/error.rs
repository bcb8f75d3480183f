use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} is too large for 32-bit element codes")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("modulus {given:?} is not the canonical modulus {expected:?} for GF({p}^{k})")]
    NonCanonicalModulus {
        p: u32,
        k: u32,
        given: Vec<u32>,
        expected: Vec<u32>,
    },
    #[error("cannot embed GF({p}^{from}) into GF({p}^{to})")]
    NoEmbedding { p: u32, from: u32, to: u32 },
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("value has not passed its axiom check: {0}")]
    Unvalidated(&'static str),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("subspace is not a unital subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("subspace is not a two-sided ideal: {0}")]
    NotIdeal(String),
    #[error("Hopf subalgebra is not normal: {0}")]
    NotNormal(String),
    #[error("not a Hopf ideal: {0}")]
    NotHopfIdeal(String),
    #[error("invalid group table: {0}")]
    Group(String),
    #[error("unknown builtin group {0:?}")]
    UnknownGroup(String),
    #[error("invalid matched pair: {0}")]
    MatchedPair(String),
    #[error("invalid action: {0}")]
    Action(String),
    #[error("module over a different algebra")]
    AlgebraMismatch,
    #[error("randomized search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("splitting field degree {degree} exceeds cap {cap}")]
    SplittingCap { degree: u32, cap: u32 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
