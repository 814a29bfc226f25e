use thiserror::Error;

/// Errors raised by field, subspace, flag and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid field parameters: {0}")]
    InvalidParameters(String),
    #[error("field {p}^({e}*{n}) exceeds the table cap of 2^24 elements")]
    FieldTooLarge { p: u32, e: u32, n: u32 },
    #[error("no primitive polynomial of degree {0} was found")]
    NoPrimitivePolynomial(u32),
    #[error("zero is not invertible")]
    ZeroInverse,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("{m} does not divide {n}")]
    NotADivisor { m: u32, n: u32 },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {0} is not an element of the base field")]
    BadCoordinate(u32),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("operation requires a nonzero subspace")]
    ZeroSubspace,
    #[error("flag is empty")]
    EmptyFlag,
    #[error(
        "flag subspace {index} has dimension {dim}; dimensions must lie strictly between 0 and {n}"
    )]
    TrivialSubspace { index: usize, dim: usize, n: u32 },
    #[error("flag subspaces {0} and {1} are not strictly nested")]
    NotNested(usize, usize),
    #[error("flags have different type vectors")]
    TypeMismatch,
    #[error("invalid index selection: {0}")]
    BadIndices(String),
    #[error("invalid divisor chain: {0}")]
    InvalidChain(String),
    #[error("exponent {l} out of range [1, {bound})")]
    ExponentOutOfRange { l: u64, bound: u64 },
    #[error("regular form with {t} terms exceeds the minimal polynomial degree {degree}")]
    RegularFormTooLong { t: u32, degree: u32 },
    #[error("regular form with {t} terms fills the whole field")]
    AmbientSpace { t: u32 },
    #[error("alpha^{l} already lies in the subfield of degree {m}")]
    DegenerateRegularForm { l: u64, m: u32 },
    #[error("no subspace of dimension {target} with best friend of degree {bf} was found")]
    SearchExhausted { target: usize, bf: u32 },
    #[error("target dimension {target} is invalid: {reason}")]
    BadTargetDimension { target: usize, reason: String },
    #[error(
        "beta lies in the multiplicative group of the subfield of degree {m}: the orbit is trivial"
    )]
    TrivialOrbit { m: u32 },
    #[error("erasure counts are infeasible: {0}")]
    InfeasibleErasures(String),
    #[error("no shot satisfies the correctability test")]
    NoCorrectableShot,
    #[error("two codewords lie within the decoding radius")]
    AmbiguousDecoding,
    #[error("no codeword lies within the decoding radius")]
    NoCodeword,
    #[error("field of size {size} exceeds the enumeration cap {cap}")]
    EnumerationCap { size: u64, cap: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
