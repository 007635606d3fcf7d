use thiserror::Error;

/// Crate-wide error type. Domain preconditions map onto dedicated variants so
/// the CLI can report them verbatim and exit with status 1.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("not invertible")]
    NotInvertible,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the 2^62 modulus cap")]
    PrimeTooLarge(u64),
    #[error("duplicate prime {0} in residue table")]
    DuplicatePrime(u64),
    #[error("empty residue table")]
    EmptyResidueTable,
    #[error("invalid residue")]
    InvalidResidue,
    #[error("need >= 2 primes")]
    NeedTwoPrimes,
    #[error("reconstruction failed; need more primes")]
    ReconstructionFailed,
    #[error("inconsistent family (bad prime suspected)")]
    InconsistentFamily,
    #[error("not an element of Q(sqrt {0})")]
    NotQuadElement(i64),
    #[error("{0} does not split at prime {1}: sqrt does not exist")]
    NonSplitPrime(i64, u64),
    #[error("bad prime {0}: a template denominator vanishes mod p")]
    BadPrimeDenominator(u64),

    #[error("incompatible rings")]
    IncompatibleRings,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substitution image must have degree <= 1")]
    NonLinearImage,
    #[error("degree cap {0} exceeded during basis computation")]
    DegreeCapExceeded(u32),

    #[error("quotient by zero ideal")]
    QuotientByZeroIdeal,
    #[error("radical requires a zero-dimensional ideal; slice first")]
    RadicalRequiresZeroDimensional,
    #[error("ideal is not proper")]
    NotProper,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,

    #[error("hyperplane contains the scheme")]
    HyperplaneContainsScheme,
    #[error("not a subscheme")]
    NotASubscheme,
    #[error("not enough generators for the Jacobian criterion")]
    NotEnoughGenerators,
    #[error("enlarge field or degree")]
    EnlargeFieldOrDegree,
    #[error("degree mismatch: system has degree {expected}, form has degree {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(u32),

    #[error("indeterminate candidate at prime {prime}, index {index}: {reason}")]
    IndeterminateCandidate {
        prime: u64,
        index: usize,
        reason: String,
    },
    #[error("search spec invalid: {0}")]
    InvalidSearchSpec(String),
    #[error("ambiguous family alignment: {0}")]
    AmbiguousFamily(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("fixture '{name}' failed: {detail}")]
    FixtureFailed { name: String, detail: String },

    #[error("io error: {0}")]
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
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
