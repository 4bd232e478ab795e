use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be nonzero")]
    Zero,
    #[error("cannot parse {0:?} as an integer")]
    Parse(String),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(BigInt),
    #[error("{0} is not squarefree")]
    NotSquarefree(BigInt),
    #[error("{0} is a perfect square")]
    PerfectSquare(BigInt),
    #[error("modulus {0} must be odd and positive")]
    BadJacobiModulus(BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("operation needs a quadratic field, got the unit discriminant 1")]
    UnitDiscriminant,
    #[error("form ({a}, {b}, {c}) is not primitive")]
    ImprimitiveForm { a: BigInt, b: BigInt, c: BigInt },
    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NegativeDefiniteForm { a: BigInt, b: BigInt, c: BigInt },
    #[error("discriminant {0} is a square")]
    SquareDiscriminant(BigInt),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),
    #[error("character is not primitive: modulus {modulus}, conductor {conductor}")]
    NotPrimitive { modulus: u64, conductor: u64 },
    #[error("expected {expected} generator values for modulus {modulus}, got {got}")]
    GeneratorCount {
        modulus: u64,
        expected: usize,
        got: usize,
    },
    #[error("character values must be +1 or -1, got {0}")]
    BadCharacterValue(i64),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{0} exceeds the size limit")]
    TooLarge(String),
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
}

impl Error {
    /// Distinguishes bad caller input from a broken internal invariant.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalCheck(_))
    }
}
