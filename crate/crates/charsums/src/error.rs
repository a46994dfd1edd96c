//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("moduli must be pairwise coprime: gcd({0}, {1}) > 1")]
    NotCoprime(u64, u64),
    #[error("modulus product overflows u64")]
    ModulusOverflow,
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("modulus {0} does not have the shape required by this statement")]
    ModulusShape(u64),
    #[error("tuple length must be even, got {0}")]
    OddTupleLength(usize),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("the zero polynomial has no resultant")]
    ZeroPolynomial,
    #[error("character mod {0} is not primitive")]
    NotPrimitive(u64),
    #[error("modulus {0} too small for this scan (need q >= 3)")]
    ModulusTooSmall(u64),
    #[error("r must be at least {0}")]
    RankTooSmall(u32),
    #[error("minimal polynomial fails the irreducibility screen: {0}")]
    ReduciblePolynomial(String),
    #[error("boxes do not partition the cube: {0}")]
    BadPartition(String),
    #[error("enumeration budget exceeded: {count} items against budget {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("invalid character label {0:?}: {1}")]
    BadCharLabel(String, String),
    #[error("invalid grid file: {0}")]
    BadGrid(String),
    #[error("unknown statement id {0:?}")]
    UnknownStatement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
