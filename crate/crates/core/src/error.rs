use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cannot parse quaternion {0:?}")]
    ParseQuaternion(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("d = {0} is outside the supported range (d >= 10)")]
    DegreeOutOfRange(u64),

    #[error("cannot select {needed} generators from P({p}): {reason}")]
    InfeasibleSelection {
        p: u64,
        needed: usize,
        reason: String,
    },

    #[error("word is not irreducible at position {0}")]
    Reducible(usize),

    #[error("generator index {index} out of range for a set of {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("norm {norm} is not a power of {p}")]
    NormNotPrimePower { norm: u128, p: u64 },

    #[error("{a} is not a quadratic residue mod {q}")]
    NonResidue { a: u64, q: u64 },

    #[error("singular matrix has no projective class")]
    Singular,

    #[error("q = {q} too small for p = {p}: {reason}")]
    QTooSmall { p: u64, q: u64, reason: String },

    #[error("q = {0} is outside the supported field range")]
    FieldTooLarge(u64),

    #[error("graph needs {required} bytes, budget is {budget} bytes")]
    MemoryBudget { required: u64, budget: u64 },

    #[error("graph invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Format(String),
}
