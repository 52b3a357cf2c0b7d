use thiserror::Error;

use crate::pauli::PauliOperator;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("register of {0} qubits exceeds the supported maximum")]
    TooManyQubits(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("operator {0} is not Hermitian")]
    NonHermitian(PauliOperator),

    #[error("set is contextual: {a} commutes with {b} and {b} commutes with {c}, but {a} and {c} anticommute")]
    ContextualSet {
        a: PauliOperator,
        b: PauliOperator,
        c: PauliOperator,
    },

    #[error("{0} is not generated by the decomposition")]
    NotGenerated(PauliOperator),

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("bound precondition violated: {0}")]
    BoundViolation(String),

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("stabilizer set is linearly dependent")]
    DependentSet,

    #[error("{a} and {b} do not commute")]
    NotCommuting { a: PauliOperator, b: PauliOperator },

    #[error("term {0} anticommutes with a tapered qubit")]
    NonSymmetricInput(PauliOperator),

    #[error("{a} and {b} commute, expected an anticommuting set")]
    NotAnticommuting { a: PauliOperator, b: PauliOperator },

    #[error("all coefficients are zero")]
    AllZero,

    #[error("a single word needs no rotation")]
    SingleWord,

    #[error("reduction left {0} surviving words")]
    ReductionFailed(usize),

    #[error("{count} symmetry generators exceed the exhaustive-search cap of {cap}")]
    TooManySymmetries { count: usize, cap: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitianMatrix(f64),

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },
}
