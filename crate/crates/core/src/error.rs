use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude vector has length {got}, expected {expected} for {n_qubits} qubits")]
    LengthMismatch {
        n_qubits: usize,
        expected: usize,
        got: usize,
    },
    #[error("amplitude vector is zero")]
    ZeroState,
    #[error("unsupported qubit count {0} (1..=8 qubits)")]
    QubitCount(usize),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit state")]
    QubitIndex { index: usize, n_qubits: usize },
    #[error("qubit indices must be distinct (got {0} twice)")]
    RepeatedQubit(usize),
    #[error("expected {expected} qubits, got {got}")]
    QubitCountMismatch { expected: usize, got: usize },
    #[error("matrix for qubit {qubit} is not unitary (deviation {deviation:.3e})")]
    NotUnitary { qubit: usize, deviation: f64 },
    #[error("{what} must have unit norm, got {norm}")]
    NotUnit { what: &'static str, norm: f64 },
    #[error("invalid canonical parameters: {0}")]
    InvalidParams(String),
    #[error("quadrilateral closed form does not apply: {0}; use the numeric solver")]
    InfeasibleQuadrilateral(String),
    #[error("closed-form solution is not physical: {0}; use the numeric solver")]
    NonPhysical(String),
    #[error("canonicalization did not reach residual tolerance after {restarts} restarts (best residual {residual:.3e})")]
    NonConvergence { restarts: usize, residual: f64 },
    #[error("value out of domain: {0}")]
    Domain(String),
    #[error("invalid field `{field}`: {message}")]
    Parse { field: String, message: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
