use thiserror::Error;

pub type Result<T> = std::result::Result<T, WalkError>;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum WalkError {
    #[error("unsupported coin size: {0} qubits (supported: 1 to 3)")]
    UnsupportedCoinSize(usize),

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("coin state is not normalized: |norm^2 - 1| = {defect:e}")]
    NotNormalized { defect: f64 },

    #[error("matrix is not unitary: max |U U^dagger - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("non-finite amplitude or probability")]
    NonFinite,

    #[error("invalid bipartition cut {cut} for a {qubits}-qubit state")]
    InvalidCut { cut: usize, qubits: usize },

    #[error("{context}: expected {expected} coin qubits, got {got}")]
    QubitMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{context}: expected a {expected}-dimensional lattice, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid displacement table: {0}")]
    InvalidTable(String),

    #[error("invalid probability: {0}")]
    InvalidProbability(String),

    #[error("correlation undefined: coin {0} has zero variance")]
    ZeroVariance(usize),

    #[error("invalid basis label {0:?}")]
    InvalidLabel(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
}
