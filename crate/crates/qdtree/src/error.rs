//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building states, trees, or reports.
#[derive(Debug, Error)]
pub enum Error {
    /// Amplitude vectors must have power-of-two length, at least 2.
    #[error("amplitude count {got} is not a power of two of at least 2")]
    BadAmplitudeCount { got: usize },

    /// Squared amplitudes of a pure state must sum to 1.
    #[error("state is not normalized: squared amplitudes sum to {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    /// Density matrices must be square.
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Density matrices must be 2^n x 2^n with n >= 1.
    #[error("matrix dimension {dim} is not a power of two of at least 2")]
    BadDimension { dim: usize },

    /// Density matrices must equal their conjugate transpose.
    #[error("matrix is not Hermitian: entry ({row},{col}) differs from its transpose conjugate by {deviation}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    /// Density matrices must have unit trace.
    #[error("matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    /// Density matrices must be positive semidefinite.
    #[error("matrix is not positive semidefinite: smallest eigenvalue is {min_eigenvalue}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// Probabilities must lie in [0, 1].
    #[error("probability {value} at index {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    /// Probability vectors must sum to 1.
    #[error("probabilities sum to {sum}, expected 1")]
    BadProbabilitySum { sum: f64 },

    /// Outcome distributions must have power-of-two length, at least 2.
    #[error("outcome count {got} is not a power of two of at least 2")]
    BadOutcomeCount { got: usize },

    /// The operation is only defined for two-qubit inputs.
    #[error("operation requires a two-qubit input, got {got} qubits")]
    TwoQubitsRequired { got: usize },

    /// Qubit index beyond the register size.
    #[error("qubit index {index} is out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    /// Measurement reorderings must be permutations of 0..n-1.
    #[error("{perm:?} is not a valid permutation of the {num_qubits} qubit indices")]
    InvalidPermutation { perm: Vec<usize>, num_qubits: usize },

    /// Measurement orders are written as comma-separated qubit indices.
    #[error("cannot parse measurement order {got:?}: expected comma-separated qubit indices")]
    BadOrderSpec { got: String },

    /// Divergences compare distributions of equal length.
    #[error("probability vectors have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Ratio estimation needs at least one coincidence triple.
    #[error("coincidence stream is empty")]
    EmptyStream,

    /// Coincidence triples are three-character strings of 0s and 1s.
    #[error("invalid coincidence triple {got:?}: expected three characters, each 0 or 1")]
    BadTriple { got: String },

    /// The amplitude-ratio parameter must be a positive finite number.
    #[error("amplitude ratio must be positive and finite, got {got}")]
    BadRatioParameter { got: f64 },

    /// Urns must contain at least one ball.
    #[error("urn contains no balls")]
    EmptyUrn,

    /// Serialized trees must satisfy the in-memory tree invariants.
    #[error("malformed decision tree: {reason}")]
    MalformedTree { reason: String },

    /// The declared qubit count disagrees with the serialized data.
    #[error("file declares {declared} qubits but its data implies {implied}")]
    DeclaredQubitsMismatch { declared: usize, implied: usize },

    /// Input is not valid JSON for the expected schema.
    #[error("failed to parse JSON: {0}")]
    Json(#[from] serde_json::Error),

    /// Reading or writing a file failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
