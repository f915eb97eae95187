use thiserror::Error;

/// Errors raised by the simulation, graph and estimation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count must be at least 1")]
    EmptyRegister,
    #[error("index {index} out of range for {len} qubits")]
    OutOfRange { index: usize, len: usize },
    #[error("two-qubit operation needs distinct qubits, got {0} twice")]
    SameQubit(usize),
    #[error("Pauli string has length {got}, tableau has {expected} qubits")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {0} has been deleted")]
    DeletedVertex(usize),
    #[error("malformed tableau: {0}")]
    MalformedTableau(&'static str),
    #[error("vertices {0} and {1} are not connected; no localization protocol exists")]
    NotConnected(usize, usize),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("curves never cross on the shared p grid")]
    NoCrossing,
    #[error("oracle limited to {max} qubits, got {got}")]
    OracleTooLarge { max: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::OutOfRange { index, len })
    }
}
