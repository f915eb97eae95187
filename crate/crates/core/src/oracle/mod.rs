//! Dense state-vector reference simulator for at most ten qubits, used only to
//! cross-check the stabilizer, graph and localization layers by brute force.

mod statevector;

pub use statevector::{
    build_graph_state, clifford_unitary, concurrence_dense, Branch, StateVector, MAX_QUBITS,
};
