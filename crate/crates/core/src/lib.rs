//! Monte Carlo engine for localizable entanglement in monitored random
//! Clifford circuits.
//!
//! The pipeline is: evolve a [`StabilizerTableau`] through a brickwork of
//! random two-qubit Cliffords and random Z measurements ([`circuit`]), convert
//! the final state to a graph state ([`graphstate::tableau_to_graph`]), and
//! read off localizable entanglement as graph connectivity ([`le`]).
//! [`observables`] turns ensembles of realizations into the order parameter,
//! correlation function, correlation length, critical exponent and the
//! reference-qubit concurrence. [`oracle`] is a dense simulator used to check
//! all of this by brute force on small systems, and [`verify`] packages those
//! checks.

pub mod bits;
pub mod circuit;
pub mod clifford;
pub mod density;
pub mod ensemble;
mod error;
pub mod graphstate;
pub mod le;
pub mod observables;
pub mod oracle;
pub mod pauli;
pub mod rng;
pub mod tableau;
pub mod verify;

pub use circuit::{
    run_realization, run_two_ancilla, run_with_reference, CircuitConfig, FinalGate, InitialState, MeasurementRecord,
    Protocol,
    RealizationOutput,
};
pub use clifford::{sample_two_qubit_clifford, CliffordTwoQubit};
pub use density::TwoQubitDensity;
pub use ensemble::{run_ensemble, simulate, PointSummary, RealizationRecord};
pub use error::{Error, Result};
pub use graphstate::{tableau_to_graph, Basis, Graph, LocalCorrection, LocalCorrections};
pub use le::{le_pair, le_protocol, le_ref, Action, MeasurementPlan};
pub use observables::{
    concurrence, correlation_function, correlation_profile, find_crossing, fit_correlation_length, fit_nu,
    order_parameter_r, CorrelationPoint, Crossing, Curve, CurvePoint, EnsembleEstimate, FitResult, FitWindow,
    XiFit,
};
pub use pauli::{Pauli, PauliString};
pub use tableau::{Gate, Measurement, StabilizerTableau};
