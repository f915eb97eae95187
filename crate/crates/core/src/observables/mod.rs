//! Ensemble estimators, localizable-entanglement observables, concurrence
//! and the fits used to extract correlation lengths and exponents.

mod concurrence;
mod crossing;
mod estimate;
mod fit;
mod order;

pub use concurrence::concurrence;
pub use crossing::{find_crossing, Crossing, Curve, CurvePoint};
pub use estimate::{Accumulator, EnsembleEstimate};
pub use fit::{
    fit_correlation_length, fit_nu, linear_fit, CorrelationPoint, FitResult, FitWindow, LinearFit, XiFit,
};
pub use order::{correlation_function, correlation_profile, order_parameter_r};
