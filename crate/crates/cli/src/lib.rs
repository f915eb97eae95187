//! Command implementations behind the `mipt` binary: grid sweeps with
//! resumable raw output, fits of the aggregated results, DOT snapshots and
//! the oracle verification run.

pub mod error;
pub mod fit;
pub mod raw;
pub mod snapshot;
pub mod spec;
pub mod sweep;
pub mod tsv;

pub use error::{CliError, Result};
pub use fit::{fit_report, run_fit, FitOptions, FitReport};
pub use snapshot::run_snapshot;
pub use spec::{PGrid, SweepSpec};
pub use sweep::{run_sweep, Aggregate, SweepOutput};
