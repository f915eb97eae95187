//! Per-realization observables and their ensemble aggregation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{self, CircuitConfig, Protocol};
use crate::error::Result;
use crate::le::le_ref;
use crate::observables::{
    concurrence, correlation_profile, fit_correlation_length, order_parameter_r, Accumulator, CorrelationPoint, CurvePoint,
    EnsembleEstimate, FitWindow, XiFit,
};

/// Observables of a single monitored realization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationRecord {
    pub realization: u64,
    pub order_parameter: f64,
    /// `C_LE(r)` for `r = 1..L−1`.
    pub c_le: Vec<f64>,
    pub le_ref: Option<u8>,
    pub concurrence: Option<f64>,
}

/// Simulate one realization and evaluate every observable its protocol
/// supports.
pub fn simulate(cfg: &CircuitConfig) -> Result<RealizationRecord> {
    let (out, rho) = circuit::run(cfg)?;
    let order_parameter = order_parameter_r(&out.graph, cfg.size)?;
    let c_le = correlation_profile(&out.graph, cfg.size)?;
    let le_ref = match cfg.protocol {
        Protocol::Plain => None,
        _ => Some(le_ref(&out.graph, out.references[0])?),
    };
    let concurrence = rho.map(|rho| concurrence(&rho)).transpose()?;
    Ok(RealizationRecord { realization: cfg.realization, order_parameter, c_le, le_ref, concurrence })
}

/// Simulate realizations `indices` of `base` in parallel on the current rayon
/// pool. Results come back in index order.
pub fn run_ensemble(base: &CircuitConfig, indices: impl IntoParallelIterator<Item = u64>) -> Result<Vec<RealizationRecord>> {
    base.validate()?;
    indices
        .into_par_iter()
        .map(|r| simulate(&base.clone().with_realization(r)))
        .collect()
}

/// Aggregated statistics at one `(L, p)` point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub size: usize,
    pub p: f64,
    pub layers: usize,
    pub protocol: Protocol,
    pub order_parameter: EnsembleEstimate,
    /// Entry `r−1` is separation `r`.
    pub c_le: Vec<EnsembleEstimate>,
    pub le_ref: Option<EnsembleEstimate>,
    pub concurrence: Option<EnsembleEstimate>,
}

impl PointSummary {
    /// `None` if `records` is empty.
    pub fn from_records(cfg: &CircuitConfig, records: &[RealizationRecord]) -> Option<Self> {
        let first = records.first()?;
        let r_acc: Accumulator = records.iter().map(|r| r.order_parameter).collect();
        let c_le = (0..first.c_le.len())
            .map(|k| records.iter().map(|r| r.c_le[k]).collect::<Accumulator>().estimate())
            .collect::<Option<Vec<_>>>()?;
        let opt = |f: &dyn Fn(&RealizationRecord) -> Option<f64>| {
            let acc: Accumulator = records.iter().filter_map(f).collect();
            acc.estimate()
        };
        Some(Self {
            size: cfg.size,
            p: cfg.p,
            layers: cfg.layers,
            protocol: cfg.protocol,
            order_parameter: r_acc.estimate()?,
            c_le,
            le_ref: opt(&|r| r.le_ref.map(f64::from)),
            concurrence: opt(&|r| r.concurrence),
        })
    }

    /// `⟨C_LE(r)⟩` as fit input.
    pub fn correlation_points(&self) -> Vec<CorrelationPoint> {
        self.c_le
            .iter()
            .enumerate()
            .map(|(k, e)| CorrelationPoint { r: k + 1, mean: e.mean, stderr: e.stderr })
            .collect()
    }

    /// `⟨R⟩` at this point as crossing input.
    pub fn order_point(&self) -> CurvePoint {
        CurvePoint { p: self.p, mean: self.order_parameter.mean, stderr: self.order_parameter.stderr }
    }

    /// Correlation-length fit with the window matched to this ensemble.
    pub fn fit_xi(&self) -> Result<XiFit> {
        fit_correlation_length(
            &self.correlation_points(),
            &FitWindow::for_ensemble(self.order_parameter.count, self.size),
        )
    }
}
