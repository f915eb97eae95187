//! Correlation-length table, exponent and crossing from aggregated results.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mipt_core::{find_crossing, fit_nu, Crossing, Curve, FitResult, XiFit};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::sweep::Aggregate;
use crate::tsv;

pub const DEFAULT_P_C: f64 = 0.16;
pub const REFERENCE_NU: f64 = 1.31;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FitOptions {
    /// Critical point for `ν`; [`DEFAULT_P_C`] when absent.
    pub p_c: Option<f64>,
    /// System size whose `ξ` values enter the `ν` fit; largest when absent.
    pub size: Option<usize>,
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
}

/// Correlation-length fit at one `(L, p)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiRow {
    #[serde(rename = "L")]
    pub size: usize,
    pub p: f64,
    pub fit: Option<XiFit>,
    pub error: Option<String>,
}

impl XiRow {
    pub fn status(&self) -> &'static str {
        match &self.fit {
            Some(XiFit::Decaying(_)) => "fit",
            Some(XiFit::Saturated { .. }) => "SATURATED",
            None => "failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub p_c: f64,
    pub xi: Vec<XiRow>,
    #[serde(rename = "nu_L")]
    pub nu_size: usize,
    pub nu: FitResult,
    pub reference_nu: f64,
    pub crossing: Option<Crossing>,
}

/// Fit `ξ_E` at every aggregated point.
pub fn xi_rows(agg: &Aggregate) -> Vec<XiRow> {
    agg.points
        .iter()
        .map(|s| {
            let (fit, error) = match s.fit_xi() {
                Ok(f) => (Some(f), None),
                Err(e) => (None, Some(e.to_string())),
            };
            XiRow { size: s.size, p: s.p, fit, error }
        })
        .collect()
}

/// Crossing of `⟨R⟩(p)` between consecutive sizes, if there are several.
pub fn crossing(agg: &Aggregate) -> Option<Crossing> {
    let mut sizes: Vec<usize> = agg.points.iter().map(|s| s.size).collect();
    sizes.dedup();
    if sizes.len() < 2 {
        return None;
    }
    let curves: Vec<Curve> = sizes
        .iter()
        .map(|&size| Curve {
            size,
            points: agg.points.iter().filter(|s| s.size == size).map(|s| s.order_point()).collect(),
        })
        .collect();
    find_crossing(&curves).ok()
}

pub fn fit_report(agg: &Aggregate, opts: &FitOptions) -> Result<FitReport> {
    let p_c = opts.p_c.unwrap_or(DEFAULT_P_C);
    let xi = xi_rows(agg);
    let nu_size = match opts.size {
        Some(l) => l,
        None => xi.iter().map(|r| r.size).max().ok_or_else(|| CliError::Invalid("aggregate has no points".into()))?,
    };
    let in_range = |p: f64| p > p_c && opts.p_min.is_none_or(|m| p >= m - 1e-12) && opts.p_max.is_none_or(|m| p <= m + 1e-12);
    let area: Vec<&XiRow> = xi.iter().filter(|r| r.size == nu_size && in_range(r.p)).collect();
    if area.is_empty() {
        return Err(CliError::Invalid(format!("no area-law points (p > p_c = {p_c}) at L = {nu_size}")));
    }
    let pts: Vec<(f64, f64)> =
        area.iter().filter_map(|r| r.fit.as_ref().and_then(|f| f.decaying()).map(|f| (r.p, f.value))).collect();
    let nu = fit_nu(&pts, p_c).map_err(|e| CliError::Failed(format!("exponent fit at L = {nu_size}: {e}")))?;
    Ok(FitReport { p_c, xi, nu_size, nu, reference_nu: REFERENCE_NU, crossing: crossing(agg) })
}

pub fn summary(report: &FitReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "correlation length xi_E (p_c = {})", report.p_c);
    let _ = writeln!(s, "  {:>5}  {:>6}  {:>10}  {:>8}  status", "L", "p", "xi", "R^2");
    for row in &report.xi {
        match row.fit.as_ref().and_then(|f| f.decaying()) {
            Some(f) => {
                let _ = writeln!(s, "  {:>5}  {:>6}  {:>10.4}  {:>8.4}  fit", row.size, row.p, f.value, f.r_squared);
            }
            None => {
                let line = format!("  {:>5}  {:>6}  {:>10}  {:>8}  {}", row.size, row.p, "-", "-", row.status());
                match &row.error {
                    Some(why) => writeln!(s, "{line} ({why})"),
                    None => writeln!(s, "{line}"),
                }
                .ok();
            }
        }
    }
    let nu = &report.nu;
    let _ = writeln!(
        s,
        "nu = {:.4} (R^2 = {:.4}, {} points, L = {}, p in [{}, {}]; reference value {})",
        nu.value, nu.r_squared, nu.points, report.nu_size, nu.window.0, nu.window.1, report.reference_nu
    );
    match &report.crossing {
        Some(c) => {
            let pairs: Vec<String> = c.pairwise.iter().map(|(a, b, p)| format!("{a}/{b}: {p:.4}")).collect();
            let _ = writeln!(s, "crossing p* = {:.4} ({})", c.p_star, pairs.join(", "));
        }
        None => {
            let _ = writeln!(s, "crossing: not available");
        }
    }
    s
}

/// Fit `input` and write `fit_report.json`, `fit_report.txt` and
/// `fig4_xi_vs_dp.tsv` to `out`.
pub fn run_fit(input: &Path, opts: &FitOptions, out: &Path) -> Result<FitReport> {
    let agg = Aggregate::load(input)?;
    let report = fit_report(&agg, opts)?;
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    let json = out.join("fit_report.json");
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Failed(e.to_string()))? + "\n";
    fs::write(&json, text).map_err(CliError::io(&json))?;
    let txt = out.join("fit_report.txt");
    fs::write(&txt, summary(&report)).map_err(CliError::io(&txt))?;
    tsv::xi_table(&report.xi, report.p_c).write(&out.join("fig4_xi_vs_dp.tsv"))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{PGrid, SweepSpec};
    use mipt_core::{EnsembleEstimate, PointSummary, Protocol};

    fn exact_point(size: usize, p: f64, xi: f64) -> PointSummary {
        let est = |mean: f64| EnsembleEstimate { mean, stderr: 0.0, count: 100 };
        PointSummary {
            size,
            p,
            layers: 4 * size,
            protocol: Protocol::Plain,
            order_parameter: est(0.5),
            c_le: (1..size).map(|r| est(0.8 * (-(r as f64) / xi).exp())).collect(),
            le_ref: None,
            concurrence: None,
        }
    }

    fn aggregate(points: Vec<PointSummary>) -> Aggregate {
        Aggregate { spec: SweepSpec::new(vec![64], PGrid::List(vec![]), 100), points }
    }

    #[test]
    fn exact_exponentials_give_exact_table() {
        let planted = |p: f64| 0.5 * (p - 0.16f64).powf(-1.3);
        let agg = aggregate([0.2, 0.24, 0.28, 0.32].iter().map(|&p| exact_point(64, p, planted(p))).collect());
        let report = fit_report(&agg, &FitOptions::default()).unwrap();
        for row in &report.xi {
            let f = row.fit.as_ref().unwrap().decaying().unwrap();
            assert!((f.value - planted(row.p)).abs() < 1e-6 * planted(row.p), "{row:?}");
        }
        assert!((report.nu.value - 1.3).abs() < 1e-6);
        assert!(report.crossing.is_none());
        assert!(summary(&report).contains("nu = 1.3000"));
    }

    #[test]
    fn volume_law_only_is_an_error() {
        let agg = aggregate([0.05, 0.1].iter().map(|&p| exact_point(32, p, 1e6)).collect());
        let err = fit_report(&agg, &FitOptions::default()).unwrap_err();
        assert!(err.to_string().contains("no area-law points"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn saturated_points_are_flagged() {
        let mut pts: Vec<_> = [0.2, 0.24, 0.28].iter().map(|&p| exact_point(32, p, 3.0)).collect();
        pts.insert(0, exact_point(32, 0.08, 1e6));
        let report = fit_report(&aggregate(pts), &FitOptions::default()).unwrap();
        assert_eq!(report.xi[0].status(), "SATURATED");
        assert!(summary(&report).contains("SATURATED"));
    }
}
