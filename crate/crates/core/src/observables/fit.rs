use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weighted straight-line fit `y = intercept + slope·x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Weighted coefficient of determination.
    pub r_squared: f64,
}

/// Least squares with optional weights (`None` = unweighted).
pub fn linear_fit(x: &[f64], y: &[f64], weights: Option<&[f64]>) -> Result<LinearFit> {
    if x.len() != y.len() || weights.is_some_and(|w| w.len() != x.len()) {
        return Err(Error::Fit("mismatched input lengths".into()));
    }
    if x.len() < 2 {
        return Err(Error::Fit("need at least two points".into()));
    }
    let w = |i: usize| weights.map_or(1.0, |w| w[i]);
    let sw: f64 = (0..x.len()).map(w).sum();
    let mx = (0..x.len()).map(|i| w(i) * x[i]).sum::<f64>() / sw;
    let my = (0..x.len()).map(|i| w(i) * y[i]).sum::<f64>() / sw;
    let sxx: f64 = (0..x.len()).map(|i| w(i) * (x[i] - mx).powi(2)).sum();
    let sxy: f64 = (0..x.len()).map(|i| w(i) * (x[i] - mx) * (y[i] - my)).sum();
    if sxx <= f64::EPSILON * sw * mx.abs().max(1.0) {
        return Err(Error::Fit("degenerate spread in x".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = (0..x.len()).map(|i| w(i) * (y[i] - intercept - slope * x[i]).powi(2)).sum();
    let ss_tot: f64 = (0..x.len()).map(|i| w(i) * (y[i] - my).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LinearFit { slope, intercept, r_squared })
}

/// One ensemble-averaged `⟨C_LE(r)⟩` value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationPoint {
    pub r: usize,
    pub mean: f64,
    pub stderr: f64,
}

/// Which correlation points enter the exponential fit.
///
/// Points with `r < min_r` are dropped as short-distance transients, and so
/// are means under `max(5/(N·(L−r)), floor)`, the resolution of a binary mean
/// over `N` realizations and `L−r` pairs (only applied when both `N` and `L`
/// are known).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitWindow {
    pub min_r: usize,
    pub floor: f64,
    pub realizations: Option<u64>,
    pub system_size: Option<usize>,
}

impl Default for FitWindow {
    fn default() -> Self {
        Self { min_r: 2, floor: 1e-3, realizations: None, system_size: None }
    }
}

impl FitWindow {
    pub fn for_ensemble(realizations: u64, system_size: usize) -> Self {
        Self { realizations: Some(realizations), system_size: Some(system_size), ..Self::default() }
    }

    fn threshold(&self, r: usize) -> f64 {
        match (self.realizations, self.system_size) {
            (Some(n), Some(l)) if l > r => (5.0 / (n as f64 * (l - r) as f64)).max(self.floor),
            _ => self.floor,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// The fitted quantity: `ξ_E` for correlation fits, `ν` for exponent fits.
    pub value: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Inclusive range of the independent variable actually fitted.
    pub window: (f64, f64),
    pub points: usize,
}

/// Outcome of fitting `⟨C_LE(r)⟩ ∼ exp(−r/ξ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum XiFit {
    Decaying(FitResult),
    /// Tail does not decay: mean of the last third of the points exceeds half
    /// the mean of the first third.
    Saturated { head_mean: f64, tail_mean: f64 },
}

impl XiFit {
    pub fn is_saturated(&self) -> bool {
        matches!(self, XiFit::Saturated { .. })
    }

    pub fn decaying(&self) -> Option<&FitResult> {
        match self {
            XiFit::Decaying(f) => Some(f),
            XiFit::Saturated { .. } => None,
        }
    }
}

/// Fit the correlation length from `⟨C_LE(r)⟩` data by weighted linear
/// regression of `ln C` on `r`.
pub fn fit_correlation_length(points: &[CorrelationPoint], window: &FitWindow) -> Result<XiFit> {
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| p.r);
    if pts.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", pts.len())));
    }
    let third = pts.len() / 3;
    let head = pts[..third].iter().map(|p| p.mean).sum::<f64>() / third as f64;
    let tail = pts[pts.len() - third..].iter().map(|p| p.mean).sum::<f64>() / third as f64;
    if tail > 0.5 * head {
        return Ok(XiFit::Saturated { head_mean: head, tail_mean: tail });
    }

    let usable: Vec<_> = pts
        .iter()
        .filter(|p| p.r >= window.min_r && p.mean > 0.0 && p.mean >= window.threshold(p.r))
        .collect();
    if usable.len() < 3 {
        return Err(Error::Fit(format!("only {} usable points above the noise floor", usable.len())));
    }
    let x: Vec<f64> = usable.iter().map(|p| p.r as f64).collect();
    let y: Vec<f64> = usable.iter().map(|p| p.mean.ln()).collect();
    let weights: Option<Vec<f64>> = usable
        .iter()
        .all(|p| p.stderr > 0.0)
        .then(|| usable.iter().map(|p| (p.mean / p.stderr).powi(2)).collect());
    let fit = linear_fit(&x, &y, weights.as_deref())?;
    if fit.slope >= 0.0 {
        return Err(Error::Fit(format!("non-negative slope {}", fit.slope)));
    }
    Ok(XiFit::Decaying(FitResult {
        value: -1.0 / fit.slope,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        window: (x[0], x[x.len() - 1]),
        points: x.len(),
    }))
}

/// Fit `ξ ∼ |p − p_c|^{−ν}` by regressing `ln ξ` on `ln(p − p_c)`; all points
/// must lie on the area-law side `p > p_c`.
pub fn fit_nu(points: &[(f64, f64)], p_c: f64) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some((p, _)) = points.iter().find(|(p, _)| *p <= p_c) {
        return Err(Error::Fit(format!("p = {p} is not above p_c = {p_c}")));
    }
    if let Some((_, xi)) = points.iter().find(|(_, xi)| !(xi.is_finite() && *xi > 0.0)) {
        return Err(Error::Fit(format!("invalid correlation length {xi}")));
    }
    let x: Vec<f64> = points.iter().map(|(p, _)| (p - p_c).ln()).collect();
    let y: Vec<f64> = points.iter().map(|(_, xi)| xi.ln()).collect();
    let fit = linear_fit(&x, &y, None)?;
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        value: -fit.slope,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        window: (lo, hi),
        points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact(xi: f64, rs: std::ops::RangeInclusive<usize>) -> Vec<CorrelationPoint> {
        rs.map(|r| CorrelationPoint { r, mean: (-(r as f64) / xi).exp(), stderr: 0.0 }).collect()
    }

    #[test]
    fn exact_exponential_recovers_xi() {
        let fit = fit_correlation_length(&exact(3.0, 1..=10), &FitWindow::default()).unwrap();
        let f = fit.decaying().unwrap();
        assert!((f.value - 3.0).abs() < 1e-9);
        assert!(f.r_squared > 0.999_999);
        assert_eq!(f.window, (2.0, 10.0));
    }

    #[test]
    fn constant_data_saturates() {
        let pts: Vec<_> = (1..=10).map(|r| CorrelationPoint { r, mean: 0.4, stderr: 0.01 }).collect();
        assert!(fit_correlation_length(&pts, &FitWindow::default()).unwrap().is_saturated());
    }

    #[test]
    fn noisy_exponential_stays_close() {
        // ±1% multiplicative noise on ξ = 2 over r = 1..12.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let pts: Vec<_> = (1..=12)
                .map(|r| {
                    let eta: f64 = rng.random_range(-0.01..0.01);
                    CorrelationPoint { r, mean: (-(r as f64) / 2.0).exp() * (1.0 + eta), stderr: 0.0 }
                })
                .collect();
            let xi = fit_correlation_length(&pts, &FitWindow::default()).unwrap().decaying().unwrap().value;
            assert!((1.9..=2.1).contains(&xi), "{xi}");
        }
    }

    #[test]
    fn weighted_fit_uses_stderr() {
        let mut pts = exact(4.0, 1..=12);
        for p in &mut pts {
            p.stderr = 0.01 * p.mean;
        }
        // Corrupt one point but give it a huge error bar.
        pts[6].mean *= 3.0;
        pts[6].stderr = 10.0;
        let xi = fit_correlation_length(&pts, &FitWindow::default()).unwrap().decaying().unwrap().value;
        assert!((xi - 4.0).abs() < 0.01, "{xi}");
    }

    #[test]
    fn fit_window_floor() {
        let w = FitWindow::for_ensemble(100, 64);
        assert!((w.threshold(14) - 1e-3).abs() < 1e-15);
        assert!((w.threshold(63) - 0.05).abs() < 1e-15);
        // Too few points above the floor.
        let pts = exact(0.3, 1..=10);
        assert!(fit_correlation_length(&pts, &FitWindow::default()).is_err());
        assert!(fit_correlation_length(&pts[..2], &FitWindow::default()).is_err());
    }

    #[test]
    fn growing_data_is_rejected() {
        let pts: Vec<_> = (1..=9)
            .map(|r| CorrelationPoint { r, mean: if r == 1 { 0.9 } else { 0.01 + 0.001 * r as f64 }, stderr: 0.0 })
            .collect();
        assert!(matches!(fit_correlation_length(&pts, &FitWindow::default()), Err(Error::Fit(_))));
    }

    #[test]
    fn nu_from_exact_power_laws() {
        let pts: Vec<_> = [0.20, 0.24, 0.28, 0.32].iter().map(|&p: &f64| (p, (p - 0.16).powf(-1.31))).collect();
        let f = fit_nu(&pts, 0.16).unwrap();
        assert!((f.value - 1.31).abs() < 1e-9);
        let pts: Vec<_> = [0.20, 0.24, 0.28, 0.32].iter().map(|&p: &f64| (p, 1.0 / (p - 0.16))).collect();
        assert!((fit_nu(&pts, 0.16).unwrap().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn nu_input_errors() {
        let below = [(0.10, 2.0), (0.2, 3.0), (0.3, 1.0)];
        assert!(fit_nu(&below, 0.16).is_err());
        let same = [(0.2, 2.0), (0.2, 3.0), (0.2, 1.0)];
        assert!(fit_nu(&same, 0.16).is_err());
        assert!(fit_nu(&[(0.2, 1.0), (0.3, 0.5)], 0.16).is_err());
    }
}
