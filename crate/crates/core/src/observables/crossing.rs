use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub mean: f64,
    pub stderr: f64,
}

/// `⟨R⟩(p)` for one system size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub size: usize,
    pub points: Vec<CurvePoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// Average of the pairwise crossings.
    pub p_star: f64,
    /// `(L_small, L_large, p_cross)` for each consecutive size pair.
    pub pairwise: Vec<(usize, usize, f64)>,
}

const GRID_TOL: f64 = 1e-9;

/// Locate where consecutive-size curves intersect under linear interpolation
/// on the shared p grid, and average the pairwise crossings.
///
/// When noise produces several sign changes of the difference, the one with
/// the largest jump is taken.
pub fn find_crossing(curves: &[Curve]) -> Result<Crossing> {
    let mut sorted: Vec<&Curve> = curves.iter().collect();
    sorted.sort_by_key(|c| c.size);
    if sorted.len() < 2 {
        return Err(Error::InvalidConfig("need at least two system sizes".into()));
    }
    let mut pairwise = Vec::new();
    for pair in sorted.windows(2) {
        let (small, large) = (pair[0], pair[1]);
        let mut diffs: Vec<(f64, f64)> = small
            .points
            .iter()
            .filter_map(|a| {
                large
                    .points
                    .iter()
                    .find(|b| (a.p - b.p).abs() < GRID_TOL)
                    .map(|b| (a.p, b.mean - a.mean))
            })
            .collect();
        diffs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if diffs.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "sizes {} and {} share fewer than two p values",
                small.size, large.size
            )));
        }
        let nonzero: Vec<_> = diffs.into_iter().filter(|(_, d)| *d != 0.0).collect();
        let best = nonzero
            .windows(2)
            .filter(|w| w[0].1.signum() != w[1].1.signum())
            .max_by(|a, b| (a[0].1 - a[1].1).abs().total_cmp(&(b[0].1 - b[1].1).abs()))
            .ok_or(Error::NoCrossing)?;
        let ((p0, d0), (p1, d1)) = (best[0], best[1]);
        pairwise.push((small.size, large.size, p0 + (p1 - p0) * d0 / (d0 - d1)));
    }
    let p_star = pairwise.iter().map(|x| x.2).sum::<f64>() / pairwise.len() as f64;
    Ok(Crossing { p_star, pairwise })
}
