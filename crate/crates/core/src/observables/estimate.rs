use serde::{Deserialize, Serialize};

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub count: u64,
}

/// Streaming mean/variance accumulator (Welford), mergeable in any order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Pool two accumulators (Chan et al. parallel update).
    pub fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// `None` before the first sample.
    pub fn estimate(&self) -> Option<EnsembleEstimate> {
        if self.count == 0 {
            return None;
        }
        let stderr = if self.count > 1 {
            (self.m2.max(0.0) / (self.count - 1) as f64 / self.count as f64).sqrt()
        } else {
            0.0
        };
        Some(EnsembleEstimate { mean: self.mean, stderr, count: self.count })
    }
}

impl FromIterator<f64> for Accumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Accumulator::new();
        iter.into_iter().for_each(|x| acc.push(x));
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        let e = [1.0, 2.0, 3.0, 4.0].into_iter().collect::<Accumulator>().estimate().unwrap();
        assert_eq!(e.mean, 2.5);
        assert_eq!(e.count, 4);
        assert!((e.stderr - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(Accumulator::new().estimate(), None);
        assert_eq!(std::iter::once(0.3).collect::<Accumulator>().estimate().unwrap().stderr, 0.0);
    }

    proptest! {
        #[test]
        fn merge_equals_pooled(a in proptest::collection::vec(0.0f64..1.0, 0..40),
                               b in proptest::collection::vec(0.0f64..1.0, 0..40)) {
            let mut left: Accumulator = a.iter().copied().collect();
            left.merge(&b.iter().copied().collect());
            let pooled: Accumulator = a.iter().chain(&b).copied().collect();
            match (left.estimate(), pooled.estimate()) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    prop_assert_eq!(x.count, y.count);
                    prop_assert!((x.mean - y.mean).abs() < 1e-12);
                    prop_assert!((x.stderr - y.stderr).abs() < 1e-12);
                }
                _ => prop_assert!(false),
            }
        }
    }
}
