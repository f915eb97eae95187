//! Sweep specification, loaded from JSON and overridable from flags.

use std::fs;
use std::path::{Path, PathBuf};

use mipt_core::{CircuitConfig, FinalGate, Protocol};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Measurement-probability grid: an explicit list or an inclusive range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PGrid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

/// Round to 12 decimals so that range grids print as `0.12`, not
/// `0.12000000000000001`.
fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

impl PGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        let ps = match *self {
            PGrid::List(ref ps) => ps.clone(),
            PGrid::Range { start, stop, step } => {
                if step.is_nan() || step <= 0.0 {
                    return Err(CliError::Invalid(format!("p step {step} must be positive")));
                }
                if stop < start {
                    return Err(CliError::Invalid(format!("p range stop {stop} < start {start}")));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
                (0..n).map(|k| tidy(start + k as f64 * step)).collect()
            }
        };
        if ps.is_empty() {
            return Err(CliError::Invalid("empty p grid".into()));
        }
        if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(CliError::Invalid(format!("p = {p} outside [0, 1]")));
        }
        Ok(ps)
    }
}

impl std::str::FromStr for PGrid {
    type Err = CliError;

    /// `start:stop:step` or a comma-separated list.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| CliError::Invalid(format!("bad number {t:?}")));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, stop, step] => Ok(PGrid::Range { start: num(start)?, stop: num(stop)?, step: num(step)? }),
            [list] => Ok(PGrid::List(list.split(',').map(num).collect::<Result<_>>()?)),
            _ => Err(CliError::Invalid(format!("p grid {s:?} is neither start:stop:step nor a list"))),
        }
    }
}

fn default_layers_factor() -> usize {
    4
}

fn default_measure_every() -> usize {
    1
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub sizes: Vec<usize>,
    pub p: PGrid,
    /// Realizations per `(L, p)` point.
    pub realizations: u64,
    /// `T = layers_factor · L`.
    #[serde(default = "default_layers_factor")]
    pub layers_factor: usize,
    #[serde(default)]
    pub protocol: Protocol,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    /// Site Bell-paired with `R1`; `⌊L/2⌋` when absent.
    #[serde(default)]
    pub attach_site: Option<usize>,
    #[serde(default)]
    pub attach_layer: usize,
    #[serde(default)]
    pub final_gate: FinalGate,
    #[serde(default = "default_measure_every")]
    pub measure_every: usize,
}

impl SweepSpec {
    pub fn new(sizes: Vec<usize>, p: PGrid, realizations: u64) -> Self {
        Self {
            sizes,
            p,
            realizations,
            layers_factor: default_layers_factor(),
            protocol: Protocol::Plain,
            seed: 0,
            out: default_out(),
            attach_site: None,
            attach_layer: 0,
            final_gate: FinalGate::default(),
            measure_every: default_measure_every(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(CliError::io(path))?;
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    /// Check the spec and return the expanded p grid.
    pub fn validate(&self) -> Result<Vec<f64>> {
        if self.sizes.is_empty() {
            return Err(CliError::Invalid("empty size list".into()));
        }
        if self.realizations == 0 {
            return Err(CliError::Invalid("realizations must be at least 1".into()));
        }
        if self.layers_factor == 0 {
            return Err(CliError::Invalid("layers_factor must be at least 1".into()));
        }
        let ps = self.p.values()?;
        for &l in &self.sizes {
            for &p in &ps {
                self.config(l, p).validate()?;
            }
        }
        Ok(ps)
    }

    /// Circuit configuration of point `(L, p)`, realization 0.
    pub fn config(&self, size: usize, p: f64) -> CircuitConfig {
        let mut cfg = CircuitConfig::new(size, p)
            .with_layers(self.layers_factor * size)
            .with_seed(self.seed)
            .with_protocol(self.protocol)
            .with_final_gate(self.final_gate)
            .with_attach_layer(self.attach_layer);
        if let Some(site) = self.attach_site {
            cfg.attach_site = site;
        }
        cfg.measure_every = self.measure_every;
        cfg
    }
}
