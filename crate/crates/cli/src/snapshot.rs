//! DOT export of final graph states.

use std::fs;
use std::path::{Path, PathBuf};

use mipt_core::circuit::run;
use mipt_core::CircuitConfig;

use crate::error::{CliError, Result};

/// DOT text of one realization's final graph. System vertices are labelled
/// by site index, references by `R1`/`R2`.
pub fn snapshot_dot(cfg: &CircuitConfig) -> Result<String> {
    let (out, _) = run(cfg)?;
    let label = |v: usize| match v.checked_sub(cfg.size) {
        None => v.to_string(),
        Some(k) => format!("R{}", k + 1),
    };
    Ok(out.graph.to_dot("G", label))
}

/// Write realizations `0..count` of `cfg` to `out`, one file each.
pub fn run_snapshot(cfg: &CircuitConfig, count: u64, out: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    (0..count)
        .map(|r| {
            let cfg = cfg.clone().with_realization(r);
            let path = out.join(format!("graph_L{}_p{}_seed{}_r{r}.dot", cfg.size, cfg.p, cfg.seed));
            fs::write(&path, snapshot_dot(&cfg)?).map_err(CliError::io(&path))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use mipt_core::Protocol;

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("--")).count()
    }

    #[test]
    fn full_measurement_has_no_edges() {
        let dot = snapshot_dot(&CircuitConfig::new(20, 1.0)).unwrap();
        assert_eq!(edges(&dot), 0);
        assert_eq!(dot.lines().filter(|l| l.contains("label")).count(), 20);
    }

    #[test]
    fn area_law_graph_is_sparse() {
        let dot = snapshot_dot(&CircuitConfig::new(20, 0.18).with_seed(5)).unwrap();
        assert!(edges(&dot) < 190);
    }

    #[test]
    fn references_are_labelled() {
        let cfg = CircuitConfig::new(8, 0.1).with_protocol(Protocol::TwoAncilla);
        let dot = snapshot_dot(&cfg).unwrap();
        assert!(dot.contains("8 [label=\"R1\"]") && dot.contains("9 [label=\"R2\"]"));
    }

    #[test]
    fn writes_one_file_per_realization() {
        let dir = tempfile::tempdir().unwrap();
        let files = run_snapshot(&CircuitConfig::new(6, 0.0), 3, dir.path()).unwrap();
        assert_eq!(files.len(), 3);
        assert!(files.iter().all(|f| f.exists()));
    }
}
