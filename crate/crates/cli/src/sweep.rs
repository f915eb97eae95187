//! `(L, p)` grid sweeps with resumable raw output and aggregated summaries.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mipt_core::{run_ensemble, PointSummary};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::fit::{xi_rows, DEFAULT_P_C};
use crate::raw::{self, PointKey, RawStore};
use crate::spec::SweepSpec;
use crate::tsv;

pub const RAW_FILE: &str = "raw.csv";
pub const AGGREGATE_FILE: &str = "aggregate.json";

/// Aggregated results: the spec that produced them and one summary per
/// `(L, p)`, sorted by `L` then `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub spec: SweepSpec,
    pub points: Vec<PointSummary>,
}

impl Aggregate {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(CliError::io(path))?;
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn point(&self, size: usize, p: f64) -> Option<&PointSummary> {
        self.points.iter().find(|s| s.size == size && (s.p - p).abs() < 1e-12)
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub aggregate: Aggregate,
    pub raw_path: PathBuf,
    pub aggregate_path: PathBuf,
    /// Realizations simulated in this run (the rest were resumed from disk).
    pub simulated: u64,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Failed(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(CliError::io(path))
}

/// Run `spec`, reusing any complete realizations already in the raw file.
pub fn run_sweep(spec: &SweepSpec, quiet: bool) -> Result<SweepOutput> {
    let ps = spec.validate()?;
    fs::create_dir_all(&spec.out).map_err(CliError::io(&spec.out))?;
    let raw_path = spec.out.join(RAW_FILE);
    let mut store = if raw_path.exists() { RawStore::read(&raw_path)? } else { RawStore::new() };

    let mut points = Vec::new();
    let mut simulated = 0;
    for &size in &spec.sizes {
        for &p in &ps {
            let cfg = spec.config(size, p);
            let key = PointKey::new(cfg.protocol, size, p, cfg.layers, cfg.seed);
            let missing: Vec<u64> = (0..spec.realizations).filter(|&r| !store.contains(&key, r)).collect();
            let started = Instant::now();
            let fresh = run_ensemble(&cfg, missing.clone())?;
            if !fresh.is_empty() {
                raw::append(&raw_path, &key, &fresh)?;
            }
            simulated += fresh.len() as u64;
            for rec in fresh {
                store.insert(key, rec);
            }
            let records = store.records(&key, spec.realizations);
            let summary = PointSummary::from_records(&cfg, &records).expect("realizations >= 1");
            if !quiet {
                eprintln!(
                    "L={size:<4} p={p:<6} R={:.4}±{:.4}  {} new, {} resumed, {:.1}s",
                    summary.order_parameter.mean,
                    summary.order_parameter.stderr,
                    missing.len(),
                    spec.realizations as usize - missing.len(),
                    started.elapsed().as_secs_f64()
                );
            }
            points.push(summary);
        }
    }
    points.sort_by(|a, b| a.size.cmp(&b.size).then(a.p.total_cmp(&b.p)));
    store.write(&raw_path)?;

    let aggregate = Aggregate { spec: spec.clone(), points };
    let aggregate_path = spec.out.join(AGGREGATE_FILE);
    write_json(&aggregate_path, &aggregate)?;
    write_plots(&aggregate, &spec.out)?;
    Ok(SweepOutput { aggregate, raw_path, aggregate_path, simulated })
}

/// Tab-separated data for each figure analog the sweep supports.
pub fn write_plots(agg: &Aggregate, out: &Path) -> Result<()> {
    let pts = &agg.points;
    let mut fig2 = tsv::Table::new(&["L", "p", "R", "stderr", "count"]);
    let mut fig3 = tsv::Table::new(&["L", "p", "r", "c_le", "stderr"]);
    let mut fig5 = tsv::Table::new(&["L", "p", "le_ref", "stderr", "count"]);
    let mut fig6 = tsv::Table::new(&["L", "p", "concurrence", "stderr", "count"]);
    for s in pts {
        let e = &s.order_parameter;
        fig2.row(&[&s.size, &s.p, &e.mean, &e.stderr, &e.count]);
        for (k, c) in s.c_le.iter().enumerate() {
            fig3.row(&[&s.size, &s.p, &(k + 1), &c.mean, &c.stderr]);
        }
        if let Some(e) = &s.le_ref {
            fig5.row(&[&s.size, &s.p, &e.mean, &e.stderr, &e.count]);
        }
        if let Some(e) = &s.concurrence {
            fig6.row(&[&s.size, &s.p, &e.mean, &e.stderr, &e.count]);
        }
    }
    fig2.write(&out.join("fig2_R_vs_p.tsv"))?;
    fig3.write(&out.join("fig3_cle_vs_r.tsv"))?;
    tsv::xi_table(&xi_rows(agg), DEFAULT_P_C).write(&out.join("fig4_xi_vs_dp.tsv"))?;
    if !fig5.is_empty() {
        fig5.write(&out.join("fig5_leref.tsv"))?;
    }
    if !fig6.is_empty() {
        fig6.write(&out.join("fig6_concurrence.tsv"))?;
    }
    Ok(())
}
