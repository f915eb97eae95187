//! Flat per-realization CSV store.
//!
//! Each realization contributes one scalar row (`R`, `le_ref`, `concurrence`,
//! empty `r`) followed by one row per separation `r` carrying `c_le`. The
//! first line is a `#` comment with the write time; everything after it is
//! deterministic for a fixed spec and seed.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use mipt_core::{Protocol, RealizationRecord};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const HEADER: &str = "protocol,L,p,T,seed,realization,R,le_ref,concurrence,r,c_le";

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    protocol: String,
    #[serde(rename = "L")]
    size: usize,
    p: f64,
    #[serde(rename = "T")]
    layers: usize,
    seed: u64,
    realization: u64,
    #[serde(rename = "R")]
    order_parameter: Option<f64>,
    le_ref: Option<u8>,
    concurrence: Option<f64>,
    r: Option<usize>,
    c_le: Option<f64>,
}

/// Identifies the ensemble a realization belongs to. Ordered so that sorted
/// output groups by protocol, then `L`, then `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointKey {
    protocol: Protocol,
    pub size: usize,
    p_bits: u64,
    pub layers: usize,
    pub seed: u64,
}

impl PointKey {
    pub fn new(protocol: Protocol, size: usize, p: f64, layers: usize, seed: u64) -> Self {
        // p ≥ 0, so the IEEE bit pattern orders like the value.
        Self { protocol, size, p_bits: p.to_bits(), layers, seed }
    }

    pub fn p(&self) -> f64 {
        f64::from_bits(self.p_bits)
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }
}

/// In-memory image of the raw CSV.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawStore {
    points: BTreeMap<PointKey, BTreeMap<u64, RealizationRecord>>,
}

fn stamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    format!("# mipt raw realizations, written at unix time {secs}\n")
}

fn rows<'a>(key: &'a PointKey, rec: &'a RealizationRecord) -> impl Iterator<Item = Row> + 'a {
    let base = move || Row {
        protocol: key.protocol.name().to_string(),
        size: key.size,
        p: key.p(),
        layers: key.layers,
        seed: key.seed,
        realization: rec.realization,
        order_parameter: None,
        le_ref: None,
        concurrence: None,
        r: None,
        c_le: None,
    };
    let scalar = Row { order_parameter: Some(rec.order_parameter), le_ref: rec.le_ref, concurrence: rec.concurrence, ..base() };
    std::iter::once(scalar)
        .chain(rec.c_le.iter().enumerate().map(move |(k, &c)| Row { r: Some(k + 1), c_le: Some(c), ..base() }))
}

impl RawStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Load `path`, keeping only realizations whose rows are all present (a
    /// sweep interrupted mid-write leaves at most one partial realization,
    /// which is dropped and recomputed).
    pub fn read(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .flexible(true)
            .from_path(path)
            .map_err(CliError::csv(path))?;
        type Partial = (Option<(f64, Option<u8>, Option<f64>)>, Vec<Option<f64>>);
        let mut partial: BTreeMap<(PointKey, u64), Partial> = BTreeMap::new();
        for row in reader.deserialize::<Row>() {
            let row = match row {
                Ok(row) => row,
                Err(e) if e.is_io_error() => return Err(CliError::csv(path)(e)),
                Err(_) => continue,
            };
            let Ok(protocol) = row.protocol.parse::<Protocol>() else { continue };
            let key = PointKey::new(protocol, row.size, row.p, row.layers, row.seed);
            let entry = partial.entry((key, row.realization)).or_insert_with(|| (None, vec![None; row.size.saturating_sub(1)]));
            match (row.r, row.c_le, row.order_parameter) {
                (Some(r), Some(c), _) if (1..row.size).contains(&r) => entry.1[r - 1] = Some(c),
                (None, _, Some(order)) => entry.0 = Some((order, row.le_ref, row.concurrence)),
                _ => {}
            }
        }
        let mut store = Self::new();
        for ((key, realization), (scalar, c_le)) in partial {
            let (Some((order_parameter, le_ref, concurrence)), Some(c_le)) = (scalar, c_le.into_iter().collect()) else {
                continue;
            };
            store.insert(key, RealizationRecord { realization, order_parameter, c_le, le_ref, concurrence });
        }
        Ok(store)
    }

    pub fn insert(&mut self, key: PointKey, record: RealizationRecord) {
        self.points.entry(key).or_default().insert(record.realization, record);
    }

    pub fn contains(&self, key: &PointKey, realization: u64) -> bool {
        self.points.get(key).is_some_and(|m| m.contains_key(&realization))
    }

    /// Realizations `0..n` of `key` that are stored, in index order.
    pub fn records(&self, key: &PointKey, n: u64) -> Vec<RealizationRecord> {
        self.points.get(key).map_or_else(Vec::new, |m| m.range(..n).map(|(_, r)| r.clone()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.values().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rewrite `path` with every stored realization in canonical order.
    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("csv.tmp");
        {
            let mut file = BufWriter::new(File::create(&tmp).map_err(CliError::io(&tmp))?);
            file.write_all(stamp().as_bytes()).map_err(CliError::io(&tmp))?;
            let mut w = csv::Writer::from_writer(file);
            for (key, recs) in &self.points {
                for rec in recs.values() {
                    for row in rows(key, rec) {
                        w.serialize(row).map_err(CliError::csv(&tmp))?;
                    }
                }
            }
            if self.is_empty() {
                w.write_record(HEADER.split(',')).map_err(CliError::csv(&tmp))?;
            }
            w.flush().map_err(CliError::io(&tmp))?;
        }
        fs::rename(&tmp, path).map_err(CliError::io(path))
    }
}

/// Append realizations to `path`, creating it with a header if needed.
pub fn append(path: &Path, key: &PointKey, records: &[RealizationRecord]) -> Result<()> {
    let fresh = !path.exists();
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(CliError::io(path))?;
    if fresh {
        file.write_all(stamp().as_bytes()).map_err(CliError::io(path))?;
    }
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(BufWriter::new(file));
    for rec in records {
        for row in rows(key, rec) {
            w.serialize(row).map_err(CliError::csv(path))?;
        }
    }
    w.flush().map_err(CliError::io(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(realization: u64, size: usize) -> RealizationRecord {
        RealizationRecord {
            realization,
            order_parameter: 0.25 * realization as f64,
            c_le: (1..size).map(|r| 1.0 / r as f64).collect(),
            le_ref: Some(1),
            concurrence: Some(0.5),
        }
    }

    #[test]
    fn round_trip_and_canonical_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.csv");
        let key = PointKey::new(Protocol::TwoAncilla, 4, 0.1, 16, 7);
        append(&path, &key, &[record(2, 4), record(0, 4)]).unwrap();
        append(&path, &key, &[record(1, 4)]).unwrap();
        let store = RawStore::read(&path).unwrap();
        assert_eq!(store.len(), 3);
        assert_eq!(store.records(&key, 3), vec![record(0, 4), record(1, 4), record(2, 4)]);
        store.write(&path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with('#'));
        assert_eq!(lines.next().unwrap(), HEADER);
        assert_eq!(lines.next().unwrap(), "two_ancilla,4,0.1,16,7,0,0.0,1,0.5,,");
        assert_eq!(lines.next().unwrap(), "two_ancilla,4,0.1,16,7,0,,,,1,1.0");
        assert_eq!(RawStore::read(&path).unwrap(), store);
    }

    #[test]
    fn truncated_realizations_are_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.csv");
        let key = PointKey::new(Protocol::Plain, 5, 0.2, 20, 0);
        append(&path, &key, &[record(0, 5), record(1, 5)]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let cut = text.trim_end().rfind('\n').unwrap();
        fs::write(&path, &text[..cut + 8]).unwrap();
        let store = RawStore::read(&path).unwrap();
        assert!(store.contains(&key, 0));
        assert!(!store.contains(&key, 1));
    }
}
