//! Tab-separated plot data.

use std::fmt::Display;
use std::fs;
use std::path::Path;

use crate::error::{CliError, Result};
use crate::fit::XiRow;

pub struct Table {
    text: String,
    rows: usize,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { text: columns.join("\t") + "\n", rows: 0 }
    }

    pub fn row(&mut self, cells: &[&dyn Display]) {
        let line: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
        self.text.push_str(&line.join("\t"));
        self.text.push('\n');
        self.rows += 1;
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, &self.text).map_err(CliError::io(path))
    }
}

/// `ξ_E` against `p − p_c`; saturated or failed fits keep their row with an
/// empty `xi`.
pub fn xi_table(rows: &[XiRow], p_c: f64) -> Table {
    let mut t = Table::new(&["L", "p", "p_minus_pc", "xi", "r_squared", "status"]);
    for row in rows {
        let dp = ((row.p - p_c) * 1e12).round() / 1e12;
        match row.fit.as_ref().and_then(|f| f.decaying()) {
            Some(f) => t.row(&[&row.size, &row.p, &dp, &f.value, &f.r_squared, &"fit"]),
            None => t.row(&[&row.size, &row.p, &dp, &"", &"", &row.status()]),
        }
    }
    t
}
