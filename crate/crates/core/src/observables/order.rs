use crate::error::{Error, Result};
use crate::graphstate::Graph;

fn system_labels(g: &Graph, size: usize) -> Result<Vec<Option<usize>>> {
    if size < 2 {
        return Err(Error::InvalidConfig(format!("system size {size} < 2")));
    }
    if size > g.len() {
        return Err(Error::OutOfRange { index: size - 1, len: g.len() });
    }
    let mut labels = g.component_labels();
    labels.truncate(size);
    Ok(labels)
}

/// Largest `|i−j|/(L−1)` over system pairs with non-zero localizable
/// entanglement; sites `0..size` are the system, any further vertices are
/// references and are ignored.
pub fn order_parameter_r(g: &Graph, size: usize) -> Result<f64> {
    let labels = system_labels(g, size)?;
    let count = labels.iter().flatten().max().map_or(0, |m| m + 1);
    let mut first = vec![usize::MAX; count];
    let mut last = vec![0; count];
    for (v, l) in labels.iter().enumerate() {
        if let Some(l) = *l {
            first[l] = first[l].min(v);
            last[l] = v;
        }
    }
    let span = (0..count).map(|c| last[c] - first[c]).max().unwrap_or(0);
    Ok(span as f64 / (size - 1) as f64)
}

/// `C_LE(r) = (1/(L−r)) Σ_i LE_{i,i+r}` for one separation.
pub fn correlation_function(g: &Graph, size: usize, r: usize) -> Result<f64> {
    if r == 0 || r >= size {
        return Err(Error::InvalidConfig(format!("separation {r} outside 1..{size}")));
    }
    let labels = system_labels(g, size)?;
    Ok(pair_fraction(&labels, r))
}

/// `C_LE(r)` for every `r = 1..L−1`; entry `r−1` holds separation `r`.
pub fn correlation_profile(g: &Graph, size: usize) -> Result<Vec<f64>> {
    let labels = system_labels(g, size)?;
    Ok((1..size).map(|r| pair_fraction(&labels, r)).collect())
}

fn pair_fraction(labels: &[Option<usize>], r: usize) -> f64 {
    let pairs = labels.len() - r;
    let linked = (0..pairs)
        .filter(|&i| labels[i].is_some() && labels[i] == labels[i + r])
        .count();
    linked as f64 / pairs as f64
}
