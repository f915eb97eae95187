//! Stabilizer state → graph state plus local Clifford corrections.

use crate::bits;
use crate::error::{Error, Result};
use crate::pauli::product_phase;
use crate::tableau::{Gate, StabilizerTableau};

use super::Graph;

/// Per-qubit correction: the original state is obtained from the graph state
/// by applying `Z` (if `z`), then `S` (if `s`), then `H` (if `h`) on each qubit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalCorrection {
    pub z: bool,
    pub s: bool,
    pub h: bool,
}

impl LocalCorrection {
    pub fn is_identity(&self) -> bool {
        !(self.z || self.s || self.h)
    }

    /// Gates taking the graph state to the original state, in order.
    pub fn gates(&self, q: usize) -> Vec<Gate> {
        let mut g = Vec::new();
        if self.z {
            g.push(Gate::Z(q));
        }
        if self.s {
            g.push(Gate::S(q));
        }
        if self.h {
            g.push(Gate::H(q));
        }
        g
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalCorrections(pub Vec<LocalCorrection>);

impl LocalCorrections {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(LocalCorrection::is_identity)
    }

    pub fn gates(&self) -> Vec<Gate> {
        self.0.iter().enumerate().flat_map(|(q, c)| c.gates(q)).collect()
    }
}

/// Stabilizer generators under phase-exact row reduction.
struct Rows {
    n: usize,
    x: Vec<Vec<u64>>,
    z: Vec<Vec<u64>>,
    neg: Vec<bool>,
}

impl Rows {
    fn from_tableau(t: &StabilizerTableau) -> Self {
        let n = t.num_qubits();
        let w = bits::words_for(n);
        let mut rows = Rows { n, x: vec![vec![0; w]; n], z: vec![vec![0; w]; n], neg: vec![false; n] };
        for (i, p) in t.stabilizers().iter().enumerate() {
            for (q, op) in p.ops.iter().enumerate() {
                let (x, z) = op.bits();
                bits::set(&mut rows.x[i], q, x);
                bits::set(&mut rows.z[i], q, z);
            }
            rows.neg[i] = p.negative;
        }
        rows
    }

    fn mul(&mut self, dst: usize, src: usize) {
        let k = product_phase(&self.x[dst], &self.z[dst], self.neg[dst], &self.x[src], &self.z[src], self.neg[src]);
        self.neg[dst] = k & 2 == 2;
        let (sx, sz) = (self.x[src].clone(), self.z[src].clone());
        bits::xor_into(&mut self.x[dst], &sx);
        bits::xor_into(&mut self.z[dst], &sz);
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.x.swap(a, b);
        self.z.swap(a, b);
        self.neg.swap(a, b);
    }

    /// Gauss-Jordan on the X (or Z) block over rows `from..n`; returns pivot
    /// columns, leaving pivot rows at `from..from+rank`.
    fn reduce(&mut self, from: usize, use_z: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = from;
        for c in 0..self.n {
            if next == self.n {
                break;
            }
            let block = |rows: &Rows, r: usize| {
                if use_z {
                    bits::get(&rows.z[r], c)
                } else {
                    bits::get(&rows.x[r], c)
                }
            };
            let Some(p) = (next..self.n).find(|&r| block(self, r)) else {
                continue;
            };
            self.swap(p, next);
            for r in from..self.n {
                if r != next && block(self, r) {
                    self.mul(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    fn hadamard(&mut self, q: usize) {
        for r in 0..self.n {
            let (x, z) = (bits::get(&self.x[r], q), bits::get(&self.z[r], q));
            if x && z {
                self.neg[r] ^= true;
            }
            bits::set(&mut self.x[r], q, z);
            bits::set(&mut self.z[r], q, x);
        }
    }
}

/// Convert a stabilizer state to an LC-equivalent graph state.
///
/// Row-reduce the X block; Hadamards on the pivot columns of the residual
/// Z-only rows make the X block invertible; reduce it to the identity; clear
/// the Z diagonal with `S†` and the signs with `Z`. What remains of the Z
/// block is the adjacency matrix.
pub fn tableau_to_graph(t: &StabilizerTableau) -> Result<(Graph, LocalCorrections)> {
    t.validate()?;
    let n = t.num_qubits();
    let mut rows = Rows::from_tableau(t);
    let mut fix = vec![LocalCorrection::default(); n];

    let rank = rows.reduce(0, false).len();
    if rank < n {
        for q in rows.reduce(rank, true) {
            rows.hadamard(q);
            fix[q].h = true;
        }
    }
    let pivots = rows.reduce(0, false);
    if pivots.len() != n {
        return Err(Error::MalformedTableau("X block not invertible after Hadamard corrections"));
    }
    // Full rank: pivots are 0..n and row i is the only row with an X on qubit i.
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        if bits::get(&rows.z[i], i) {
            // S† maps Y_i to +X_i and fixes Z_i; no other row has X_i.
            bits::set(&mut rows.z[i], i, false);
            fix[i].s = true;
        }
        if rows.neg[i] {
            rows.neg[i] = false;
            fix[i].z = true;
        }
    }
    let g = Graph::from_adjacency(n, |a, b| bits::get(&rows.z[a], b));
    if (0..n).any(|a| (0..a).any(|b| bits::get(&rows.z[a], b) != bits::get(&rows.z[b], a))) {
        return Err(Error::MalformedTableau("reduced Z block is not symmetric"));
    }
    Ok((g, LocalCorrections(fix)))
}

/// Tableau of `|G⟩`: `|+⟩` on every vertex, `CZ` on every edge. Deleted
/// vertices are left as isolated `|+⟩` qubits.
pub fn graph_to_tableau(g: &Graph) -> Result<StabilizerTableau> {
    let mut t = StabilizerTableau::new(g.len())?;
    for q in 0..g.len() {
        t.apply(&Gate::H(q))?;
    }
    for (a, b) in g.edges() {
        t.apply(&Gate::Cz(a, b))?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_states_are_edgeless() {
        let mut t = StabilizerTableau::new(4).unwrap();
        for q in 0..4 {
            t.apply(&Gate::H(q)).unwrap();
        }
        let (g, fix) = tableau_to_graph(&t).unwrap();
        assert_eq!(g.num_edges(), 0);
        assert!(fix.is_identity());
    }

    #[test]
    fn bell_pair_is_single_edge_with_one_hadamard() {
        let mut t = StabilizerTableau::new(2).unwrap();
        t.apply(&Gate::H(0)).unwrap();
        t.apply(&Gate::Cnot(0, 1)).unwrap();
        let (g, fix) = tableau_to_graph(&t).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(fix.0.iter().filter(|c| c.h).count(), 1);
        assert!(fix.0.iter().all(|c| !c.s && !c.z));
    }

    #[test]
    fn corrections_reproduce_the_tableau() {
        // Applying the corrections to |G⟩ must give back the same stabilizer group.
        let mut t = StabilizerTableau::new(3).unwrap();
        t.apply_all(&[Gate::H(0), Gate::Cnot(0, 1), Gate::S(1), Gate::Cnot(1, 2), Gate::X(2), Gate::H(2)])
            .unwrap();
        let (g, fix) = tableau_to_graph(&t).unwrap();
        let mut rebuilt = graph_to_tableau(&g).unwrap();
        rebuilt.apply_all(&fix.gates()).unwrap();
        for s in t.stabilizers() {
            assert_eq!(rebuilt.pauli_expectation(&s).unwrap(), 1, "{s}");
        }
    }

    #[test]
    fn graph_round_trip_without_corrections() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        let (h, fix) = tableau_to_graph(&graph_to_tableau(&g).unwrap()).unwrap();
        assert_eq!(h, g);
        assert!(fix.is_identity());
    }
}
