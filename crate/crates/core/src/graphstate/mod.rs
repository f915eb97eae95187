//! Graph states: adjacency storage, local complementation, the Pauli
//! measurement rules on graphs, connectivity and DOT export.
//!
//! Deleted vertices are masked rather than compacted so site indices stay
//! stable through any sequence of measurements.

mod convert;

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::bits;
use crate::error::{check_index, Error, Result};

pub use convert::{graph_to_tableau, tableau_to_graph, LocalCorrection, LocalCorrections};

/// Undirected simple graph on vertices `0..n` with a presence mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    present: Vec<u64>,
}

/// Single-qubit Pauli measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Graph {
    /// Edgeless graph on `n` present vertices.
    pub fn empty(n: usize) -> Self {
        let words = bits::words_for(n).max(1);
        let mut present = vec![0; words];
        for v in 0..n {
            bits::set(&mut present, v, true);
        }
        Self { n, words, adj: vec![0; n * words], present }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Path `0 - 1 - … - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path edges in range")
    }

    /// Build from a symmetric zero-diagonal adjacency predicate.
    pub fn from_adjacency(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for a in 0..n {
            for b in 0..a {
                if adjacent(a, b) {
                    g.set_edge_unchecked(a, b, true);
                }
            }
        }
        g
    }

    /// Vertex capacity, including deleted vertices.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn is_present(&self, v: usize) -> bool {
        v < self.n && bits::get(&self.present, v)
    }

    pub fn present_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        bits::ones(&self.present)
    }

    pub fn num_present(&self) -> usize {
        self.present.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_present(&self, v: usize) -> Result<()> {
        check_index(v, self.n)?;
        if self.is_present(v) {
            Ok(())
        } else {
            Err(Error::DeletedVertex(v))
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && bits::get(self.row(a), b)
    }

    fn set_edge_unchecked(&mut self, a: usize, b: usize, on: bool) {
        bits::set(self.row_mut(a), b, on);
        bits::set(self.row_mut(b), a, on);
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_present(a)?;
        self.check_present(b)?;
        if a == b {
            return Err(Error::SameQubit(a));
        }
        self.set_edge_unchecked(a, b, true);
        Ok(())
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_present(a)?;
        self.check_present(b)?;
        if a == b {
            return Err(Error::SameQubit(a));
        }
        bits::flip(self.row_mut(a), b);
        bits::flip(self.row_mut(b), a);
        Ok(())
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        if v >= self.n {
            return Vec::new();
        }
        bits::ones(self.row(v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        if v >= self.n {
            return 0;
        }
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| bits::ones(self.row(a)).filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Symmetric, zero diagonal, no edges on deleted vertices.
    pub fn is_valid(&self) -> bool {
        (0..self.n).all(|a| {
            !bits::get(self.row(a), a)
                && (self.is_present(a) || bits::is_zero(self.row(a)))
                && bits::ones(self.row(a)).all(|b| b < self.n && bits::get(self.row(b), a))
        })
    }

    /// Local complementation at `v` in place.
    pub fn local_complement_mut(&mut self, v: usize) -> Result<()> {
        self.check_present(v)?;
        let nbrs = self.row(v).to_vec();
        for a in bits::ones(&nbrs) {
            // Toggle every edge from a to the other neighbours of v.
            let w = self.words;
            for (dst, src) in self.adj[a * w..(a + 1) * w].iter_mut().zip(&nbrs) {
                *dst ^= src;
            }
            bits::flip(self.row_mut(a), a);
        }
        Ok(())
    }

    /// `τ_v(G)`: toggles every edge among the neighbours of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.local_complement_mut(v)?;
        Ok(g)
    }

    pub fn delete_vertex_mut(&mut self, v: usize) -> Result<()> {
        self.check_present(v)?;
        let neighbors: Vec<usize> = bits::ones(self.row(v)).collect();
        for a in neighbors {
            bits::set(self.row_mut(a), v, false);
        }
        self.row_mut(v).fill(0);
        bits::set(&mut self.present, v, false);
        Ok(())
    }

    /// `G - v`: removes `v` and its incident edges; indices of the other
    /// vertices are unchanged.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.delete_vertex_mut(v)?;
        Ok(g)
    }

    /// Measure `v` in `basis`, updating the graph up to local Cliffords.
    pub fn measure_mut(&mut self, v: usize, basis: Basis) -> Result<()> {
        self.check_present(v)?;
        match basis {
            Basis::Z => {}
            Basis::X => {
                if let Some(&u) = self.neighbors(v).first() {
                    self.local_complement_mut(u)?;
                    self.local_complement_mut(v)?;
                }
            }
            Basis::Y => {
                if let Some(&u) = self.neighbors(v).first() {
                    self.local_complement_mut(v)?;
                    self.local_complement_mut(u)?;
                }
            }
        }
        self.delete_vertex_mut(v)
    }

    /// Y measurement with an explicit choice of the extra complementation
    /// vertex `u ∈ N(v)`.
    pub fn measure_y_with_neighbor_mut(&mut self, v: usize, u: usize) -> Result<()> {
        self.check_present(v)?;
        if !self.has_edge(v, u) {
            return Err(Error::InvalidConfig(format!("{u} is not a neighbour of {v}")));
        }
        self.local_complement_mut(v)?;
        self.local_complement_mut(u)?;
        self.delete_vertex_mut(v)
    }

    /// Graph after measuring `v` in `basis`.
    pub fn measure(&self, v: usize, basis: Basis) -> Result<Graph> {
        let mut g = self.clone();
        g.measure_mut(v, basis)?;
        Ok(g)
    }

    /// Z measurement: `G - v`.
    pub fn measure_z_graph(&self, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.measure_mut(v, Basis::Z)?;
        Ok(g)
    }

    /// X measurement: `τ_v(τ_u(G)) - v` with `u` the smallest neighbour of
    /// `v`; pure deletion when `v` is isolated. When `u` has no neighbour other
    /// than `v` this is `τ_v(G) - v`.
    pub fn measure_x_graph(&self, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.measure_mut(v, Basis::X)?;
        Ok(g)
    }

    /// Y measurement: `τ_u(τ_v(G)) - v` with `u` the smallest neighbour of
    /// `v`; pure deletion when `v` is isolated.
    pub fn measure_y_graph(&self, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.measure_mut(v, Basis::Y)?;
        Ok(g)
    }

    /// Component label per vertex (`None` for deleted vertices). Labels are
    /// assigned in order of each component's smallest vertex.
    pub fn component_labels(&self) -> Vec<Option<usize>> {
        let mut label = vec![None; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in self.present_vertices() {
            if label[s].is_some() {
                continue;
            }
            label[s] = Some(next);
            queue.push_back(s);
            while let Some(a) = queue.pop_front() {
                for b in bits::ones(self.row(a)) {
                    if label[b].is_none() {
                        label[b] = Some(next);
                        queue.push_back(b);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Partition of the present vertices into connected components, each
    /// sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().flatten().max().map_or(0, |m| m + 1);
        let mut comps = vec![Vec::new(); count];
        for (v, l) in labels.iter().enumerate() {
            if let Some(l) = l {
                comps[*l].push(v);
            }
        }
        comps
    }

    /// Shortest path from `a` to `b` by breadth-first search, expanding
    /// neighbours in ascending index order.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if !self.is_present(a) || !self.is_present(b) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for y in bits::ones(self.row(x)) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Graphviz DOT rendering; every present vertex is listed, then one line
    /// per edge.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for v in self.present_vertices() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", label(v));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

/// `τ_v(G)`.
pub fn local_complement(g: &Graph, v: usize) -> Result<Graph> {
    g.local_complement(v)
}

/// `G - v`.
pub fn delete_vertex(g: &Graph, v: usize) -> Result<Graph> {
    g.delete_vertex(v)
}

pub fn measure_x_graph(g: &Graph, v: usize) -> Result<Graph> {
    g.measure_x_graph(v)
}

pub fn measure_y_graph(g: &Graph, v: usize) -> Result<Graph> {
    g.measure_y_graph(v)
}

pub fn measure_z_graph(g: &Graph, v: usize) -> Result<Graph> {
    g.measure_z_graph(v)
}

pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    g.connected_components()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Tests use 0-based indices; the worked examples' vertex k is k-1 here.

    fn edges(g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
    }

    #[test]
    fn local_complement_examples() {
        let chain = Graph::path(3);
        assert_eq!(edges(&chain.local_complement(1).unwrap()), vec![(0, 1), (0, 2), (1, 2)]);
        let star = Graph::from_edges(4, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        let lc = star.local_complement(3).unwrap();
        assert_eq!(edges(&lc), vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(chain.local_complement(3).is_err());
    }

    #[test]
    fn deletion_examples() {
        let chain = Graph::path(3);
        let g = chain.delete_vertex(1).unwrap();
        assert!(g.edges().is_empty());
        assert_eq!(g.present_vertices().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(g.delete_vertex(1), Err(Error::DeletedVertex(1)));
        assert!(g.delete_vertex(9).is_err());

        let single = Graph::empty(1).delete_vertex(0).unwrap();
        assert_eq!(single.num_present(), 0);

        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for v in 0..3 {
            assert_eq!(tri.delete_vertex(v).unwrap().num_edges(), 1);
        }
    }

    #[test]
    fn x_rule_examples() {
        let chain = Graph::path(3);
        assert_eq!(edges(&chain.measure_x_graph(1).unwrap()), vec![(0, 2)]);
        let star = Graph::from_edges(4, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(edges(&star.measure_x_graph(3).unwrap()), vec![(0, 1), (0, 2), (1, 2)]);
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let m = g.measure_x_graph(3).unwrap();
        assert_eq!(edges(&m), vec![(0, 1)]);
        assert!(!m.is_present(3));
    }

    #[test]
    fn y_rule_examples() {
        let chain = Graph::path(3);
        assert_eq!(edges(&chain.measure_y_graph(1).unwrap()), vec![(0, 2)]);
        let cycle = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(edges(&cycle.measure_y_graph(0).unwrap()), vec![(1, 2), (1, 3)]);
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(edges(&g.measure_y_graph(2).unwrap()), vec![(0, 1)]);
    }

    #[test]
    fn z_rule_examples() {
        assert!(Graph::path(3).measure_z_graph(1).unwrap().edges().is_empty());
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap().measure_z_graph(0).unwrap();
        assert_eq!(g.present_vertices().collect::<Vec<_>>(), vec![1]);
        let g = Graph::empty(3).measure_z_graph(2).unwrap();
        assert_eq!(g.num_present(), 2);
    }

    #[test]
    fn component_examples() {
        assert_eq!(Graph::empty(4).connected_components().len(), 4);
        assert_eq!(Graph::path(5).connected_components(), vec![vec![0, 1, 2, 3, 4]]);
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }

    #[test]
    fn shortest_path_prefers_small_indices() {
        let cycle = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(cycle.shortest_path(1, 3), Some(vec![1, 0, 3]));
        assert_eq!(Graph::empty(2).shortest_path(0, 1), None);
    }

    #[test]
    fn dot_lists_nodes_and_edges() {
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let dot = g.to_dot("G", |v| v.to_string());
        assert_eq!(
            dot,
            "graph G {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  2 [label=\"2\"];\n  0 -- 2;\n}\n"
        );
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..80).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                let mut g = Graph::empty(n);
                for a in 0..n {
                    for b in 0..a {
                        if it.next().unwrap() {
                            g.add_edge(a, b).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn local_complement_is_valid_involution(g in arb_graph(), seed in any::<usize>()) {
            let v = seed % g.len();
            let once = g.local_complement(v).unwrap();
            prop_assert!(once.is_valid());
            prop_assert_eq!(once.local_complement(v).unwrap(), g.clone());
            // Connectivity is invariant under local complementation.
            prop_assert_eq!(once.connected_components(), g.connected_components());
        }

        #[test]
        fn measurement_rules_keep_graph_valid(g in arb_graph(), seed in any::<usize>(), b in 0u8..3) {
            let v = seed % g.len();
            let basis = [Basis::X, Basis::Y, Basis::Z][b as usize];
            let mut h = g.clone();
            h.measure_mut(v, basis).unwrap();
            prop_assert!(h.is_valid());
            prop_assert!(!h.is_present(v));
            prop_assert_eq!(h.num_present(), g.num_present() - 1);
        }
    }
}
