//! Localizable entanglement between vertices of a graph state.
//!
//! For stabilizer states the localizable entanglement between two qubits is
//! either 0 or 1, and it is 1 exactly when the two vertices share a connected
//! component of the graph. [`le_protocol`] gives a measurement pattern that
//! realizes the Bell pair.

use crate::error::{check_index, Error, Result};
use crate::graphstate::{Basis, Graph};

/// Per-vertex instruction in a localization protocol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Measure(Basis),
    Keep,
}

/// Assignment of a measurement basis to every present vertex except the two
/// kept ones. Deleted vertices carry `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementPlan {
    pub actions: Vec<Option<Action>>,
    /// Order in which the measurements are carried out on the graph.
    pub order: Vec<usize>,
    pub kept: (usize, usize),
}

impl MeasurementPlan {
    pub fn action(&self, v: usize) -> Option<Action> {
        self.actions.get(v).copied().flatten()
    }

    /// Execute the plan with the graph measurement rules. Off-path Z
    /// measurements go first; the path interior is then contracted from the
    /// first kept vertex, which serves as the extra complementation vertex of
    /// each Y measurement.
    pub fn execute(&self, g: &Graph) -> Result<Graph> {
        let mut g = g.clone();
        let anchor = self.kept.0;
        for &v in &self.order {
            match self.action(v) {
                Some(Action::Measure(Basis::Y)) if g.has_edge(v, anchor) => {
                    g.measure_y_with_neighbor_mut(v, anchor)?
                }
                Some(Action::Measure(b)) => g.measure_mut(v, b)?,
                _ => return Err(Error::InvalidConfig(format!("vertex {v} has no measurement"))),
            }
        }
        Ok(g)
    }
}

fn check_pair(g: &Graph, i: usize, j: usize) -> Result<()> {
    for v in [i, j] {
        check_index(v, g.len())?;
        if !g.is_present(v) {
            return Err(Error::DeletedVertex(v));
        }
    }
    if i == j {
        return Err(Error::SameQubit(i));
    }
    Ok(())
}

/// Localizable entanglement of the pair `(i, j)`: 1 iff they are connected.
pub fn le_pair(g: &Graph, i: usize, j: usize) -> Result<u8> {
    check_pair(g, i, j)?;
    let labels = g.component_labels();
    Ok((labels[i] == labels[j]) as u8)
}

/// Constructive witness for `le_pair(g, i, j) = 1`: Z on every vertex off a
/// shortest `i`–`j` path, Y on every interior path vertex.
pub fn le_protocol(g: &Graph, i: usize, j: usize) -> Result<MeasurementPlan> {
    check_pair(g, i, j)?;
    let path = g.shortest_path(i, j).ok_or(Error::NotConnected(i, j))?;
    let mut actions: Vec<Option<Action>> = (0..g.len())
        .map(|v| g.is_present(v).then_some(Action::Measure(Basis::Z)))
        .collect();
    actions[i] = Some(Action::Keep);
    actions[j] = Some(Action::Keep);
    let interior = &path[1..path.len() - 1];
    for &v in interior {
        actions[v] = Some(Action::Measure(Basis::Y));
    }
    let mut order: Vec<usize> = g
        .present_vertices()
        .filter(|v| !path.contains(v))
        .collect();
    order.extend_from_slice(interior);
    Ok(MeasurementPlan { actions, order, kept: (i, j) })
}

/// Localizable entanglement between `reference` and the rest of the system:
/// 1 iff the reference vertex has any neighbour in its component.
pub fn le_ref(g: &Graph, reference: usize) -> Result<u8> {
    check_index(reference, g.len())?;
    if !g.is_present(reference) {
        return Err(Error::DeletedVertex(reference));
    }
    Ok((g.degree(reference) > 0) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_examples() {
        let chain = Graph::path(3);
        assert_eq!(le_pair(&chain, 0, 2).unwrap(), 1);
        assert_eq!(le_pair(&Graph::empty(2), 0, 1).unwrap(), 0);
        assert_eq!(le_pair(&chain, 1, 1), Err(Error::SameQubit(1)));
        let cut = chain.delete_vertex(1).unwrap();
        assert_eq!(le_pair(&cut, 0, 1), Err(Error::DeletedVertex(1)));
    }

    #[test]
    fn chain_protocol_measures_middle_in_y() {
        let chain = Graph::path(3);
        let plan = le_protocol(&chain, 0, 2).unwrap();
        assert_eq!(plan.action(1), Some(Action::Measure(Basis::Y)));
        assert_eq!(plan.action(0), Some(Action::Keep));
        assert_eq!(plan.execute(&chain).unwrap().edges(), vec![(0, 2)]);
    }

    #[test]
    fn adjacent_pair_keeps_edge() {
        let g = Graph::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        let plan = le_protocol(&g, 1, 2).unwrap();
        for v in [0, 3, 4] {
            assert_eq!(plan.action(v), Some(Action::Measure(Basis::Z)));
        }
        assert_eq!(plan.execute(&g).unwrap().edges(), vec![(1, 2)]);
        assert_eq!(le_protocol(&g, 1, 3), Err(Error::NotConnected(1, 3)));
    }

    #[test]
    fn cycle_protocol() {
        let cycle = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let plan = le_protocol(&cycle, 1, 3).unwrap();
        assert_eq!(plan.action(0), Some(Action::Measure(Basis::Y)));
        assert_eq!(plan.action(2), Some(Action::Measure(Basis::Z)));
        let out = plan.execute(&cycle).unwrap();
        assert_eq!(out.edges(), vec![(1, 3)]);
        assert_eq!(out.num_present(), 2);
    }

    #[test]
    fn long_path_contracts_to_edge() {
        let g = Graph::path(9);
        let plan = le_protocol(&g, 0, 8).unwrap();
        assert_eq!(plan.execute(&g).unwrap().edges(), vec![(0, 8)]);
        let plan = le_protocol(&g, 6, 2).unwrap();
        assert_eq!(plan.execute(&g).unwrap().edges(), vec![(2, 6)]);
    }

    #[test]
    fn reference_examples() {
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        assert_eq!(le_ref(&g, 2).unwrap(), 1);
        assert_eq!(le_ref(&g, 1).unwrap(), 0);
        assert!(le_ref(&g.delete_vertex(1).unwrap(), 1).is_err());
    }
}
