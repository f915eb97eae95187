//! Brute-force cross-checks of the stabilizer, graph and localization layers
//! against the dense oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::CliffordTwoQubit;
use crate::graphstate::{graph_to_tableau, tableau_to_graph, Basis, Graph};
use crate::le::{le_pair, le_protocol, Action};
use crate::observables::concurrence;
use crate::oracle::{build_graph_state, concurrence_dense, StateVector};
use crate::pauli::PauliString;
use crate::tableau::{Gate, StabilizerTableau};

const TOL: f64 = 1e-9;

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} failures", self.name, self.checks, self.failures)?;
        if let Some(msg) = &self.first_failure {
            write!(f, " (first: {msg})")?;
        }
        Ok(())
    }
}

/// Random gate on `n` qubits drawn from {H, S, S†, X, Z, CZ, CNOT, random
/// two-qubit Clifford}.
pub fn random_gate<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gate {
    let q = rng.random_range(0..n);
    if n == 1 {
        return match rng.random_range(0..5) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::SDag(q),
            3 => Gate::X(q),
            _ => Gate::Z(q),
        };
    }
    let mut other = rng.random_range(0..n - 1);
    if other >= q {
        other += 1;
    }
    match rng.random_range(0..8) {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::SDag(q),
        3 => Gate::X(q),
        4 => Gate::Z(q),
        5 => Gate::Cz(q, other),
        6 => Gate::Cnot(q, other),
        _ => Gate::Clifford(CliffordTwoQubit::sample(rng), q, other),
    }
}

/// Evolve a tableau and a dense vector in lockstep through a random circuit
/// with interleaved Z measurements. Measurement outcomes are drawn by the
/// tableau and imposed on the dense state; the Born probability of the chosen
/// outcome is checked along the way.
fn lockstep<R: Rng + ?Sized>(
    n: usize,
    steps: usize,
    measure_rate: f64,
    rng: &mut R,
    report: &mut SuiteReport,
) -> (StabilizerTableau, StateVector) {
    let mut t = StabilizerTableau::new(n).expect("n >= 1");
    let mut s = StateVector::zero(n).expect("n within oracle cap");
    for _ in 0..steps {
        if rng.random_bool(measure_rate) {
            let q = rng.random_range(0..n);
            let m = t.measure_z(q, rng).expect("in range");
            let [b0, b1] = s.measure_pauli_dense(q, Basis::Z).expect("in range");
            let branch = if m.outcome { b1 } else { b0 };
            let expected = if m.deterministic { 1.0 } else { 0.5 };
            report.check((branch.probability - expected).abs() < TOL, || {
                format!("n={n}: Z{q} outcome {} has probability {}", m.bit(), branch.probability)
            });
            if let Some(state) = branch.state {
                s = state;
            }
        } else {
            let g = random_gate(n, rng);
            t.apply(&g).expect("valid gate");
            s.apply_gate(&g).expect("valid gate");
        }
    }
    (t, s)
}

/// Tableau Pauli expectations versus dense `⟨P⟩` for every Pauli string.
pub fn tableau_vs_dense(trials: usize, max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("tableau expectation vs dense");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.random_range(1..=max_n);
        let (mut t, s) = lockstep(n, 6 * n, 0.2, &mut rng, &mut report);
        report.check(t.validate().is_ok(), || format!("n={n}: invariants violated"));
        for p in PauliString::all(n) {
            let tab = t.pauli_expectation(&p).expect("length matches") as f64;
            let dense = s.expectation(&p).expect("length matches");
            report.check((tab - dense).abs() < TOL, || format!("n={n}: <{p}> tableau {tab}, dense {dense}"));
        }
    }
    report
}

/// `tableau_to_graph` corrections applied to `|G⟩` reproduce the state.
pub fn conversion_vs_dense(trials: usize, max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("graph conversion vs dense");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.random_range(1..=max_n);
        let (t, s) = lockstep(n, 6 * n, 0.2, &mut rng, &mut report);
        let (g, fix) = tableau_to_graph(&t).expect("valid tableau");
        let mut rebuilt = build_graph_state(&g).expect("small graph");
        for gate in fix.gates() {
            rebuilt.apply_gate(&gate).expect("valid gate");
        }
        let f = rebuilt.fidelity(&s);
        report.check(f > 1.0 - 1e-10, || format!("n={n}: fidelity {f}"));
        // And back: |G⟩ → tableau → graph is the identity on graphs.
        let (h, id) = tableau_to_graph(&graph_to_tableau(&g).expect("graph")).expect("valid");
        report.check(h == g && id.is_identity(), || format!("n={n}: round trip changed the graph"));
    }
    report
}

fn random_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let density: f64 = rng.random_range(0.15..0.85);
    Graph::from_adjacency(n, |_, _| rng.random_bool(density))
}

fn subsets_up_to_half(qubits: &[usize]) -> Vec<Vec<usize>> {
    let m = qubits.len();
    (1..1usize << m)
        .filter(|mask| (mask.count_ones() as usize) * 2 <= m)
        .map(|mask| qubits.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &q)| q).collect())
        .collect()
}

/// Graph measurement rules versus dense measurement: identical entropies on
/// every bipartition of the surviving qubits, for every outcome branch.
pub fn graph_rules_vs_dense(graphs_per_n: usize, max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("graph measurement rules vs dense");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=max_n {
        for _ in 0..graphs_per_n {
            let g = random_graph(n, &mut rng);
            let state = build_graph_state(&g).expect("small graph");
            for v in 0..n {
                let survivors: Vec<usize> = (0..n).filter(|&q| q != v).collect();
                let regions = subsets_up_to_half(&survivors);
                for basis in [Basis::X, Basis::Y, Basis::Z] {
                    let mut h = g.clone();
                    h.measure_mut(v, basis).expect("present vertex");
                    let rule_state = build_graph_state(&h).expect("small graph");
                    let expected: Vec<f64> =
                        regions.iter().map(|a| rule_state.entropy(a).expect("in range")).collect();
                    for branch in state.measure_pauli_dense(v, basis).expect("in range") {
                        let Some(post) = branch.state else { continue };
                        let ok = regions
                            .iter()
                            .zip(&expected)
                            .all(|(a, e)| (post.entropy(a).expect("in range") - e).abs() < TOL);
                        report.check(ok, || {
                            format!("{basis:?} on {v} of {:?} (outcome {})", g.edges(), branch.outcome as u8)
                        });
                    }
                }
            }
        }
    }
    report
}

/// All leaves of measuring `sites` in order, skipping zero-probability branches.
fn leaves(state: &StateVector, sites: &[(usize, Basis)]) -> Vec<StateVector> {
    let Some((&(q, b), rest)) = sites.split_first() else {
        return vec![state.clone()];
    };
    state
        .measure_pauli_dense(q, b)
        .expect("in range")
        .into_iter()
        .filter_map(|br| br.state)
        .flat_map(|s| leaves(&s, rest))
        .collect()
}

/// Disconnected pairs: no Pauli-basis measurement pattern on the other
/// qubits entangles them, over all graphs on up to `max_n` vertices.
pub fn le_completeness(max_n: usize) -> SuiteReport {
    let mut report = SuiteReport::new("LE completeness (exhaustive plans)");
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..a).map(move |b| (b, a))).collect();
        for code in 0u64..1 << pairs.len() {
            let g = Graph::from_edges(
                n,
                &pairs.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, e)| *e).collect::<Vec<_>>(),
            )
            .expect("in range");
            let state = build_graph_state(&g).expect("small graph");
            for &(i, j) in &pairs {
                if le_pair(&g, i, j).expect("present") == 1 {
                    continue;
                }
                let others: Vec<usize> = (0..n).filter(|&v| v != i && v != j).collect();
                for plan in 0..3usize.pow(others.len() as u32) {
                    let sites: Vec<(usize, Basis)> = others
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| (v, [Basis::X, Basis::Y, Basis::Z][plan / 3usize.pow(k as u32) % 3]))
                        .collect();
                    for leaf in leaves(&state, &sites) {
                        let s = leaf.entropy(&[i]).expect("in range");
                        report.check(s.abs() < TOL, || {
                            format!("{:?}: pair ({i},{j}) entangled by {sites:?}", g.edges())
                        });
                    }
                }
            }
        }
    }
    report
}

/// Connected pairs: the localization plan contracts the graph to the single
/// edge `(i, j)` and physically leaves a Bell pair on every outcome branch;
/// `le_pair` is symmetric and LC-invariant.
pub fn le_soundness(graphs_per_n: usize, max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("LE protocol soundness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=max_n {
        for _ in 0..graphs_per_n {
            let g = random_graph(n, &mut rng);
            let state = build_graph_state(&g).expect("small graph");
            let lc = g.local_complement(rng.random_range(0..n)).expect("present");
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let le = le_pair(&g, i, j).expect("present");
                    report.check(le == le_pair(&g, j, i).expect("present"), || format!("asymmetric ({i},{j})"));
                    report.check(le == le_pair(&lc, i, j).expect("present"), || format!("LC changed ({i},{j})"));
                    if le == 0 || j < i {
                        continue;
                    }
                    let plan = le_protocol(&g, i, j).expect("connected");
                    let out = plan.execute(&g).expect("valid plan");
                    report.check(out.num_present() == 2 && out.edges() == vec![(i, j)], || {
                        format!("{:?}: plan for ({i},{j}) left {:?}", g.edges(), out.edges())
                    });
                    let sites: Vec<(usize, Basis)> = plan
                        .order
                        .iter()
                        .map(|&v| match plan.action(v) {
                            Some(Action::Measure(b)) => (v, b),
                            _ => unreachable!("ordered vertices are measured"),
                        })
                        .collect();
                    for leaf in leaves(&state, &sites) {
                        let s = leaf.entropy(&[i]).expect("in range");
                        report.check((s - 1.0).abs() < TOL, || {
                            format!("{:?}: pair ({i},{j}) has entropy {s} after {sites:?}", g.edges())
                        });
                    }
                }
            }
        }
    }
    report
}

/// Correlator-built two-qubit marginals and their concurrence versus the
/// dense partial trace and an independent concurrence route.
pub fn concurrence_vs_dense(trials: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("concurrence vs dense");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 4;
    for _ in 0..trials {
        let (mut t, s) = lockstep(n, 16, 0.1, &mut rng, &mut report);
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        let rho_t = t.reduced_density_2q(a, b).expect("distinct");
        let rho_d = s.partial_trace(&[a, b]).expect("in range");
        let diff = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .map(|(r, c)| (rho_t.0[(r, c)] - rho_d[(r, c)]).norm())
            .fold(0.0, f64::max);
        report.check(diff < TOL, || format!("marginal ({a},{b}) differs by {diff}"));
        let ev = rho_t.eigenvalues();
        report.check(ev[0] > -1e-12 && ev[3] < 1.0 + 1e-12 && (rho_t.trace() - 1.0).abs() < 1e-12, || {
            format!("eigenvalues {ev:?}")
        });
        let ct = concurrence(&rho_t).expect("valid density");
        let cd = concurrence_dense(&rho_d).expect("4x4");
        report.check((ct - cd).abs() < TOL, || format!("concurrence {ct} vs dense {cd}"));
    }
    report
}

/// The four worked measurement examples on chain, star and square graphs,
/// written with 1-based vertex labels.
pub fn worked_examples() -> SuiteReport {
    let mut report = SuiteReport::new("worked measurement examples");
    let graph = |n: usize, edges: &[(usize, usize)]| {
        let e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Graph::from_edges(n, &e).expect("labels within range")
    };
    let one_based = |g: &Graph| -> Vec<(usize, usize)> { g.edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect() };
    let chain = graph(3, &[(1, 2), (2, 3)]);
    let star = graph(4, &[(4, 1), (4, 2), (4, 3)]);
    let square = graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
    type Case<'a> = (&'a str, &'a Graph, usize, Basis, Vec<usize>, Vec<(usize, usize)>);
    let cases: [Case; 4] = [
        ("Z on chain middle", &chain, 2, Basis::Z, vec![1, 3], vec![]),
        ("X on chain middle", &chain, 2, Basis::X, vec![1, 3], vec![(1, 3)]),
        ("X on star centre", &star, 4, Basis::X, vec![1, 2, 3], vec![(1, 2), (1, 3), (2, 3)]),
        ("Y on chain middle", &chain, 2, Basis::Y, vec![1, 3], vec![(1, 3)]),
    ];
    for (name, g, v, basis, vertices, edges) in cases {
        let out = g.measure(v - 1, basis).expect("present vertex");
        let got_vertices: Vec<usize> = out.present_vertices().map(|u| u + 1).collect();
        let got = one_based(&out);
        report.check(got_vertices == vertices && got == edges, || format!("{name}: got {got:?} on {got_vertices:?}"));
    }
    let out = square.measure(0, Basis::Y).expect("present vertex");
    let got = one_based(&out);
    report.check(got == vec![(2, 3), (2, 4)], || format!("Y on square: got {got:?}"));
    report
}

/// Every suite at the sizes used by the acceptance run.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    vec![
        worked_examples(),
        tableau_vs_dense(1000, 6, seed),
        conversion_vs_dense(500, 6, seed.wrapping_add(1)),
        graph_rules_vs_dense(500, 6, seed.wrapping_add(2)),
        le_completeness(5),
        le_soundness(100, 6, seed.wrapping_add(3)),
        concurrence_vs_dense(1000, seed.wrapping_add(4)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in [
            worked_examples(),
            tableau_vs_dense(40, 4, 1),
            conversion_vs_dense(40, 5, 2),
            graph_rules_vs_dense(10, 5, 3),
            le_completeness(4),
            le_soundness(10, 5, 4),
            concurrence_vs_dense(50, 5),
        ] {
            assert!(r.passed(), "{r}");
        }
    }
}
