use mipt_core::observables::Accumulator;
use mipt_core::{run_ensemble, run_realization, run_two_ancilla, CircuitConfig, InitialState, Protocol};

fn mean_r(cfg: &CircuitConfig, n: u64) -> (f64, f64) {
    let acc: Accumulator = run_ensemble(cfg, 0..n).unwrap().iter().map(|r| r.order_parameter).collect();
    let e = acc.estimate().unwrap();
    (e.mean, e.stderr)
}

#[test]
fn unitary_dynamics_give_a_spanning_component() {
    let cfg = CircuitConfig::new(16, 0.0);
    let recs = run_ensemble(&cfg, 0..200u64).unwrap();
    let spanning = recs.iter().filter(|r| r.order_parameter == 1.0).count();
    assert!(spanning as f64 / 200.0 >= 0.99, "{spanning}/200");
}

#[test]
fn measurement_rate_matches_p() {
    let (l, p, n) = (16, 0.2, 50u64);
    let cfg = CircuitConfig::new(l, p);
    let mut count = 0usize;
    for r in 0..n {
        count += run_realization(&cfg.clone().with_realization(r)).unwrap().log.len();
    }
    let trials = (n as usize * cfg.layers * l) as f64;
    let se = (p * (1.0 - p) / trials).sqrt();
    assert!((count as f64 / trials - p).abs() < 3.0 * se, "rate {}", count as f64 / trials);
}

#[test]
fn measurement_log_is_consistent() {
    let cfg = CircuitConfig::new(12, 0.3).with_protocol(Protocol::TwoAncilla).with_seed(9);
    let (out, _) = run_two_ancilla(&cfg).unwrap();
    assert!(out.log.iter().all(|m| m.site < 12 && (1..=cfg.layers).contains(&m.layer) && m.outcome <= 1));
    assert!(out.log.windows(2).all(|w| (w[0].layer, w[0].site) < (w[1].layer, w[1].site)));
    assert_eq!(out.graph.len(), 14);
}

#[test]
fn half_chain_entropy_saturates_by_four_l() {
    for l in [8usize, 16, 32] {
        let entropy = |layers: usize| -> Accumulator {
            (0..20u64)
                .map(|r| {
                    let cfg = CircuitConfig::new(l, 0.0).with_layers(layers).with_realization(r);
                    let region: Vec<usize> = (0..l / 2).collect();
                    run_realization(&cfg).unwrap().tableau.entanglement_entropy(&region).unwrap() as f64
                })
                .collect()
        };
        let (a, b) = (entropy(4 * l).estimate().unwrap(), entropy(8 * l).estimate().unwrap());
        let se = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() <= 3.0 * se + 0.25, "L = {l}: {a:?} vs {b:?}");
        assert!(a.mean >= l as f64 / 2.0 - 2.0, "L = {l}: not volume law {a:?}");
    }
}

#[test]
fn order_parameter_decreases_through_the_transition() {
    let r: Vec<(f64, f64)> = [0.14, 0.16, 0.18].iter().map(|&p| mean_r(&CircuitConfig::new(32, p), 200)).collect();
    assert!(r[0].0 > r[1].0 && r[1].0 > r[2].0, "{r:?}");
}

#[test]
fn steady_state_forgets_the_initial_product_state() {
    let base = CircuitConfig::new(16, 0.2).with_seed(4);
    let zero = mean_r(&base, 300);
    let plus = mean_r(&base.clone().with_initial_state(InitialState::Plus), 300);
    let se = (zero.1.powi(2) + plus.1.powi(2)).sqrt();
    assert!((zero.0 - plus.0).abs() < 4.0 * se, "{zero:?} vs {plus:?}");
}

#[test]
fn replay_is_bit_identical() {
    let cfg = CircuitConfig::new(24, 0.15).with_protocol(Protocol::TwoAncilla).with_seed(77).with_realization(5);
    let (a, rho_a) = run_two_ancilla(&cfg).unwrap();
    let (b, rho_b) = run_two_ancilla(&cfg).unwrap();
    assert_eq!(a.graph, b.graph);
    assert_eq!(a.log, b.log);
    assert_eq!(a.corrections, b.corrections);
    assert_eq!(rho_a, rho_b);
}
