use mipt_core::verify;

#[test]
fn worked_examples_reproduce() {
    let r = verify::worked_examples();
    assert!(r.passed(), "{r}");
}

#[test]
fn tableau_matches_dense_expectations() {
    let r = verify::tableau_vs_dense(300, 6, 101);
    assert!(r.passed(), "{r}");
}

#[test]
fn graph_conversion_reproduces_state() {
    let r = verify::conversion_vs_dense(300, 6, 102);
    assert!(r.passed(), "{r}");
}

#[test]
fn measurement_rules_match_dense() {
    let r = verify::graph_rules_vs_dense(100, 6, 103);
    assert!(r.passed(), "{r}");
}

#[test]
fn disconnected_pairs_cannot_be_entangled() {
    let r = verify::le_completeness(5);
    assert!(r.passed(), "{r}");
}

#[test]
fn protocol_produces_bell_pairs() {
    let r = verify::le_soundness(40, 6, 104);
    assert!(r.passed(), "{r}");
}

#[test]
fn concurrence_matches_dense() {
    let r = verify::concurrence_vs_dense(300, 105);
    assert!(r.passed(), "{r}");
}
