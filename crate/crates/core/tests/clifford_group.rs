use std::collections::BTreeSet;

use mipt_core::clifford::{GROUP_ORDER, SYMPLECTIC_ORDER};
use mipt_core::CliffordTwoQubit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Local Paulis packed as xa | za << 1 | xb << 2 | zb << 3.
fn omega(p: u8, q: u8) -> u8 {
    let bit = |v: u8, k: u8| (v >> k) & 1;
    (bit(p, 0) & bit(q, 1) ^ bit(p, 1) & bit(q, 0) ^ bit(p, 2) & bit(q, 3) ^ bit(p, 3) & bit(q, 2)) & 1
}

fn preserves_form(images: [u8; 4]) -> bool {
    let basis = [1u8, 2, 4, 8];
    (0..4).all(|i| (0..4).all(|j| omega(images[i], images[j]) == omega(basis[i], basis[j])))
}

#[test]
fn brute_force_symplectic_count_matches_group() {
    let mut brute = BTreeSet::new();
    for code in 0u32..1 << 16 {
        let images = [0, 1, 2, 3].map(|k| ((code >> (4 * k)) & 0xf) as u8);
        if preserves_form(images) {
            brute.insert(images);
        }
    }
    assert_eq!(brute.len(), SYMPLECTIC_ORDER);

    let group: BTreeSet<[u8; 4]> = (0..GROUP_ORDER).map(|i| CliffordTwoQubit::from_index(i).images()).collect();
    assert_eq!(group, brute);
}

#[test]
fn every_element_has_sixteen_sign_variants() {
    let mut per_map = std::collections::BTreeMap::<[u8; 4], BTreeSet<u8>>::new();
    for i in 0..GROUP_ORDER {
        let c = CliffordTwoQubit::from_index(i);
        assert_eq!(c.index(), i);
        per_map.entry(c.images()).or_default().insert(c.signs());
    }
    assert!(per_map.values().all(|s| s.len() == 16));
}

#[test]
fn sampling_is_uniform_over_the_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 1_000_000usize;
    let mut counts = vec![0u32; GROUP_ORDER];
    for _ in 0..samples {
        counts[CliffordTwoQubit::sample(&mut rng).index()] += 1;
    }
    let expected = samples as f64 / GROUP_ORDER as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dof = (GROUP_ORDER - 1) as f64;
    // chi² with k dof has mean k and standard deviation sqrt(2k).
    let z = (chi2 - dof) / (2.0 * dof).sqrt();
    assert!(z.abs() < 5.0, "chi2 = {chi2}, z = {z}");
    assert!(counts.iter().all(|&c| c > 0));
}

#[test]
fn conjugation_preserves_commutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let c = CliffordTwoQubit::sample(&mut rng);
        for p in 0..16u8 {
            for q in 0..16u8 {
                assert_eq!(omega(c.conjugate(p).0, c.conjugate(q).0), omega(p, q));
            }
        }
        assert_eq!(c.conjugate(0), (0, false));
    }
}
