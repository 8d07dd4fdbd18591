use toric_lab::decoder::DecoderConfig;
use toric_lab::degeneracy::{
    canonical_errors, is_degenerate, localized_ml_decode, min_weight_explanations, radius_scan,
    ScanDecoder,
};
use toric_lab::lattice::{EdgeId, ErrorVector, SyndromeVector, ToricLattice};

fn lattice(d: usize) -> ToricLattice {
    ToricLattice::new(d).unwrap()
}

fn err(lat: &ToricLattice, edges: &[EdgeId]) -> ErrorVector {
    ErrorVector::from_edges(lat, edges)
}

#[test]
fn zero_syndrome_has_the_empty_explanation() {
    let lat = lattice(7);
    let s = SyndromeVector::zeros(lat.n_checks());
    let set = min_weight_explanations(&lat, &s, 3).unwrap();
    assert_eq!(set.min_weight, Some(0));
    assert_eq!(set.errors, vec![ErrorVector::zeros(lat.n_qubits())]);
    assert!(!set.truncated);
}

#[test]
fn weight_1_explanations_are_unique() {
    let lat = lattice(7);
    for q in 0..lat.n_qubits() {
        let e = ErrorVector::from_indices(lat.n_qubits(), &[q]);
        let s = lat.syndrome_of(&e).unwrap();
        let set = min_weight_explanations(&lat, &s, 3).unwrap();
        assert_eq!(set.min_weight, Some(1));
        assert_eq!(set.errors, vec![e.clone()]);
        assert!(!is_degenerate(&lat, &e).unwrap());
    }
}

#[test]
fn far_apart_pairs_are_non_degenerate() {
    let lat = lattice(7);
    let e = err(&lat, &[EdgeId::h(0, 0), EdgeId::h(3, 3)]);
    let s = lat.syndrome_of(&e).unwrap();
    let set = min_weight_explanations(&lat, &s, 3).unwrap();
    assert_eq!(set.min_weight, Some(2));
    assert_eq!(set.errors, vec![e.clone()]);
    assert!(!is_degenerate(&lat, &e).unwrap());
}

#[test]
fn corner_sharing_pair_has_two_explanations() {
    // Two plaquette-boundary edges meeting at a corner: the complementary
    // pair of the same plaquette explains the syndrome equally well.
    let lat = lattice(7);
    let e = err(&lat, &[EdgeId::h(0, 0), EdgeId::v(0, 1)]);
    let s = lat.syndrome_of(&e).unwrap();
    let set = min_weight_explanations(&lat, &s, 3).unwrap();
    assert_eq!(set.min_weight, Some(2));
    let twin = err(&lat, &[EdgeId::v(0, 0), EdgeId::h(1, 0)]);
    assert_eq!(set.errors.len(), 2);
    assert!(set.errors.contains(&e));
    assert!(set.errors.contains(&twin));
    assert!(is_degenerate(&lat, &e).unwrap());
    assert!(is_degenerate(&lat, &twin).unwrap());
}

#[test]
fn opposite_plaquette_pair_has_two_explanations() {
    let lat = lattice(7);
    let e = err(&lat, &[EdgeId::h(0, 0), EdgeId::h(1, 0)]);
    let s = lat.syndrome_of(&e).unwrap();
    let set = min_weight_explanations(&lat, &s, 3).unwrap();
    assert_eq!(set.min_weight, Some(2));
    let twin = err(&lat, &[EdgeId::v(0, 0), EdgeId::v(0, 1)]);
    assert_eq!(set.errors.len(), 2);
    assert!(set.errors.contains(&twin));
    assert!(is_degenerate(&lat, &e).unwrap());
}

#[test]
fn three_edge_star_has_three_explanations() {
    let lat = lattice(7);
    let e = err(&lat, &[EdgeId::h(0, 0), EdgeId::h(0, 1), EdgeId::v(0, 1)]);
    let s = lat.syndrome_of(&e).unwrap();
    let set = min_weight_explanations(&lat, &s, 3).unwrap();
    assert_eq!(set.min_weight, Some(3));
    assert_eq!(set.errors.len(), 3);
    assert!(set.errors.contains(&e));
    assert!(is_degenerate(&lat, &e).unwrap());
}

#[test]
fn weight_bound_and_input_validation() {
    let lat = lattice(7);
    let s = SyndromeVector::zeros(lat.n_checks());
    // Completeness only holds below d/2.
    assert!(min_weight_explanations(&lat, &s, 4).is_err());
    let mut fake = SyndromeVector::zeros(lat.n_checks());
    fake.fake = true;
    assert!(min_weight_explanations(&lat, &fake, 3).is_err());
    let odd = SyndromeVector::from_checks(
        &lat,
        &[toric_lab::lattice::VertexId { r: 0, c: 0 }],
        false,
    );
    assert!(min_weight_explanations(&lat, &odd, 3).is_err());
}

#[test]
fn localized_ml_returns_the_unique_explanation() {
    let lat = lattice(7);
    let e = err(&lat, &[EdgeId::h(1, 1), EdgeId::v(4, 4)]);
    let s = lat.syndrome_of(&e).unwrap();
    let out = localized_ml_decode(&lat, &s, 3, 7).unwrap();
    assert_eq!(out, e);
}

#[test]
fn localized_ml_is_seed_deterministic_on_ambiguity() {
    let lat = lattice(7);
    let e = err(&lat, &[EdgeId::h(0, 0), EdgeId::v(0, 1)]);
    let s = lat.syndrome_of(&e).unwrap();
    let a = localized_ml_decode(&lat, &s, 3, 42).unwrap();
    let b = localized_ml_decode(&lat, &s, 3, 42).unwrap();
    assert_eq!(a, b);
    // All four ambiguous qubits sit on one plaquette; agreed qubits are 0.
    let plaquette: Vec<usize> =
        lat.plaquette_edges(toric_lab::lattice::PlaquetteId { r: 0, c: 0 }).to_vec();
    for q in 0..lat.n_qubits() {
        if !plaquette.contains(&q) {
            assert!(!a.get(q));
        }
    }
}

#[test]
fn canonical_orbits_partition_the_error_sets() {
    let lat = lattice(7);
    let n = lat.n_qubits() as u64;
    let w1 = canonical_errors(&lat, 1);
    assert_eq!(w1.len(), 2);
    assert_eq!(w1.iter().map(|(_, o)| o).sum::<u64>(), n);
    let w2 = canonical_errors(&lat, 2);
    assert_eq!(w2.iter().map(|(_, o)| o).sum::<u64>(), n * (n - 1) / 2);
    let w3 = canonical_errors(&lat, 3);
    assert_eq!(w3.iter().map(|(_, o)| o).sum::<u64>(), n * (n - 1) * (n - 2) / 6);
    // 156947 errors of weight ≤ 3 in 49 full-size orbits each: 3203 classes.
    assert_eq!(w1.len() + w2.len() + w3.len(), 3203);
    // Every representative is the lexicographic minimum of its orbit, so it
    // contains the first edge of its orientation class.
    for (e, _) in &w2 {
        let support: Vec<usize> = e.support().collect();
        assert!(support.contains(&0) || support[0] == lat.d() * lat.d());
    }
}

#[test]
fn canonical_scan_matches_the_full_scan() {
    let lat = lattice(5);
    let decoder = ScanDecoder::Plain(DecoderConfig::ms(16));
    let full = radius_scan(&lat, &decoder, 2, false).unwrap();
    let canonical = radius_scan(&lat, &decoder, 2, true).unwrap();
    assert_eq!(full.omega, canonical.omega);
    for (f, c) in full.tallies.iter().zip(&canonical.tallies) {
        assert_eq!(f.weight, c.weight);
        assert_eq!(f.total, c.total);
        assert_eq!(f.non_degenerate, c.non_degenerate);
        assert_eq!(f.decoded, c.decoded);
        assert_eq!(f.degenerate_total, c.degenerate_total);
        assert_eq!(f.degenerate_decoded, c.degenerate_decoded);
        assert_eq!(f.max_iterations, c.max_iterations);
    }
}

#[test]
fn plain_scan_decodes_all_non_degenerate_pairs_at_d7() {
    let lat = lattice(7);
    let decoder = ScanDecoder::Plain(DecoderConfig::ms(16));
    let report = radius_scan(&lat, &decoder, 2, true).unwrap();
    assert_eq!(report.omega, 2);
    for t in &report.tallies {
        assert_eq!(t.decoded, t.non_degenerate, "weight {}", t.weight);
        assert!(t.failing_witnesses.is_empty());
    }
    assert_eq!(report.tallies[0].non_degenerate, 98);
    assert!(report.to_table().contains("radius >= 2"));
}
