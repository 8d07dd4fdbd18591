use proptest::prelude::*;
use toric_lab::decoder::{
    decode, DecoderConfig, DecoderState, Rule, Status, TieRule,
};
use toric_lab::lattice::{EdgeId, ErrorVector, SyndromeVector, ToricLattice, VertexId};

fn lattice(d: usize) -> ToricLattice {
    ToricLattice::new(d).unwrap()
}

#[test]
fn weight_1_errors_converge_at_iteration_1() {
    let lat = lattice(7);
    let g = lat.to_tanner();
    let cfg = DecoderConfig::ms(4);
    for q in 0..lat.n_qubits() {
        let e = ErrorVector::from_indices(lat.n_qubits(), &[q]);
        let s = lat.syndrome_of(&e).unwrap();
        let out = decode(&g, s.bits(), &cfg, &[]).unwrap();
        assert_eq!(out.status, Status::Converged { at_iteration: 1 });
        assert_eq!(out.estimate, e.bits());
    }
}

#[test]
fn zero_syndrome_app_grows_as_1_plus_2i() {
    let lat = lattice(7);
    let g = lat.to_tanner();
    let cfg = DecoderConfig::ms(6).without_stopping();
    let watch: Vec<usize> = (0..lat.n_qubits()).collect();
    let s = SyndromeVector::zeros(lat.n_checks());
    let out = decode(&g, s.bits(), &cfg, &watch).unwrap();
    assert_eq!(out.first_satisfied, Some(1));
    for (i, row) in out.app_trace.iter().enumerate() {
        let expected = 1 + 2 * (i as i64 + 1);
        assert!(row.iter().all(|&a| a == expected));
    }
}

#[test]
fn single_step_on_zero_syndrome() {
    let lat = lattice(5);
    let g = lat.to_tanner();
    let cfg = DecoderConfig::ms(1);
    let s = SyndromeVector::zeros(lat.n_checks());
    let mut state = DecoderState::init(&g, &cfg);
    state.step(&g, s.bits(), &cfg);
    // Every check→variable message is +1, so APP = 1 + 1 + 1 = 3.
    for q in 0..g.n_vars() {
        assert_eq!(state.app_of(q), 3);
    }
}

#[test]
fn step_on_fake_syndrome_pushes_neighbors_down() {
    let lat = lattice(5);
    let g = lat.to_tanner();
    let cfg = DecoderConfig::ms(1);
    let c = lat.check_index(VertexId { r: 2, c: 2 });
    let mut bits = vec![false; lat.n_checks()];
    bits[c] = true;
    let mut state = DecoderState::init(&g, &cfg);
    state.step(&g, &bits, &cfg);
    // Messages out of the unsatisfied check are −1: its neighbors see
    // 1 + 1 − 1 = 1, everyone else 3.
    for q in 0..g.n_vars() {
        let expected = if lat.check_edge_list(c).contains(&q) { 1 } else { 3 };
        assert_eq!(state.app_of(q), expected, "qubit {q}");
    }
}

#[test]
fn two_steps_match_decode_at_iteration_2() {
    let lat = lattice(7);
    let g = lat.to_tanner();
    let e = ErrorVector::from_edges(&lat, &[EdgeId::h(1, 1), EdgeId::v(4, 2)]);
    let s = lat.syndrome_of(&e).unwrap();
    let cfg = DecoderConfig::ms(2).without_stopping();
    let mut state = DecoderState::init(&g, &cfg);
    state.step(&g, s.bits(), &cfg);
    state.step(&g, s.bits(), &cfg);
    let watch: Vec<usize> = (0..g.n_vars()).collect();
    let out = decode(&g, s.bits(), &cfg, &watch).unwrap();
    let apps: Vec<i64> = watch.iter().map(|&q| state.app_of(q)).collect();
    assert_eq!(&apps, out.app_trace.last().unwrap());
}

#[test]
fn diagonal_weight_2_degenerate_is_exhausted_with_symmetric_apps() {
    // Two boundary edges of one plaquette sharing a corner; the syndrome
    // lights two diagonal corners. Min-sum never converges, and around each
    // unsatisfied check the APPs are equal within the two mirror pairs
    // exchanged by the diagonal reflection, at every iteration.
    let lat = lattice(7);
    let g = lat.to_tanner();
    let e = ErrorVector::from_edges(&lat, &[EdgeId::h(0, 0), EdgeId::v(0, 1)]);
    let s = lat.syndrome_of(&e).unwrap();
    let lit: Vec<usize> = s.unsatisfied().collect();
    assert_eq!(lit, vec![lat.check(0, 0), lat.check(1, 1)]);
    let watch: Vec<usize> = (0..g.n_vars()).collect();
    let cfg = DecoderConfig::ms(30).without_stopping();
    let out = decode(&g, s.bits(), &cfg, &watch).unwrap();
    assert_eq!(out.first_satisfied, None);
    for row in &out.app_trace {
        // At check (0,0): inward pair {H(0,0), V(0,0)}, outward pair
        // {H(0,6), V(6,0)}; mirrored at check (1,1).
        assert_eq!(row[lat.h(0, 0)], row[lat.v(0, 0)]);
        assert_eq!(row[lat.h(0, -1)], row[lat.v(-1, 0)]);
        assert_eq!(row[lat.h(1, 0)], row[lat.v(0, 1)]);
        assert_eq!(row[lat.h(1, 1)], row[lat.v(1, 1)]);
    }
}

#[test]
fn square_weight_2_degenerate_is_exhausted() {
    let lat = lattice(7);
    let g = lat.to_tanner();
    let e = ErrorVector::from_edges(&lat, &[EdgeId::h(0, 0), EdgeId::h(1, 0)]);
    let s = lat.syndrome_of(&e).unwrap();
    assert_eq!(s.weight(), 4);
    let cfg = DecoderConfig::ms(100);
    let out = decode(&g, s.bits(), &cfg, &[]).unwrap();
    assert_eq!(out.status, Status::Exhausted { t_max: 100 });
}

#[test]
fn three_edges_at_one_check_converge_to_the_middle() {
    // Three edges sharing one check: the syndrome has weight 4 and three
    // minimal explanations; min-sum converges to the middle one (the star
    // itself) in one iteration.
    let lat = lattice(7);
    let g = lat.to_tanner();
    let e = ErrorVector::from_edges(&lat, &[EdgeId::h(0, 0), EdgeId::h(0, 1), EdgeId::v(0, 1)]);
    let s = lat.syndrome_of(&e).unwrap();
    assert_eq!(s.weight(), 4);
    let out = decode(&g, s.bits(), &DecoderConfig::ms(16), &[]).unwrap();
    assert_eq!(out.status, Status::Converged { at_iteration: 1 });
    assert_eq!(out.estimate, e.bits());
}

fn random_syndrome(lat: &ToricLattice, bits: &[bool]) -> Vec<bool> {
    bits[..lat.n_checks()].to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ms_messages_are_odd_integers(raw in prop::collection::vec(any::<bool>(), 49)) {
        let lat = lattice(7);
        let g = lat.to_tanner();
        let s = random_syndrome(&lat, &raw);
        let cfg = DecoderConfig::ms(6).without_stopping();
        let watch: Vec<usize> = (0..g.n_vars()).collect();
        let out = decode(&g, &s, &cfg, &watch).unwrap();
        for (i, row) in out.app_trace.iter().enumerate() {
            let bound = 1 + 2 * (i as i64 + 1) * 4;
            for &a in row {
                prop_assert_eq!(a.rem_euclid(2), 1);
                prop_assert!(a.abs() <= bound);
            }
        }
    }

    #[test]
    fn nms_with_unit_lambda_equals_ms(raw in prop::collection::vec(any::<bool>(), 49)) {
        let lat = lattice(7);
        let g = lat.to_tanner();
        let s = random_syndrome(&lat, &raw);
        let watch: Vec<usize> = (0..g.n_vars()).collect();
        let ms = decode(&g, &s, &DecoderConfig::ms(8).without_stopping(), &watch).unwrap();
        let nms = decode(
            &g,
            &s,
            &DecoderConfig::nms(16, 8).unwrap().without_stopping(),
            &watch,
        )
        .unwrap();
        prop_assert_eq!(ms.app_trace.len(), nms.app_trace.len());
        for (a, b) in ms.app_trace.iter().zip(&nms.app_trace) {
            for (&x, &y) in a.iter().zip(b) {
                prop_assert_eq!(x as f64, y);
            }
        }
        prop_assert_eq!(ms.first_satisfied, nms.first_satisfied);
    }

    #[test]
    fn decoding_is_deterministic(raw in prop::collection::vec(any::<bool>(), 49)) {
        let lat = lattice(7);
        let g = lat.to_tanner();
        let s = random_syndrome(&lat, &raw);
        let cfg = DecoderConfig::ms(8);
        let a = decode(&g, &s, &cfg, &[0, 1, 2]).unwrap();
        let b = decode(&g, &s, &cfg, &[0, 1, 2]).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.estimate, b.estimate);
        prop_assert_eq!(a.app_trace, b.app_trace);
    }
}

#[test]
fn tie_rule_is_configurable() {
    // Craft a graph where an APP hits exactly zero: a single variable in a
    // single satisfied check would stay positive, so instead check the rule
    // switch on a hand-built two-variable graph.
    use toric_lab::tanner::TannerGraph;
    let g = TannerGraph::new(2, vec![vec![0, 1]]);
    let s = vec![true];
    // Iteration 1: check msg to each var = −1 (prior 1 from the other
    // side): APP = 1 − 1 = 0.
    let mut cfg = DecoderConfig::ms(1);
    cfg.tie_rule = TieRule::ZeroMeansNoError;
    let out = decode(&g, &s, &cfg, &[0, 1]).unwrap();
    assert_eq!(out.app_trace[0], vec![0, 0]);
    assert_eq!(out.estimate, vec![false, false]);
    cfg.tie_rule = TieRule::ZeroMeansError;
    let out = decode(&g, &s, &cfg, &[0, 1]).unwrap();
    assert_eq!(out.estimate, vec![true, true]);
    assert_eq!(out.status, Status::Exhausted { t_max: 1 });
}

#[test]
fn bp_converges_on_weight_1() {
    let lat = lattice(7);
    let g = lat.to_tanner();
    let e = ErrorVector::from_edges(&lat, &[EdgeId::h(3, 3)]);
    let s = lat.syndrome_of(&e).unwrap();
    let cfg = DecoderConfig::bp(0.05, 20).unwrap();
    let out = decode(&g, s.bits(), &cfg, &[]).unwrap();
    assert!(out.status.converged_at().is_some());
    assert_eq!(out.estimate, e.bits());
}

#[test]
fn config_validation() {
    assert!(DecoderConfig::nms(0, 10).is_err());
    assert!(DecoderConfig::nms(17, 10).is_err());
    assert!(DecoderConfig::bp(0.0, 10).is_err());
    assert!(DecoderConfig::bp(0.5, 10).is_err());
    assert!(matches!(DecoderConfig::nms(8, 10).unwrap().rule, Rule::Normalized(l) if l == 0.5));

    let lat = lattice(5);
    let g = lat.to_tanner();
    let s = vec![false; 7];
    assert!(decode(&g, &s, &DecoderConfig::ms(4), &[]).is_err());
}
