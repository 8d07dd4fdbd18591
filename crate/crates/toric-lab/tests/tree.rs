use proptest::prelude::*;
use toric_lab::decoder::{decode, DecoderConfig};
use toric_lab::lattice::{EdgeId, SyndromeVector, ToricLattice};
use toric_lab::tree::{DecodingTree, TreeConfiguration, ITERATION_DEPTH_OFFSET};

fn lattice(d: usize) -> ToricLattice {
    ToricLattice::new(d).unwrap()
}

#[test]
fn size_grows_as_two_times_three_to_the_level() {
    let lat = lattice(7);
    for depth in 1..=4usize {
        let t = DecodingTree::build(&lat, EdgeId::h(2, 3), depth).unwrap();
        // 1 root edge plus 2·3^k edges at each level k ≥ 1.
        let expect_edges = 1 + (1..=depth).map(|k| 2 * 3usize.pow(k as u32)).sum::<usize>();
        let expect_vertices = 2 + (1..depth).map(|k| 2 * 3usize.pow(k as u32)).sum::<usize>();
        assert_eq!(t.n_edges(), expect_edges);
        assert_eq!(t.n_vertices(), expect_vertices);
        assert_eq!(t.depth(), depth);
        // Every non-root level-`depth` edge dangles, nothing else does.
        for (i, e) in t.edges().iter().enumerate() {
            assert_eq!(t.is_dangling(i), i != 0 && e.level == depth);
        }
    }
}

#[test]
fn depth_limits_are_enforced() {
    let lat = lattice(7);
    assert!(DecodingTree::build(&lat, EdgeId::h(0, 0), 0).is_err());
    assert!(DecodingTree::build(&lat, EdgeId::h(0, 0), 13).is_err());
    assert!(DecodingTree::build_with_cap(&lat, EdgeId::h(0, 0), 3, 2).is_err());
    assert!(DecodingTree::build_with_cap(&lat, EdgeId::h(0, 0), 3, 3).is_ok());
}

#[test]
fn deep_trees_repeat_lattice_checks() {
    // The tree unrolls the lattice: beyond a few levels the same check
    // appears at several tree vertices.
    let lat = lattice(7);
    let t = DecodingTree::build(&lat, EdgeId::h(0, 0), 4).unwrap();
    let mut seen = vec![0usize; lat.n_checks()];
    for v in t.vertices() {
        seen[v.check] += 1;
    }
    assert!(seen.iter().any(|&n| n > 1));
    assert_eq!(seen.iter().sum::<usize>(), t.n_vertices());
}

#[test]
fn zero_syndrome_calibrates_depth_against_iteration() {
    // On the zero syndrome the min-sum APP of every qubit at iteration i is
    // 1 + 2i, and the tree oracle must reproduce it as w_bullet − w_circ at
    // the matching depth. This pins ITERATION_DEPTH_OFFSET.
    let lat = lattice(7);
    let s = SyndromeVector::zeros(lat.n_checks());
    for i in 1..=5usize {
        let depth = i + ITERATION_DEPTH_OFFSET;
        let t = DecodingTree::build(&lat, EdgeId::v(3, 1), depth).unwrap();
        let (w_circ, w_bullet) = t.min_config_weights(&s);
        assert_eq!(w_circ, 0);
        assert_eq!(w_bullet - w_circ, 1 + 2 * i as u64);
    }
}

#[test]
fn dp_agrees_with_full_enumeration_at_small_depth() {
    let lat = lattice(7);
    let e = toric_lab::lattice::ErrorVector::from_edges(
        &lat,
        &[EdgeId::h(1, 1), EdgeId::v(2, 2), EdgeId::h(4, 0)],
    );
    let s = lat.syndrome_of(&e).unwrap();
    for q in [EdgeId::h(1, 1), EdgeId::v(2, 3), EdgeId::h(5, 5)] {
        for depth in 1..=2usize {
            let t = DecodingTree::build(&lat, q, depth).unwrap();
            let (w_circ, w_bullet) = t.min_config_weights(&s);
            for (root_label, dp) in [(false, w_circ), (true, w_bullet)] {
                let configs = t.enumerate_configurations(&s, root_label).unwrap();
                assert!(!configs.is_empty());
                assert!(configs.iter().all(|c| t.is_configuration(&s, &c.labels)));
                assert!(configs.iter().all(|c| c.root_label() == root_label));
                let brute = configs.iter().map(|c| c.weight() as u64).min().unwrap();
                assert_eq!(dp, brute, "q={q} depth={depth} root={root_label}");
            }
        }
    }
}

#[test]
fn enumeration_count_is_four_to_the_vertices() {
    let lat = lattice(7);
    let t = DecodingTree::build(&lat, EdgeId::h(0, 0), 1).unwrap();
    let s = SyndromeVector::zeros(lat.n_checks());
    let configs = t.enumerate_configurations(&s, false).unwrap();
    assert_eq!(configs.len(), 4usize.pow(t.n_vertices() as u32));
    // Depth 3 has 26 vertices: enumeration must refuse.
    let t3 = DecodingTree::build(&lat, EdgeId::h(0, 0), 3).unwrap();
    assert!(t3.enumerate_configurations(&s, false).is_err());
}

#[test]
fn budgeted_search_agrees_with_dp_at_depth_3() {
    let lat = lattice(7);
    let e = toric_lab::lattice::ErrorVector::from_edges(
        &lat,
        &[EdgeId::h(0, 0), EdgeId::v(3, 3)],
    );
    let s = lat.syndrome_of(&e).unwrap();
    for q in [EdgeId::h(0, 0), EdgeId::h(0, 1), EdgeId::v(3, 3)] {
        let t = DecodingTree::build(&lat, q, 3).unwrap();
        let (w_circ, w_bullet) = t.min_config_weights(&s);
        assert_eq!(t.min_weight_exhaustive(&s, false, 100_000_000).unwrap(), w_circ);
        assert_eq!(t.min_weight_exhaustive(&s, true, 100_000_000).unwrap(), w_bullet);
    }
    // A tiny node budget must error, not silently return.
    let t = DecodingTree::build(&lat, EdgeId::h(0, 0), 3).unwrap();
    assert!(t.min_weight_exhaustive(&s, true, 10).is_err());
}

#[test]
fn tree_oracle_reproduces_min_sum_apps() {
    // The central equivalence: the min-sum APP of qubit q at iteration i
    // equals w_bullet − w_circ on the depth-(i + offset) tree rooted at q.
    let lat = lattice(7);
    let g = lat.to_tanner();
    let e = toric_lab::lattice::ErrorVector::from_edges(
        &lat,
        &[EdgeId::h(2, 2), EdgeId::v(5, 1)],
    );
    let s = lat.syndrome_of(&e).unwrap();
    let qubits: Vec<usize> = s
        .unsatisfied()
        .flat_map(|c| lat.check_edge_list(c).to_vec())
        .collect();
    let cfg = DecoderConfig::ms(4).without_stopping();
    let out = decode(&g, s.bits(), &cfg, &qubits).unwrap();
    for i in 1..=4usize {
        for (k, &q) in qubits.iter().enumerate() {
            let t = DecodingTree::build(&lat, lat.edge_at(q), i + ITERATION_DEPTH_OFFSET).unwrap();
            let (w_circ, w_bullet) = t.min_config_weights(&s);
            let expected = w_bullet as i64 - w_circ as i64;
            assert_eq!(out.app_trace[i - 1][k], expected, "q={} i={i}", lat.edge_at(q));
        }
    }
}

#[test]
fn walk_inversion_preserves_configurations() {
    let lat = lattice(7);
    let t = DecodingTree::build(&lat, EdgeId::h(3, 3), 1).unwrap();
    let s = SyndromeVector::zeros(lat.n_checks());
    let cfg = TreeConfiguration { labels: vec![false; t.n_edges()] };
    // A walk from one dangling edge through the root to another.
    let [v0, v1] = t.root_vertices();
    let a = t.vertices()[v0].child_edges[0];
    let b = t.vertices()[v1].child_edges[2];
    let flipped = t.invert_walk(&cfg, &[a, 0, b]).unwrap();
    assert!(t.is_configuration(&s, &flipped.labels));
    assert_eq!(flipped.weight(), cfg.weight() + 3);
    // Two dangling edges under the same vertex also form a walk.
    let c = t.vertices()[v0].child_edges[1];
    let flipped = t.invert_walk(&cfg, &[a, c]).unwrap();
    assert!(t.is_configuration(&s, &flipped.labels));
}

#[test]
fn invalid_walks_are_rejected() {
    let lat = lattice(7);
    let t = DecodingTree::build(&lat, EdgeId::h(3, 3), 2).unwrap();
    let cfg = TreeConfiguration { labels: vec![false; t.n_edges()] };
    assert!(t.invert_walk(&cfg, &[]).is_err());
    // Ends must dangle: the root edge never does.
    assert!(t.invert_walk(&cfg, &[0]).is_err());
    // Consecutive edges must share a vertex.
    let [v0, v1] = t.root_vertices();
    let e0 = t.vertices()[v0].child_edges[0];
    let e1 = t.vertices()[v1].child_edges[0];
    let a = t.vertices()[t.edges()[e0].child_vertex.unwrap()].child_edges[0];
    let b = t.vertices()[t.edges()[e1].child_vertex.unwrap()].child_edges[0];
    assert!(t.invert_walk(&cfg, &[a, b]).is_err());
}

/// The simple path between two dangling edges: both climb towards the root
/// edge, the shared tail is dropped, and the halves are joined at the
/// branching vertex (keeping one shared edge if the halves meet across it).
fn walk_between(t: &DecodingTree, a: usize, b: usize) -> Vec<usize> {
    let ascent = |mut e: usize| {
        let mut path = vec![e];
        while let Some(v) = t.edges()[e].parent_vertex {
            e = t.vertices()[v].parent_edge;
            path.push(e);
        }
        path
    };
    let endpoints = |e: usize| -> Vec<usize> {
        if e == 0 {
            t.root_vertices().to_vec()
        } else {
            let mut vs = vec![t.edges()[e].parent_vertex.unwrap()];
            if let Some(v) = t.edges()[e].child_vertex {
                vs.push(v);
            }
            vs
        }
    };
    let mut up = ascent(a);
    let mut down = ascent(b);
    let mut bridge = None;
    while up.last() == down.last() {
        bridge = up.pop();
        down.pop();
    }
    let touching = endpoints(*up.last().unwrap())
        .iter()
        .any(|v| endpoints(*down.last().unwrap()).contains(v));
    if !touching {
        up.push(bridge.expect("ascents end at the root edge"));
    }
    down.reverse();
    up.extend(down);
    up
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_walk_inversion_preserves_configurations(
        raw in prop::collection::vec(any::<bool>(), 49),
        pick in any::<u64>(),
        ends in (0usize..18, 0usize..18),
    ) {
        let lat = lattice(7);
        let t = DecodingTree::build(&lat, EdgeId::v(1, 4), 2).unwrap();
        let s = SyndromeVector::from_bits(raw[..49].to_vec(), true);
        let configs = t.enumerate_configurations(&s, pick % 2 == 0).unwrap();
        let cfg = &configs[(pick as usize) % configs.len()];
        prop_assert!(t.is_configuration(&s, &cfg.labels));
        let dangling: Vec<usize> =
            (0..t.n_edges()).filter(|&e| t.is_dangling(e)).collect();
        let (a, b) = (dangling[ends.0], dangling[ends.1]);
        prop_assume!(a != b);
        let walk = walk_between(&t, a, b);
        let flipped = t.invert_walk(cfg, &walk).unwrap();
        prop_assert!(t.is_configuration(&s, &flipped.labels));
        // Inverting the same walk again restores the original labels.
        let back = t.invert_walk(&flipped, &walk).unwrap();
        prop_assert_eq!(&back.labels, &cfg.labels);
    }
}
