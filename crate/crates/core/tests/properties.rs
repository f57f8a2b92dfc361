use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radiobook_core::constructive::{build_label_order, greedy_label};
use radiobook_core::io::{graph_from_json, graph_to_json, labeling_from_json, labeling_to_json};
use radiobook_core::{
    all_pairs_distances, build_path, build_stacked_book, build_star, cartesian_product, normalize,
    validate, DistanceMatrix, Graph, Labeling, VertexId,
};

/// Random connected graph: a random spanning tree plus extra edges.
fn random_connected(rng: &mut impl Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.2) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Independent check: double loop, plain BFS distances.
fn naive_violations(g: &Graph, f: &[u64]) -> usize {
    let n = g.num_vertices();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        let mut frontier = vec![s];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in g.neighbors(VertexId(u)) {
                    if dist[s][w] == usize::MAX {
                        dist[s][w] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
    }
    let diam = dist.iter().flatten().copied().max().unwrap();
    let mut count = 0;
    for u in 0..n {
        for v in u + 1..n {
            let gap = (f[u] as i64 - f[v] as i64).abs();
            if gap < (diam + 1) as i64 - dist[u][v] as i64 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn validator_matches_naive_pairwise_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut valid_seen = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let g = random_connected(&mut rng, n);
        let dm = all_pairs_distances(&g).unwrap();
        let top = 3 * n as u64 + 4;
        let f: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=top)).collect();
        let report = validate(&dm, &Labeling::new(f.clone())).unwrap();
        let naive = naive_violations(&g, &f);
        assert_eq!(report.violations.len(), naive);
        assert_eq!(report.valid, naive == 0);
        valid_seen += usize::from(report.valid);
    }
    assert!(valid_seen > 0, "sampler never produced a valid labeling");
}

#[test]
fn valid_labeling_stays_valid_on_vertex_subsets() {
    let g = build_stacked_book(5, 5).unwrap();
    let dm = all_pairs_distances(&g).unwrap();
    let f = radiobook_core::label_stacked_book(5, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let subset: Vec<VertexId> = g.vertices().filter(|_| rng.gen_bool(0.4)).collect();
        if subset.is_empty() {
            continue;
        }
        let sub_dm = dm.restrict(&subset);
        let sub_f = Labeling::new(subset.iter().map(|&v| f.get(v)).collect());
        assert!(validate(&sub_dm, &sub_f).unwrap().valid);
    }
}

#[test]
fn greedy_is_deterministic() {
    for (m, n) in [(5, 5), (6, 7), (8, 9)] {
        let dm = all_pairs_distances(&build_stacked_book(m, n).unwrap()).unwrap();
        let order = build_label_order(m, n).unwrap().sequence;
        let first = greedy_label(&dm, &order);
        let second = greedy_label(&dm, &order);
        assert_eq!(first, second);
        // Re-deriving the order from the labels and labeling again is a fixed point.
        let again = greedy_label(&dm, &first.order());
        assert_eq!(again, first);
    }
}

fn small_instance() -> impl Strategy<Value = (DistanceMatrix, Graph)> {
    prop_oneof![
        (2usize..8).prop_map(|n| build_path(n).unwrap()),
        (3usize..8).prop_map(|m| build_star(m).unwrap()),
        (3usize..6, 2usize..5).prop_map(|(m, n)| build_stacked_book(m, n).unwrap()),
    ]
    .prop_map(|g| (all_pairs_distances(&g).unwrap(), g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn translation_invariance(
        (dm, _g) in small_instance(),
        seed in any::<u64>(),
        shift in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Labeling::new((0..dm.len()).map(|_| rng.gen_range(0..40)).collect());
        let a = validate(&dm, &f).unwrap();
        let b = validate(&dm, &f.shifted(shift)).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(validate(&dm, &normalize(&f)).unwrap().span, validate(&dm, &f).unwrap().span);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stretching_preserves_validity((dm, _g) in small_instance(), k in 1u64..6, seed in any::<u64>()) {
        // Start from a valid greedy labeling along a random order.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<VertexId> = (0..dm.len()).map(VertexId).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let f = greedy_label(&dm, &order);
        prop_assert!(validate(&dm, &f).unwrap().valid);
        prop_assert!(validate(&dm, &f.scaled(k)).unwrap().valid);
    }

    #[test]
    fn graph_json_round_trip(m in 3usize..7, n in 2usize..7, star_only in any::<bool>()) {
        let g = if star_only { build_star(m).unwrap() } else { build_stacked_book(m, n).unwrap() };
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.coords(), g.coords());
        prop_assert_eq!(back.kind(), g.kind());
    }

    #[test]
    fn labeling_json_round_trip(m in 3usize..7, n in 2usize..7, labels in proptest::collection::vec(0u64..500, 49)) {
        let g = build_stacked_book(m, n).unwrap();
        let f = Labeling::new(labels[..g.num_vertices()].to_vec());
        prop_assert_eq!(labeling_from_json(&g, &labeling_to_json(&g, &f, None)).unwrap(), f);
    }

    #[test]
    fn product_commutes_up_to_invariants(a in 3usize..7, b in 2usize..7) {
        let s = build_star(a).unwrap();
        let p = build_path(b).unwrap();
        let sp = cartesian_product(&s, &p);
        let ps = cartesian_product(&p, &s);
        prop_assert_eq!(sp.num_vertices(), ps.num_vertices());
        prop_assert_eq!(sp.num_edges(), ps.num_edges());
        prop_assert_eq!(sp.degree_multiset(), ps.degree_multiset());
    }
}
