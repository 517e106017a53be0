//! Property tests over random digraphs and random moment-curve geometry.

use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;

use dilink::constructions::oriented_polygon;
use dilink::digraph::{symmetric_double, Digraph};
use dilink::embedding::PLEmbedding;
use dilink::enumerate::{directed_cycles, undirected_cycles, EnumOptions};
use dilink::geom::Point3;
use dilink::linking::{linking_number, linking_number_all_routes};
use dilink::VertexId;

/// Random orientation digraph: at most one arc per unordered vertex pair.
fn orientation_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(proptest::option::of(any::<bool>()), pairs),
            )
        })
        .prop_map(|(n, choices)| {
            let mut g = Digraph::new();
            for i in 0..n {
                g.add_vertex(format!("v{i}")).unwrap();
            }
            let mut idx = 0;
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if let Some(flip) = choices[idx] {
                        let (t, h) = if flip { (j, i) } else { (i, j) };
                        g.add_arc(format!("e{k}"), format!("v{t}"), format!("v{h}"))
                            .unwrap();
                        k += 1;
                    }
                    idx += 1;
                }
            }
            g
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn doubling_recovers_underlying_graph(g in orientation_strategy(7)) {
        let sd = symmetric_double(&g).unwrap();
        prop_assert_eq!(sd.digraph.edge_count(), 2 * g.edge_count());
        prop_assert_eq!(sd.digraph.underlying_pairs(), g.underlying_pairs());
        // The pairing table is an involution without fixed points.
        for (a, b) in &sd.twin {
            prop_assert_ne!(a, b);
            prop_assert_eq!(&sd.twin[b], a);
        }
    }

    #[test]
    fn directed_cycles_are_canonical_and_consistent(g in orientation_strategy(6)) {
        let sd = symmetric_double(&g).unwrap();
        let cycles = directed_cycles(&sd.digraph, EnumOptions::default()).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for c in &cycles {
            prop_assert!(c.is_consistent());
            // Canonical rotation starts at the minimal vertex.
            let min = c.vertices().iter().min().unwrap();
            prop_assert_eq!(&c.vertices()[0], min);
            prop_assert!(seen.insert(c.clone()));
        }
    }

    #[test]
    fn undirected_cycles_identify_reversals(g in orientation_strategy(6)) {
        let cycles = undirected_cycles(&g, EnumOptions::default()).unwrap();
        for c in &cycles {
            let r = c.reversed();
            prop_assert_eq!(r.reversed(), c.clone());
            prop_assert_eq!(c.undirected_canonical(), r.undirected_canonical());
            // The list holds exactly one of each reversal pair.
            prop_assert!(!cycles.iter().any(|d| d != c && *d == r));
        }
    }

    #[test]
    fn graph_json_round_trips(g in orientation_strategy(7)) {
        let s = g.to_json();
        let back = Digraph::from_json(&s).unwrap();
        prop_assert_eq!(back, g);
    }
}

/// Two disjoint polygons with shuffled moment-curve parameters.
fn polygon_pair_strategy() -> impl Strategy<Value = (PLEmbedding, dilink::Cycle, dilink::Cycle)> {
    (3usize..=5, 3usize..=5, any::<u64>()).prop_map(|(la, lb, seed)| {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut params: Vec<i64> = (1..=(la + lb) as i64).collect();
        params.shuffle(&mut rng);
        let mut g = oriented_polygon("a", la);
        let b = oriented_polygon("b", lb);
        for v in b.vertices() {
            g.add_vertex(v.clone()).unwrap();
        }
        for e in b.edges() {
            g.add_arc(e.id.clone(), e.tail.clone(), e.head.clone()).unwrap();
        }
        let pos: BTreeMap<VertexId, Point3> = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                (
                    v.clone(),
                    Point3::moment(&BigRational::from_integer(params[i].into())),
                )
            })
            .collect();
        let mut paths = BTreeMap::new();
        for e in g.edges() {
            paths.insert(e.id.clone(), vec![pos[&e.tail].clone(), pos[&e.head].clone()]);
        }
        let emb = PLEmbedding::new(g, pos, paths).expect("moment polygons embed");
        let cycles = directed_cycles(emb.graph(), EnumOptions::default()).unwrap();
        let ca = cycles.iter().find(|c| c.vertices()[0].0.starts_with('a')).unwrap().clone();
        let cb = cycles.iter().find(|c| c.vertices()[0].0.starts_with('b')).unwrap().clone();
        (emb, ca, cb)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linking_number_symmetries((emb, ca, cb) in polygon_pair_strategy()) {
        let (over12, over21, total) = linking_number_all_routes(&emb, &ca, &cb).unwrap();
        prop_assert_eq!(over12, over21);
        prop_assert_eq!(total, 2 * over12);
        prop_assert_eq!(linking_number(&emb, &cb, &ca).unwrap(), over12);
        prop_assert_eq!(linking_number(&emb, &ca, &cb.reversed()).unwrap(), -over12);
        prop_assert_eq!(linking_number(&emb, &ca.reversed(), &cb).unwrap(), -over12);
        prop_assert_eq!(
            linking_number(&emb, &ca.reversed(), &cb.reversed()).unwrap(),
            over12
        );
        prop_assert_eq!(linking_number(&emb.subdivided(), &ca, &cb).unwrap(), over12);
    }
}
