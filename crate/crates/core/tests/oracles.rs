//! Independent oracles.
//!
//! Cycle enumeration is checked against a brute-force count over vertex
//! subsets and cyclic orders with arc-multiplicity products. The Goeritz
//! determinant is checked against a determinant computed from the crossing
//! relations of the diagram evaluated at -1, eliminated with rational
//! Gaussian elimination. Census counts are checked against direct
//! combination scans.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dilink::census::{link_census, CensusOptions};
use dilink::digraph::Digraph;
use dilink::enumerate::{directed_cycles, undirected_cycles, EnumOptions};
use dilink::fixtures;
use dilink::knot::{diagram_of, Diagram};
use dilink::linking::linking_number;

// ---------------------------------------------------------------------
// Brute-force cycle counting
// ---------------------------------------------------------------------

fn mult_table(g: &Digraph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for e in g.edges() {
        let t = g.vertex_index_of(&e.tail).unwrap();
        let h = g.vertex_index_of(&e.head).unwrap();
        *m.entry((t, h)).or_insert(0) += 1;
    }
    m
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..(1u32 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Directed cycle count by length: every vertex subset, every cyclic order
/// anchored at the subset minimum, multiplied over arc multiplicities.
fn brute_force_directed_counts(g: &Digraph) -> BTreeMap<usize, usize> {
    let n = g.vertex_count();
    let mult = mult_table(g);
    let mut counts = BTreeMap::new();
    for subset in subsets(n) {
        if subset.len() < 2 {
            continue;
        }
        let anchor = subset[0];
        let rest = &subset[1..];
        for perm in permutations(rest) {
            let mut order = vec![anchor];
            order.extend(perm);
            let mut ways = 1usize;
            for k in 0..order.len() {
                let a = order[k];
                let b = order[(k + 1) % order.len()];
                ways *= mult.get(&(a, b)).copied().unwrap_or(0);
                if ways == 0 {
                    break;
                }
            }
            if ways > 0 {
                *counts.entry(order.len()).or_insert(0) += ways;
            }
        }
    }
    counts
}

/// Undirected version: arcs usable in either direction, cyclic orders
/// identified with their reflections, bigons counted as unordered arc pairs.
fn brute_force_undirected_counts(g: &Digraph) -> BTreeMap<usize, usize> {
    let n = g.vertex_count();
    let mult = mult_table(g);
    let sym = |a: usize, b: usize| -> usize {
        mult.get(&(a, b)).copied().unwrap_or(0) + mult.get(&(b, a)).copied().unwrap_or(0)
    };
    let mut counts = BTreeMap::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let m = sym(u, v);
            if m >= 2 {
                *counts.entry(2).or_insert(0) += m * (m - 1) / 2;
            }
        }
    }
    for subset in subsets(n) {
        if subset.len() < 3 {
            continue;
        }
        let anchor = subset[0];
        let rest = &subset[1..];
        for perm in permutations(rest) {
            // Reflection representative: second element smaller than last.
            if perm[0] > perm[perm.len() - 1] {
                continue;
            }
            let mut order = vec![anchor];
            order.extend(perm);
            let mut ways = 1usize;
            for k in 0..order.len() {
                let a = order[k];
                let b = order[(k + 1) % order.len()];
                ways *= sym(a, b);
                if ways == 0 {
                    break;
                }
            }
            if ways > 0 {
                *counts.entry(order.len()).or_insert(0) += ways;
            }
        }
    }
    counts
}

fn length_multiset(cycles: &[dilink::Cycle]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in cycles {
        *m.entry(c.len()).or_insert(0) += 1;
    }
    m
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    let mut g = Digraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).unwrap();
    }
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                g.add_arc(format!("e{k}"), format!("v{i}"), format!("v{j}"))
                    .unwrap();
                k += 1;
            }
        }
    }
    g
}

#[test]
fn enumeration_matches_brute_force_on_random_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..60 {
        let n = rng.gen_range(2..=6);
        let g = random_digraph(&mut rng, n, 0.45);
        let cycles = directed_cycles(&g, EnumOptions::default()).unwrap();
        // All distinct, all consistent, counts match brute force.
        let mut sorted = cycles.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), cycles.len(), "duplicate cycles");
        assert!(cycles.iter().all(|c| c.is_consistent()));
        assert_eq!(length_multiset(&cycles), brute_force_directed_counts(&g));

        let ucycles = undirected_cycles(&g, EnumOptions::default()).unwrap();
        let mut usorted: Vec<_> = ucycles.iter().map(|c| c.undirected_canonical()).collect();
        usorted.sort();
        usorted.dedup();
        assert_eq!(usorted.len(), ucycles.len(), "duplicate undirected cycles");
        assert_eq!(
            length_multiset(&ucycles),
            brute_force_undirected_counts(&g)
        );
    }
}

#[test]
fn enumeration_matches_brute_force_with_parallel_arcs() {
    // Parallel and antiparallel multi-arcs.
    let mut g = Digraph::new();
    for v in ["a", "b", "c"] {
        g.add_vertex(v).unwrap();
    }
    for (i, (t, h)) in [
        ("a", "b"),
        ("a", "b"),
        ("b", "a"),
        ("b", "c"),
        ("c", "a"),
        ("c", "b"),
    ]
    .into_iter()
    .enumerate()
    {
        g.add_arc(format!("e{i}"), t, h).unwrap();
    }
    let cycles = directed_cycles(&g, EnumOptions::default()).unwrap();
    assert_eq!(length_multiset(&cycles), brute_force_directed_counts(&g));
    let ucycles = undirected_cycles(&g, EnumOptions::default()).unwrap();
    assert_eq!(
        length_multiset(&ucycles),
        brute_force_undirected_counts(&g)
    );
}

#[test]
fn disjoint_pair_query_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let g = random_digraph(&mut rng, n, 0.4);
        let cycles = directed_cycles(&g, EnumOptions::default()).unwrap();
        let mut expect = false;
        'outer: for i in 0..cycles.len() {
            for j in (i + 1)..cycles.len() {
                if cycles[i].disjoint_from(&cycles[j]) {
                    expect = true;
                    break 'outer;
                }
            }
        }
        let witness = dilink::enumerate::has_disjoint_directed_cycles(&g).unwrap();
        assert_eq!(witness.is_some(), expect);
        if let Some((a, b)) = witness {
            assert!(a.disjoint_from(&b));
        }
    }
}

// ---------------------------------------------------------------------
// Wirtinger determinant oracle
// ---------------------------------------------------------------------

/// |det| by plain rational Gaussian elimination (independent of the
/// fraction-free route used by the implementation).
fn rational_det_abs(mut m: Vec<Vec<BigRational>>) -> BigUint {
    let n = m.len();
    if n == 0 {
        return BigUint::one();
    }
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigUint::zero();
        };
        if p != k {
            m.swap(k, p);
        }
        det *= m[k][k].clone();
        let pivot = m[k][k].clone();
        for r in (k + 1)..n {
            let f = &m[r][k] / &pivot;
            for c in k..n {
                let sub = &f * &m[k][c];
                m[r][c] -= sub;
            }
        }
    }
    let v = det.to_integer();
    v.abs().to_biguint().unwrap()
}

/// Knot determinant from the crossing relations evaluated at -1: each
/// crossing contributes out + in - 2*over over the underpass-delimited arcs;
/// one arc and one relation are dropped.
fn wirtinger_determinant(diagram: &Diagram) -> BigUint {
    let passages = diagram.passages();
    let m = diagram.crossing_count();
    if m == 0 {
        return BigUint::one();
    }
    let under_positions: Vec<usize> = passages
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.over)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(under_positions.len(), m);
    // Arc index of each walk position: arc j covers positions after the j-th
    // underpass up to and including the (j+1)-th.
    let arc_of = |pos: usize| -> usize {
        // Number of underpasses strictly before or at pos, minus one, cyclic.
        let before = under_positions.iter().filter(|&&u| u < pos).count();
        (before + m - 1) % m
    };
    let mut rows = vec![vec![BigInt::zero(); m]; m];
    for (j, &upos) in under_positions.iter().enumerate() {
        let in_arc = (j + m - 1) % m;
        let out_arc = j;
        let crossing = passages[upos].crossing;
        let over_pos = passages
            .iter()
            .enumerate()
            .find(|(i, p)| p.crossing == crossing && p.over && *i != upos)
            .map(|(i, _)| i)
            .expect("over passage");
        let over_arc = arc_of(over_pos);
        rows[j][out_arc] += 1;
        rows[j][in_arc] += 1;
        rows[j][over_arc] -= 2;
    }
    let minor: Vec<Vec<BigRational>> = rows
        .iter()
        .skip(1)
        .map(|r| {
            r.iter()
                .skip(1)
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    rational_det_abs(minor)
}

#[test]
fn goeritz_matches_wirtinger_on_fixtures() {
    let (emb, c) = fixtures::trefoil_hexagon();
    let d = diagram_of(&emb, &c).unwrap();
    assert_eq!(d.determinant(), BigUint::from(3u8));
    assert_eq!(wirtinger_determinant(&d), BigUint::from(3u8));

    let (emb, c) = fixtures::figure_eight();
    let d = diagram_of(&emb, &c).unwrap();
    assert_eq!(d.determinant(), BigUint::from(5u8));
    assert_eq!(wirtinger_determinant(&d), BigUint::from(5u8));
}

#[test]
fn goeritz_matches_wirtinger_on_random_polygons() {
    use dilink::constructions::oriented_polygon;
    use dilink::embedding::PLEmbedding;
    use dilink::geom::Point3;
    use dilink::VertexId;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let len = rng.gen_range(4..=9);
        let mut params: Vec<i64> = (1..=14).collect();
        for i in (1..params.len()).rev() {
            let j = rng.gen_range(0..=i);
            params.swap(i, j);
        }
        let poly = oriented_polygon("k", len);
        let pos: std::collections::BTreeMap<VertexId, Point3> = poly
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
        let mut paths = std::collections::BTreeMap::new();
        for e in poly.edges() {
            paths.insert(
                e.id.clone(),
                vec![pos[&e.tail].clone(), pos[&e.head].clone()],
            );
        }
        let emb = PLEmbedding::new(poly, pos, paths).unwrap();
        let c = directed_cycles(emb.graph(), EnumOptions::default())
            .unwrap()
            .into_iter()
            .max_by_key(|c| c.len())
            .unwrap();
        let d = diagram_of(&emb, &c).unwrap();
        let goeritz = d.determinant();
        let wirtinger = wirtinger_determinant(&d);
        assert_eq!(goeritz, wirtinger, "routes disagree");
        assert_eq!((&goeritz % 2u8), BigUint::one(), "determinant must be odd");
    }
}

// ---------------------------------------------------------------------
// Census brute force
// ---------------------------------------------------------------------

#[test]
fn census_counts_match_direct_combination_scan() {
    for (emb, len_max) in [
        (fixtures::hopf_triangles().0, 3),
        (fixtures::double_hopf(), 3),
        (fixtures::d4_fixture().0, 4),
    ] {
        let opts = CensusOptions::consistent(len_max, 3);
        let report = link_census(&emb, &opts).unwrap();
        let cycles = directed_cycles(
            emb.graph(),
            EnumOptions::with_max_len(len_max),
        )
        .unwrap();
        let lk = |a: &dilink::Cycle, b: &dilink::Cycle| -> i64 {
            linking_number(&emb, a, b).unwrap()
        };
        let mut count2 = 0usize;
        let mut count3 = 0usize;
        for i in 0..cycles.len() {
            for j in (i + 1)..cycles.len() {
                if !cycles[i].disjoint_from(&cycles[j]) {
                    continue;
                }
                let lij = lk(&cycles[i], &cycles[j]);
                if lij != 0 {
                    count2 += 1;
                }
                for k in (j + 1)..cycles.len() {
                    if !cycles[i].disjoint_from(&cycles[k])
                        || !cycles[j].disjoint_from(&cycles[k])
                    {
                        continue;
                    }
                    let lik = lk(&cycles[i], &cycles[k]);
                    let ljk = lk(&cycles[j], &cycles[k]);
                    let edges = [lij != 0, lik != 0, ljk != 0]
                        .iter()
                        .filter(|&&x| x)
                        .count();
                    // Any two distinct pairs on three cycles share a cycle,
                    // so two nonzero pairs always connect the triple.
                    if edges >= 2 {
                        count3 += 1;
                    }
                }
            }
        }
        assert_eq!(report.counts.get(&2).copied().unwrap_or(0), count2);
        assert_eq!(report.counts.get(&3).copied().unwrap_or(0), count3);
    }
}

#[test]
fn determinant_is_independent_of_projection_direction() {
    use dilink::constructions::oriented_polygon;
    use dilink::embedding::PLEmbedding;
    use dilink::geom::Point3;
    use dilink::knot::diagram_in_scene;
    use dilink::projection::{direction_schedule, Scene};
    use dilink::VertexId;

    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let schedule = direction_schedule();
    for _ in 0..15 {
        let len = rng.gen_range(5..=9);
        let mut params: Vec<i64> = (1..=12).collect();
        for i in (1..params.len()).rev() {
            let j = rng.gen_range(0..=i);
            params.swap(i, j);
        }
        let poly = oriented_polygon("k", len);
        let pos: std::collections::BTreeMap<VertexId, Point3> = poly
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
        let mut paths = std::collections::BTreeMap::new();
        for e in poly.edges() {
            paths.insert(
                e.id.clone(),
                vec![pos[&e.tail].clone(), pos[&e.head].clone()],
            );
        }
        let emb = PLEmbedding::new(poly, pos, paths).unwrap();
        let c = directed_cycles(emb.graph(), EnumOptions::default())
            .unwrap()
            .into_iter()
            .max_by_key(|c| c.len())
            .unwrap();
        // Three scenes under distinct accepted directions give three
        // genuinely different diagrams; the determinant must agree, via
        // both computation routes.
        let edge_paths = emb.edge_paths().clone();
        let mut dets = Vec::new();
        let mut skip = 0usize;
        for _ in 0..3 {
            let scene = Scene::build_with_schedule(&edge_paths, &schedule[skip..]).unwrap();
            let d = diagram_in_scene(&scene, &c).unwrap();
            assert_eq!(d.determinant(), wirtinger_determinant(&d));
            dets.push(d.determinant());
            skip += schedule[skip..]
                .iter()
                .position(|x| *x == scene.direction)
                .unwrap()
                + 1;
        }
        assert_eq!(dets[0], dets[1]);
        assert_eq!(dets[1], dets[2]);
    }
}
