//! Shipped embedding fixtures, embedded at compile time from
//! `fixtures/*.json`. Each loader parses and fully validates.

use std::collections::BTreeMap;

use crate::constructions::{dbar4, DoubledFourRing};
use crate::cycle::Cycle;
use crate::digraph::Digraph;
use crate::embedding::PLEmbedding;
use crate::enumerate::{directed_cycles, EnumOptions};
use crate::error::Result;
use crate::geom::Point3;
use crate::id::VertexId;

macro_rules! fixture {
    ($name:literal) => {
        (
            include_str!(concat!("../fixtures/", $name, ".graph.json")),
            include_str!(concat!("../fixtures/", $name, ".embedding.json")),
        )
    };
}

fn load(graph_json: &str, emb_json: &str) -> Result<PLEmbedding> {
    let g = Digraph::from_json(graph_json)?;
    PLEmbedding::from_json(g, emb_json)
}

/// Two consistently oriented triangles forming a Hopf link; also returns the
/// two triangle cycles.
pub fn hopf_triangles() -> (PLEmbedding, Cycle, Cycle) {
    let (g, e) = fixture!("hopf_triangles");
    let emb = load(g, e).expect("hopf fixture is valid");
    let (a, b) = triangle_pair(&emb);
    (emb, a, b)
}

/// The same two triangles in far-apart balls: a split pair.
pub fn split_circles() -> (PLEmbedding, Cycle, Cycle) {
    let (g, e) = fixture!("split_circles");
    let emb = load(g, e).expect("split fixture is valid");
    let (a, b) = triangle_pair(&emb);
    (emb, a, b)
}

fn triangle_pair(emb: &PLEmbedding) -> (Cycle, Cycle) {
    let cycles = directed_cycles(emb.graph(), EnumOptions::default()).expect("two triangles");
    let a = cycles
        .iter()
        .find(|c| c.vertices()[0].0.starts_with('a'))
        .expect("a triangle")
        .clone();
    let b = cycles
        .iter()
        .find(|c| c.vertices()[0].0.starts_with('b'))
        .expect("b triangle")
        .clone();
    (a, b)
}

/// Minimal-stick trefoil: a consistently oriented hexagon with determinant 3.
pub fn trefoil_hexagon() -> (PLEmbedding, Cycle) {
    let (g, e) = fixture!("trefoil_hexagon");
    let emb = load(g, e).expect("trefoil fixture is valid");
    let c = sole_cycle(&emb);
    (emb, c)
}

/// Figure-eight knot on eight sticks: determinant 5.
pub fn figure_eight() -> (PLEmbedding, Cycle) {
    let (g, e) = fixture!("figure_eight");
    let emb = load(g, e).expect("figure-eight fixture is valid");
    let c = sole_cycle(&emb);
    (emb, c)
}

fn sole_cycle(emb: &PLEmbedding) -> Cycle {
    let cycles = directed_cycles(emb.graph(), EnumOptions::default()).expect("one cycle");
    cycles.into_iter().max_by_key(|c| c.len()).expect("one cycle")
}

/// Hand-built embedding of the doubled four-ring in which the opposite
/// parallel-pair cycles link oddly: lk(C1,C3) and lk(C2,C4) are both odd.
pub fn d4_fixture() -> (PLEmbedding, DoubledFourRing) {
    let (g, e) = fixture!("d4_fixture");
    let emb = load(g, e).expect("four-ring fixture is valid");
    let ring = dbar4();
    assert_eq!(ring.digraph, *emb.graph(), "fixture graph matches dbar4");
    (emb, ring)
}

/// Two Hopf pairs stacked far apart: an embedding with exactly two nonsplit
/// 2-component links. Built in code (not shipped) from the Hopf fixture.
pub fn double_hopf() -> PLEmbedding {
    let (base, _, _) = hopf_triangles();
    let mut g = base.graph().clone();
    let mut pos: BTreeMap<VertexId, Point3> = base.positions().clone();
    let offset = Point3::from_ints(0, 0, 50);
    let mut renamed: Vec<(VertexId, VertexId)> = Vec::new();
    for v in base.graph().vertices() {
        let nv = VertexId(format!("{}x", v.0));
        g.add_vertex(nv.clone()).unwrap();
        pos.insert(nv.clone(), base.vertex_pos(v).add(&offset));
        renamed.push((v.clone(), nv));
    }
    let rename: BTreeMap<&VertexId, &VertexId> = renamed.iter().map(|(a, b)| (a, b)).collect();
    for e in base.graph().edges().to_vec() {
        g.add_arc(
            format!("{}x", e.id.0),
            rename[&e.tail].clone(),
            rename[&e.head].clone(),
        )
        .unwrap();
    }
    let mut paths = BTreeMap::new();
    for e in g.edges() {
        paths.insert(
            e.id.clone(),
            vec![pos[&e.tail].clone(), pos[&e.head].clone()],
        );
    }
    PLEmbedding::new(g, pos, paths).expect("stacked hopf pairs are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::linking_number;

    #[test]
    fn fixtures_load_and_validate() {
        let (emb, a, b) = hopf_triangles();
        assert_eq!(linking_number(&emb, &a, &b).unwrap().abs(), 1);

        let (emb, a, b) = split_circles();
        assert_eq!(linking_number(&emb, &a, &b).unwrap(), 0);

        let (emb, c) = trefoil_hexagon();
        assert_eq!(c.len(), 6);
        assert!(c.is_consistent());
        emb.validate().unwrap();

        let (emb, c) = figure_eight();
        assert_eq!(c.len(), 8);
        emb.validate().unwrap();
    }

    #[test]
    fn d4_fixture_links_oddly() {
        let (emb, ring) = d4_fixture();
        let l13 = linking_number(&emb, &ring.pair_cycle(0), &ring.pair_cycle(2)).unwrap();
        let l24 = linking_number(&emb, &ring.pair_cycle(1), &ring.pair_cycle(3)).unwrap();
        assert_eq!(l13.abs() % 2, 1);
        assert_eq!(l24.abs() % 2, 1);
    }

    #[test]
    fn double_hopf_has_two_clasped_pairs() {
        let emb = double_hopf();
        assert_eq!(emb.graph().vertex_count(), 12);
        assert_eq!(emb.graph().edge_count(), 12);
    }
}
