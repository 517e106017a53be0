//! Linking numbers of disjoint cycles in a PL embedding.
//!
//! The linking number is the sum of crossing signs over crossings where the
//! first curve passes over the second, in an exactly-generic projection.
//! Right-handed crossings count +1. Each cycle is oriented by its traversal
//! flags, so reversing a component negates the result.

use std::collections::BTreeSet;

use crate::cycle::Cycle;
use crate::embedding::PLEmbedding;
use crate::error::{Error, Result};
use crate::id::EdgeId;
use crate::projection::Scene;

pub fn require_disjoint(c1: &Cycle, c2: &Cycle) -> Result<()> {
    for v in c1.vertices() {
        if c2.contains_vertex(v) {
            return Err(Error::NotDisjoint(v.0.clone()));
        }
    }
    Ok(())
}

fn scene_for(emb: &PLEmbedding, cycles: &[&Cycle]) -> Result<Scene> {
    let edges: BTreeSet<EdgeId> = cycles
        .iter()
        .flat_map(|c| c.steps().iter().map(|s| s.edge.clone()))
        .collect();
    Scene::build(&emb.paths_for(edges))
}

/// lk(c1, c2) for vertex-disjoint cycles realized in `emb`.
pub fn linking_number(emb: &PLEmbedding, c1: &Cycle, c2: &Cycle) -> Result<i64> {
    require_disjoint(c1, c2)?;
    let scene = scene_for(emb, &[c1, c2])?;
    let p1 = scene.cycle_poly(c1)?;
    let p2 = scene.cycle_poly(c2)?;
    scene.linking_number(&p1, &p2)
}

/// Both one-sided sums and the halved total, for cross-checking: returns
/// (c1-over-c2 sum, c2-over-c1 sum, total signed crossings).
pub fn linking_number_all_routes(
    emb: &PLEmbedding,
    c1: &Cycle,
    c2: &Cycle,
) -> Result<(i64, i64, i64)> {
    require_disjoint(c1, c2)?;
    let scene = scene_for(emb, &[c1, c2])?;
    let p1 = scene.cycle_poly(c1)?;
    let p2 = scene.cycle_poly(c2)?;
    let over12 = scene.linking_number(&p1, &p2)?;
    let over21 = scene.linking_number(&p2, &p1)?;
    let total = scene.total_signed_crossings(&p1, &p2)?;
    Ok((over12, over21, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::oriented_polygon;
    use crate::cycle::{CycleStep, Traversal};
    use crate::digraph::Digraph;
    use crate::embedding::spatial_realize;
    use crate::enumerate::{directed_cycles, EnumOptions};
    use crate::geom::Point3;
    use std::collections::BTreeMap;
    use crate::id::VertexId;

    /// Two triangles: one flat around the origin, one threading through it.
    pub fn hopf_embedding() -> (PLEmbedding, Cycle, Cycle) {
        let mut g = oriented_polygon("a", 3);
        let b = oriented_polygon("b", 3);
        for v in b.vertices() {
            g.add_vertex(v.clone()).unwrap();
        }
        for e in b.edges() {
            g.add_arc(e.id.clone(), e.tail.clone(), e.head.clone())
                .unwrap();
        }
        let pos: BTreeMap<VertexId, Point3> = [
            ("a01", (1, 0, 0)),
            ("a02", (-1, 1, 0)),
            ("a03", (-1, -1, 0)),
            ("b01", (0, 0, 1)),
            ("b02", (0, 1, -2)),
            ("b03", (3, 0, 0)),
        ]
        .into_iter()
        .map(|(v, (x, y, z))| (VertexId(v.into()), Point3::from_ints(x, y, z)))
        .collect();
        let mut paths = BTreeMap::new();
        for e in g.edges() {
            paths.insert(
                e.id.clone(),
                vec![pos[&e.tail].clone(), pos[&e.head].clone()],
            );
        }
        let emb = PLEmbedding::new(g, pos, paths).unwrap();
        let cycles = directed_cycles(emb.graph(), EnumOptions::default()).unwrap();
        let c1 = cycles
            .iter()
            .find(|c| c.vertices()[0].0.starts_with('a'))
            .unwrap()
            .clone();
        let c2 = cycles
            .iter()
            .find(|c| c.vertices()[0].0.starts_with('b'))
            .unwrap()
            .clone();
        (emb, c1, c2)
    }

    #[test]
    fn hopf_triangles_link_once() {
        let (emb, c1, c2) = hopf_embedding();
        let lk = linking_number(&emb, &c1, &c2).unwrap();
        assert_eq!(lk.abs(), 1);
        // Symmetry and the halved two-sided count.
        let (over12, over21, total) = linking_number_all_routes(&emb, &c1, &c2).unwrap();
        assert_eq!(over12, over21);
        assert_eq!(total, 2 * over12);
        // Reversing one component negates.
        let lk_rev = linking_number(&emb, &c1, &c2.reversed()).unwrap();
        assert_eq!(lk_rev, -lk);
        // Subdivision invariance.
        let lk_sub = linking_number(&emb.subdivided(), &c1, &c2).unwrap();
        assert_eq!(lk_sub, lk);
    }

    #[test]
    fn split_triangles_do_not_link() {
        let mut g = oriented_polygon("a", 3);
        let b = oriented_polygon("b", 3);
        for v in b.vertices() {
            g.add_vertex(v.clone()).unwrap();
        }
        for e in b.edges() {
            g.add_arc(e.id.clone(), e.tail.clone(), e.head.clone())
                .unwrap();
        }
        let emb = spatial_realize(&g, 0).unwrap();
        let cycles = directed_cycles(emb.graph(), EnumOptions::default()).unwrap();
        // Far-separated copy: rebuild with one triangle pushed away.
        let mut pos = emb.positions().clone();
        for (v, p) in pos.iter_mut() {
            if v.0.starts_with('b') {
                *p = p.add(&Point3::from_ints(1000, 0, 0));
            }
        }
        let mut paths = BTreeMap::new();
        for e in emb.graph().edges() {
            paths.insert(
                e.id.clone(),
                vec![pos[&e.tail].clone(), pos[&e.head].clone()],
            );
        }
        let emb = PLEmbedding::new(emb.graph().clone(), pos, paths).unwrap();
        let c1 = cycles
            .iter()
            .find(|c| c.vertices()[0].0.starts_with('a'))
            .unwrap();
        let c2 = cycles
            .iter()
            .find(|c| c.vertices()[0].0.starts_with('b'))
            .unwrap();
        assert_eq!(linking_number(&emb, c1, c2).unwrap(), 0);
    }

    #[test]
    fn non_disjoint_cycles_error() {
        let mut g = Digraph::new();
        for v in ["a", "b", "c"] {
            g.add_vertex(v).unwrap();
        }
        g.add_arc("e1", "a", "b").unwrap();
        g.add_arc("e2", "b", "a").unwrap();
        g.add_arc("e3", "b", "c").unwrap();
        g.add_arc("e4", "c", "b").unwrap();
        let emb = spatial_realize(&g, 0).unwrap();
        let fwd = |e: &str| CycleStep {
            edge: e.into(),
            dir: Traversal::Forward,
        };
        let c1 = Cycle::new(emb.graph(), vec![fwd("e1"), fwd("e2")]).unwrap();
        let c2 = Cycle::new(emb.graph(), vec![fwd("e3"), fwd("e4")]).unwrap();
        assert!(matches!(
            linking_number(&emb, &c1, &c2),
            Err(Error::NotDisjoint(_))
        ));
    }
}
