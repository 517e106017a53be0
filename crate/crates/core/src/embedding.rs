//! Piecewise-linear spatial embeddings with exact rational coordinates.
//!
//! A [`PLEmbedding`] maps vertices to points and edges to polylines.
//! Validation is exact: segments may meet only at shared graph vertices (or
//! at their own polyline bends), checked with integer predicates over a
//! common denominator.
//!
//! [`spatial_realize`] places vertices on the moment curve (t, t^2, t^3) at
//! seed-shuffled integer parameters, which guarantees general position;
//! edges sharing an endpoint pair get distinct moment-curve bends.
//! [`double_embedding`] and [`contract_path_embedding`] derive new
//! embeddings whose clearances come from exact minimum-distance bounds, with
//! validation as the final arbiter.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycle::{Cycle, Traversal};
use crate::digraph::{symmetric_double, Digraph, SymmetricDouble};
use crate::error::{Error, Result};
use crate::geom::{
    dyadic_sqrt_floor, rat_from_str, rat_to_string, scale_points, seg_seg_min_sq_dist,
    segments_intersect_3d, shared_endpoint_overlap, Point3,
};
use crate::id::{EdgeId, VertexId};

#[derive(Clone, Debug)]
pub struct PLEmbedding {
    graph: Digraph,
    vertex_pos: BTreeMap<VertexId, Point3>,
    edge_path: BTreeMap<EdgeId, Vec<Point3>>,
}

impl PLEmbedding {
    /// Structural checks plus full exact disjointness validation.
    pub fn new(
        graph: Digraph,
        vertex_pos: BTreeMap<VertexId, Point3>,
        edge_path: BTreeMap<EdgeId, Vec<Point3>>,
    ) -> Result<PLEmbedding> {
        let emb = PLEmbedding::assemble(graph, vertex_pos, edge_path)?;
        emb.validate()?;
        Ok(emb)
    }

    /// Structural checks only; callers must run [`PLEmbedding::validate`].
    pub fn assemble(
        graph: Digraph,
        vertex_pos: BTreeMap<VertexId, Point3>,
        edge_path: BTreeMap<EdgeId, Vec<Point3>>,
    ) -> Result<PLEmbedding> {
        for v in graph.vertices() {
            if !vertex_pos.contains_key(v) {
                return Err(Error::InvalidEmbedding(format!("vertex `{v}` has no position")));
            }
        }
        if vertex_pos.len() != graph.vertex_count() {
            return Err(Error::InvalidEmbedding(
                "positions given for unknown vertices".into(),
            ));
        }
        for e in graph.edges() {
            let path = edge_path
                .get(&e.id)
                .ok_or_else(|| Error::InvalidEmbedding(format!("edge `{}` has no path", e.id)))?;
            if path.len() < 2 {
                return Err(Error::InvalidEmbedding(format!(
                    "edge `{}` path has {} points",
                    e.id,
                    path.len()
                )));
            }
            if path[0] != vertex_pos[&e.tail] {
                return Err(Error::InvalidEmbedding(format!(
                    "edge `{}` path does not start at its tail",
                    e.id
                )));
            }
            if path[path.len() - 1] != vertex_pos[&e.head] {
                return Err(Error::InvalidEmbedding(format!(
                    "edge `{}` path does not end at its head",
                    e.id
                )));
            }
            if path.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEmbedding(format!(
                    "edge `{}` has a zero-length segment",
                    e.id
                )));
            }
        }
        if edge_path.len() != graph.edge_count() {
            return Err(Error::InvalidEmbedding("paths given for unknown edges".into()));
        }
        Ok(PLEmbedding {
            graph,
            vertex_pos,
            edge_path,
        })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertex_pos(&self, v: &VertexId) -> &Point3 {
        &self.vertex_pos[v]
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, Point3> {
        &self.vertex_pos
    }

    pub fn edge_path(&self, e: &EdgeId) -> &[Point3] {
        &self.edge_path[e]
    }

    pub fn edge_paths(&self) -> &BTreeMap<EdgeId, Vec<Point3>> {
        &self.edge_path
    }

    /// Paths restricted to a subset of edges (for projection scenes).
    pub fn paths_for(&self, edges: impl IntoIterator<Item = EdgeId>) -> BTreeMap<EdgeId, Vec<Point3>> {
        edges
            .into_iter()
            .map(|e| {
                let p = self.edge_path[&e].clone();
                (e, p)
            })
            .collect()
    }

    /// The closed 3D polyline traced by a cycle. The last point is not
    /// repeated.
    pub fn cycle_polyline(&self, c: &Cycle) -> Vec<Point3> {
        let mut out = Vec::new();
        for step in c.steps() {
            let path = &self.edge_path[&step.edge];
            match step.dir {
                Traversal::Forward => out.extend(path[..path.len() - 1].iter().cloned()),
                Traversal::Backward => out.extend(path[1..].iter().rev().cloned()),
            }
        }
        out
    }

    /// Exact validation: no two closed segments intersect except at shared
    /// graph vertices and consecutive-bend junctions of one polyline.
    pub fn validate(&self) -> Result<()> {
        // Vertex positions must be pairwise distinct.
        let mut by_pos: BTreeMap<&Point3, &VertexId> = BTreeMap::new();
        for (v, p) in &self.vertex_pos {
            if let Some(other) = by_pos.insert(p, v) {
                return Err(Error::InvalidEmbedding(format!(
                    "vertices `{other}` and `{v}` share a position"
                )));
            }
        }

        // Deduplicate points; segment records carry terminal information.
        struct Seg {
            p: usize,
            q: usize,
            edge: usize,
            /// Terminal flags: endpoint is the path's first/last point.
            p_terminal: bool,
            q_terminal: bool,
        }
        let mut segs: Vec<Seg> = Vec::new();
        let mut vertex_point: BTreeSet<usize> = BTreeSet::new();
        let all_paths: Vec<(&EdgeId, &Vec<Point3>)> = self.edge_path.iter().collect();

        let mut uniq: Vec<Point3> = Vec::new();
        let mut lookup: BTreeMap<Point3, usize> = BTreeMap::new();
        let idx = |p: &Point3, uniq: &mut Vec<Point3>, lookup: &mut BTreeMap<Point3, usize>| -> usize {
            if let Some(&i) = lookup.get(p) {
                i
            } else {
                uniq.push(p.clone());
                lookup.insert(p.clone(), uniq.len() - 1);
                uniq.len() - 1
            }
        };
        for (eix, (_eid, path)) in all_paths.iter().enumerate() {
            let n = path.len();
            for k in 0..(n - 1) {
                let p = idx(&path[k], &mut uniq, &mut lookup);
                let q = idx(&path[k + 1], &mut uniq, &mut lookup);
                segs.push(Seg {
                    p,
                    q,
                    edge: eix,
                    p_terminal: k == 0,
                    q_terminal: k + 2 == n,
                });
            }
        }
        for p in self.vertex_pos.values() {
            if let Some(&i) = lookup.get(p) {
                vertex_point.insert(i);
            }
        }

        let scaled = scale_points(uniq.iter());
        let coords = &scaled.coords;
        let small: Option<Vec<[i128; 3]>> = {
            let limit = BigInt::from(1i128 << 41);
            let mut out = Vec::with_capacity(coords.len());
            let mut ok = true;
            'conv: for c in coords {
                let mut v = [0i128; 3];
                for (slot, b) in v.iter_mut().zip(c.iter()) {
                    if b.abs() >= limit {
                        ok = false;
                        break 'conv;
                    }
                    *slot = b.clone().try_into().unwrap();
                }
                out.push(v);
            }
            if ok {
                Some(out)
            } else {
                None
            }
        };

        let edge_name = |eix: usize| all_paths[eix].0 .0.clone();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let (s, t) = (&segs[i], &segs[j]);
                let shared: Vec<usize> = [s.p, s.q]
                    .into_iter()
                    .filter(|x| *x == t.p || *x == t.q)
                    .collect();
                match shared.len() {
                    2 => {
                        return Err(Error::InvalidEmbedding(format!(
                            "edges `{}` and `{}` contain coincident segments",
                            edge_name(s.edge),
                            edge_name(t.edge)
                        )));
                    }
                    1 => {
                        let shared_pt = shared[0];
                        let s_other = if s.p == shared_pt { s.q } else { s.p };
                        let t_other = if t.p == shared_pt { t.q } else { t.p };
                        let same_edge = s.edge == t.edge;
                        let consecutive = same_edge && (j == i + 1);
                        let allowed = if consecutive {
                            true
                        } else if same_edge {
                            false
                        } else {
                            // Different edges may meet only at a graph vertex
                            // that terminates both paths there.
                            let s_term = if s.p == shared_pt { s.p_terminal } else { s.q_terminal };
                            let t_term = if t.p == shared_pt { t.p_terminal } else { t.q_terminal };
                            vertex_point.contains(&shared_pt) && s_term && t_term
                        };
                        if !allowed {
                            return Err(Error::InvalidEmbedding(format!(
                                "edges `{}` and `{}` touch away from a shared vertex",
                                edge_name(s.edge),
                                edge_name(t.edge)
                            )));
                        }
                        if shared_endpoint_overlap(
                            &coords[shared_pt],
                            &coords[s_other],
                            &coords[t_other],
                        ) {
                            return Err(Error::InvalidEmbedding(format!(
                                "edges `{}` and `{}` overlap beyond their shared point",
                                edge_name(s.edge),
                                edge_name(t.edge)
                            )));
                        }
                    }
                    _ => {
                        // Four distinct endpoints: no contact allowed.
                        if let Some(sm) = &small {
                            if orient3d_i128(&sm[s.p], &sm[s.q], &sm[t.p], &sm[t.q]) != 0 {
                                continue; // skew
                            }
                        }
                        if segments_intersect_3d(
                            &coords[s.p],
                            &coords[s.q],
                            &coords[t.p],
                            &coords[t.q],
                        ) {
                            return Err(Error::InvalidEmbedding(format!(
                                "edges `{}` and `{}` intersect",
                                edge_name(s.edge),
                                edge_name(t.edge)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Same embedding with every segment split at its midpoint.
    pub fn subdivided(&self) -> PLEmbedding {
        let mut edge_path = BTreeMap::new();
        for (e, path) in &self.edge_path {
            let mut out = Vec::with_capacity(path.len() * 2 - 1);
            for w in path.windows(2) {
                out.push(w[0].clone());
                out.push(w[0].midpoint(&w[1]));
            }
            out.push(path[path.len() - 1].clone());
            edge_path.insert(e.clone(), out);
        }
        PLEmbedding {
            graph: self.graph.clone(),
            vertex_pos: self.vertex_pos.clone(),
            edge_path,
        }
    }

    /// Restriction to a subset of edges (vertices are kept).
    pub fn without_edges(&self, drop: &BTreeSet<EdgeId>) -> PLEmbedding {
        PLEmbedding {
            graph: self.graph.without_edges(drop),
            vertex_pos: self.vertex_pos.clone(),
            edge_path: self
                .edge_path
                .iter()
                .filter(|(e, _)| !drop.contains(e))
                .map(|(e, p)| (e.clone(), p.clone()))
                .collect(),
        }
    }
}

fn orient3d_i128(a: &[i128; 3], b: &[i128; 3], c: &[i128; 3], d: &[i128; 3]) -> i8 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let w = [d[0] - a[0], d[1] - a[1], d[2] - a[2]];
    let det = (u[1] * v[2] - u[2] * v[1]) * w[0]
        + (u[2] * v[0] - u[0] * v[2]) * w[1]
        + (u[0] * v[1] - u[1] * v[0]) * w[2];
    match det.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Straight-line realization on the moment curve with seed-shuffled integer
/// parameters. Edges sharing an endpoint pair (parallel or antiparallel) get
/// one interior moment-curve bend each past the first, so the result is
/// always a valid embedding.
pub fn spatial_realize(g: &Digraph, seed: u64) -> Result<PLEmbedding> {
    let emb = spatial_realize_unvalidated(g, seed);
    emb.validate()?;
    Ok(emb)
}

/// [`spatial_realize`] without the final validation pass; general position
/// on the moment curve guarantees validity, so this is safe for large
/// gadgets where the quadratic validation pass is the only cost.
pub fn spatial_realize_unvalidated(g: &Digraph, seed: u64) -> PLEmbedding {
    let n = g.vertex_count();
    let mut params: Vec<i64> = (1..=n as i64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    params.shuffle(&mut rng);
    let tparam: BTreeMap<&VertexId, BigRational> = g
        .vertices()
        .iter()
        .zip(params.iter())
        .map(|(v, &t)| (v, BigRational::from_integer(t.into())))
        .collect();
    let vertex_pos: BTreeMap<VertexId, Point3> = g
        .vertices()
        .iter()
        .map(|v| (v.clone(), Point3::moment(&tparam[v])))
        .collect();

    // Edges needing bends: all but the first (by edge id) within each
    // unordered endpoint-pair group.
    let mut groups: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        let key = if e.tail <= e.head {
            (e.tail.clone(), e.head.clone())
        } else {
            (e.head.clone(), e.tail.clone())
        };
        groups.entry(key).or_default().push(e.id.clone());
    }
    // Bends grouped by midpoint parameter so offsets only need to be
    // distinct within a group.
    let mut by_mid: BTreeMap<BigRational, Vec<EdgeId>> = BTreeMap::new();
    for ((u, v), mut members) in groups {
        members.sort();
        if members.len() < 2 {
            continue;
        }
        let mid = (&tparam[&u] + &tparam[&v]) / BigRational::from_integer(2.into());
        by_mid.entry(mid).or_default().extend(members.into_iter().skip(1));
    }
    let mut bend_param: BTreeMap<EdgeId, BigRational> = BTreeMap::new();
    for (mid, mut members) in by_mid {
        members.sort();
        let g_size = members.len();
        let mut denom = BigInt::one();
        while denom < BigInt::from(8 * g_size) {
            denom *= 2;
        }
        for (r, e) in members.into_iter().enumerate() {
            let offset = BigRational::new(BigInt::from(2 * r as i64 + 1), denom.clone());
            bend_param.insert(e, &mid + offset);
        }
    }

    let mut edge_path = BTreeMap::new();
    for e in g.edges() {
        let a = vertex_pos[&e.tail].clone();
        let b = vertex_pos[&e.head].clone();
        let path = match bend_param.get(&e.id) {
            Some(t) => vec![a, Point3::moment(t), b],
            None => vec![a, b],
        };
        edge_path.insert(e.id.clone(), path);
    }
    PLEmbedding {
        graph: g.clone(),
        vertex_pos,
        edge_path,
    }
}

/// Exact minimum squared distance between segments that share no endpoint;
/// `None` when every pair shares an endpoint.
fn min_nonadjacent_sq_dist(emb: &PLEmbedding) -> Option<BigRational> {
    let mut segs: Vec<(&Point3, &Point3)> = Vec::new();
    for path in emb.edge_path.values() {
        for w in path.windows(2) {
            segs.push((&w[0], &w[1]));
        }
    }
    let mut best: Option<BigRational> = None;
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (a, b) = segs[i];
            let (c, d) = segs[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let dist = seg_seg_min_sq_dist(a, b, c, d);
            if best.as_ref().map(|m| dist < *m).unwrap_or(true) {
                best = Some(dist);
            }
        }
    }
    best
}

fn offset_schedule() -> Vec<Point3> {
    [
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
        (1, 1, 1),
        (1, -1, 2),
        (-2, 1, 1),
        (1, 2, -1),
        (-1, -2, 3),
    ]
    .into_iter()
    .map(|(x, y, z)| Point3::from_ints(x, y, z))
    .collect()
}

/// Doubles an embedded orientation digraph: every arc keeps its polyline,
/// and its antiparallel twin runs back along an offset copy (with an
/// inserted midpoint bend for straight arcs). The offset is a dyadic
/// fraction of the exact minimum clearance, halved until validation passes,
/// so each antiparallel bigon bounds a thin disk alongside the original
/// edge.
pub fn double_embedding(emb: &PLEmbedding) -> Result<(PLEmbedding, SymmetricDouble)> {
    let sd = symmetric_double(emb.graph())?;
    let base_r = clearance_radius(emb);
    let two = BigRational::from_integer(2.into());

    let mut radius = base_r;
    for round in 0..24 {
        for dir in offset_schedule() {
            let delta = dir.scale(&radius);
            let mut edge_path: BTreeMap<EdgeId, Vec<Point3>> = BTreeMap::new();
            for (eid, path) in emb.edge_paths() {
                edge_path.insert(eid.clone(), path.clone());
                let twin_id = sd.twin[eid].clone();
                let mut twin: Vec<Point3> = if path.len() == 2 {
                    vec![
                        path[1].clone(),
                        path[0].midpoint(&path[1]).add(&delta),
                        path[0].clone(),
                    ]
                } else {
                    let mut t = vec![path[path.len() - 1].clone()];
                    for p in path[1..path.len() - 1].iter().rev() {
                        t.push(p.add(&delta));
                    }
                    t.push(path[0].clone());
                    t
                };
                // Offsets must not collide with vertex positions.
                twin.dedup();
                edge_path.insert(twin_id, twin);
            }
            if let Ok(doubled) = PLEmbedding::new(
                sd.digraph.clone(),
                emb.positions().clone(),
                edge_path,
            ) {
                return Ok((doubled, sd));
            }
        }
        radius /= &two;
        let _ = round;
    }
    Err(Error::ClearanceFailed(
        "no offset radius produced a valid doubled embedding".into(),
    ))
}

fn clearance_radius(emb: &PLEmbedding) -> BigRational {
    let four = BigRational::from_integer(4.into());
    match min_nonadjacent_sq_dist(emb) {
        Some(d2) if d2.is_positive() => dyadic_sqrt_floor(&d2) / four,
        _ => {
            // Fall back to the smallest vertex pair distance.
            let pts: Vec<&Point3> = emb.vertex_pos.values().collect();
            let mut best: Option<BigRational> = None;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    let d = pts[i].sub(pts[j]);
                    let d2 = d.dot(&d);
                    if best.as_ref().map(|m| d2 < *m).unwrap_or(true) {
                        best = Some(d2);
                    }
                }
            }
            match best {
                Some(d2) if d2.is_positive() => dyadic_sqrt_floor(&d2) / four,
                _ => BigRational::one() / four,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PathContraction {
    pub embedding: PLEmbedding,
    /// None for the trivial (edgeless) path.
    pub merged: Option<VertexId>,
}

/// Contracts a simple directed path given by its arc ids: combinatorially
/// the path vertices merge into one vertex (keeping the final vertex's name
/// and position), arcs inside the merged set vanish as self-loops, and every
/// other arc formerly incident to a path vertex is rerouted alongside the
/// path's polyline at a small exact offset. Cycles avoiding the path are
/// untouched pointwise.
pub fn contract_path_embedding(emb: &PLEmbedding, path: &[EdgeId]) -> Result<PathContraction> {
    if path.is_empty() {
        return Ok(PathContraction {
            embedding: emb.clone(),
            merged: None,
        });
    }
    let g = emb.graph();
    // The arc sequence must chain head to tail and stay vertex-simple.
    let mut vseq: Vec<VertexId> = Vec::new();
    for (k, eid) in path.iter().enumerate() {
        let e = g.require_edge(eid)?;
        if k == 0 {
            vseq.push(e.tail.clone());
        } else if vseq[vseq.len() - 1] != e.tail {
            return Err(Error::InvalidParameter(format!(
                "arc `{eid}` does not continue the path"
            )));
        }
        vseq.push(e.head.clone());
    }
    let mut sorted = vseq.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("path revisits a vertex".into()));
    }
    let merged = vseq[vseq.len() - 1].clone();
    let path_set: BTreeSet<&VertexId> = vseq.iter().collect();

    // Path polyline from the first vertex to the last.
    let mut spine: Vec<Point3> = Vec::new();
    for eid in path {
        let p = emb.edge_path(eid);
        if spine.is_empty() {
            spine.extend(p.iter().cloned());
        } else {
            spine.extend(p[1..].iter().cloned());
        }
    }
    // Spine index of each path vertex.
    let spine_ix: BTreeMap<&VertexId, usize> = vseq
        .iter()
        .map(|v| {
            let pos = emb.vertex_pos(v);
            let ix = spine.iter().position(|p| p == pos).expect("vertex on spine");
            (v, ix)
        })
        .collect();

    // Contracted digraph.
    let mut cg = Digraph::new();
    for v in g.vertices() {
        if path_set.contains(v) && *v != merged {
            continue;
        }
        cg.add_vertex(v.clone())?;
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Reroute {
        None,
        TailOnPath(usize),
        HeadOnPath(usize),
    }
    let mut kept: Vec<(EdgeId, Reroute)> = Vec::new();
    for e in g.edges() {
        let t_on = path_set.contains(&e.tail);
        let h_on = path_set.contains(&e.head);
        if t_on && h_on {
            continue; // self-loop after merging (includes the path arcs)
        }
        let reroute = if t_on {
            Reroute::TailOnPath(spine_ix[&e.tail])
        } else if h_on {
            Reroute::HeadOnPath(spine_ix[&e.head])
        } else {
            Reroute::None
        };
        let tail = if t_on { merged.clone() } else { e.tail.clone() };
        let head = if h_on { merged.clone() } else { e.head.clone() };
        cg.add_arc(e.id.clone(), tail, head)?;
        kept.push((e.id.clone(), reroute));
    }
    let mut vertex_pos = BTreeMap::new();
    for v in cg.vertices() {
        vertex_pos.insert(v.clone(), emb.vertex_pos(v).clone());
    }

    let rerouted_count = kept
        .iter()
        .filter(|(_, r)| *r != Reroute::None)
        .count()
        .max(1);
    let base_r = clearance_radius(emb);
    let two = BigRational::from_integer(2.into());
    let mut radius = base_r;
    for _round in 0..24 {
        for dir in offset_schedule() {
            let mut edge_path: BTreeMap<EdgeId, Vec<Point3>> = BTreeMap::new();
            let mut rank = 0usize;
            let mut ok = true;
            for (eid, reroute) in &kept {
                let orig = emb.edge_path(eid);
                let new_path = match reroute {
                    Reroute::None => orig.to_vec(),
                    Reroute::TailOnPath(ix) | Reroute::HeadOnPath(ix) => {
                        rank += 1;
                        let frac = BigRational::new(
                            BigInt::from(rank as i64),
                            BigInt::from(rerouted_count as i64 + 1),
                        );
                        let delta = dir.scale(&(&radius * &frac));
                        // Offset copy of the spine from ix to the end.
                        let mut lane: Vec<Point3> = Vec::new();
                        for p in &spine[*ix..spine.len() - 1] {
                            lane.push(p.add(&delta));
                        }
                        lane.push(spine[spine.len() - 1].clone());
                        match reroute {
                            Reroute::TailOnPath(_) => {
                                // Path starts at merged position, runs down
                                // the lane, then follows the original arc.
                                let mut p: Vec<Point3> =
                                    lane.into_iter().rev().collect();
                                p.extend(orig[1..].iter().cloned());
                                p
                            }
                            Reroute::HeadOnPath(_) => {
                                let mut p: Vec<Point3> =
                                    orig[..orig.len() - 1].to_vec();
                                p.extend(lane);
                                p
                            }
                            Reroute::None => unreachable!(),
                        }
                    }
                };
                if new_path.windows(2).any(|w| w[0] == w[1]) {
                    ok = false;
                    break;
                }
                edge_path.insert(eid.clone(), new_path);
            }
            if !ok {
                continue;
            }
            if let Ok(contracted) = PLEmbedding::new(cg.clone(), vertex_pos.clone(), edge_path) {
                return Ok(PathContraction {
                    embedding: contracted,
                    merged: Some(merged),
                });
            }
        }
        radius /= &two;
    }
    Err(Error::ClearanceFailed(
        "no offset produced a valid contracted embedding".into(),
    ))
}

/// Embedding JSON: vertices and per-edge polylines with rationals as
/// `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub vertices: BTreeMap<String, [String; 3]>,
    pub edges: BTreeMap<String, Vec<[String; 3]>>,
}

impl PLEmbedding {
    pub fn to_doc(&self) -> EmbeddingDoc {
        let fmt = |p: &Point3| -> [String; 3] {
            [
                rat_to_string(&p.x),
                rat_to_string(&p.y),
                rat_to_string(&p.z),
            ]
        };
        EmbeddingDoc {
            vertices: self
                .vertex_pos
                .iter()
                .map(|(v, p)| (v.0.clone(), fmt(p)))
                .collect(),
            edges: self
                .edge_path
                .iter()
                .map(|(e, path)| (e.0.clone(), path.iter().map(fmt).collect()))
                .collect(),
        }
    }

    pub fn from_doc(graph: Digraph, doc: &EmbeddingDoc) -> Result<PLEmbedding> {
        let parse = |c: &[String; 3]| -> Result<Point3> {
            Ok(Point3::new(
                rat_from_str(&c[0])?,
                rat_from_str(&c[1])?,
                rat_from_str(&c[2])?,
            ))
        };
        let mut vertex_pos = BTreeMap::new();
        for (v, c) in &doc.vertices {
            vertex_pos.insert(VertexId(v.clone()), parse(c)?);
        }
        let mut edge_path = BTreeMap::new();
        for (e, path) in &doc.edges {
            let pts: Result<Vec<Point3>> = path.iter().map(parse).collect();
            edge_path.insert(EdgeId(e.clone()), pts?);
        }
        PLEmbedding::new(graph, vertex_pos, edge_path)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("embedding serialization");
        s.push('\n');
        s
    }

    pub fn from_json(graph: Digraph, s: &str) -> Result<PLEmbedding> {
        let doc: EmbeddingDoc = serde_json::from_str(s)?;
        PLEmbedding::from_doc(graph, &doc)
    }
}
