//! Knot invariants of embedded cycles.
//!
//! A cycle's diagram is built under an exactly-generic projection; its
//! determinant is computed from the Goeritz matrix of a checkerboard
//! coloring, and the Arf invariant follows from the determinant mod 8
//! (1, 7 -> 0; 3, 5 -> 1). A determinant other than 1 certifies a
//! nontrivial knot; determinant 1 is inconclusive.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cycle::Cycle;
use crate::embedding::PLEmbedding;
use crate::error::{Error, Result};
use crate::id::EdgeId;
use crate::projection::Scene;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnotCertificate {
    pub cycle: Cycle,
    /// |Delta(-1)|: odd for every knot diagram.
    #[serde(with = "biguint_decimal")]
    pub determinant: BigUint,
    /// 0 iff determinant = +-1 mod 8.
    pub arf: u8,
    pub crossing_count: usize,
}

mod biguint_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl KnotCertificate {
    /// Determinant != 1 certifies knottedness; 1 is inconclusive.
    pub fn certifies_knot(&self) -> bool {
        !self.determinant.is_one()
    }
}

/// One pass of the curve through a crossing, in walk order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// A knot diagram: raw passage data plus the checkerboard/Goeritz summary.
#[derive(Clone, Debug)]
pub struct Diagram {
    crossing_count: usize,
    passages: Vec<Passage>,
    /// Per crossing: (type sign, white region u, white region v).
    goeritz_rows: Vec<(i8, usize, usize)>,
    white_count: usize,
    /// Index of the deleted white region (the one containing the unbounded
    /// face).
    deleted: usize,
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.crossing_count
    }

    /// Crossing passages in walk order (each crossing appears twice).
    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// Goeritz matrix with one white region deleted.
    pub fn goeritz_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.white_count;
        let mut full = vec![vec![BigInt::zero(); n]; n];
        for &(eta, u, v) in &self.goeritz_rows {
            if u == v {
                continue;
            }
            let e = BigInt::from(eta);
            full[u][v] -= &e;
            full[v][u] -= &e;
        }
        for i in 0..n {
            let mut s = BigInt::zero();
            for j in 0..n {
                if j != i {
                    s += &full[i][j];
                }
            }
            full[i][i] = -s;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != self.deleted).collect();
        keep.iter()
            .map(|&i| keep.iter().map(|&j| full[i][j].clone()).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigUint {
        integer_det_abs(self.goeritz_matrix())
    }
}

/// Arf invariant from the determinant mod 8: +-1 -> 0, +-3 -> 1.
pub fn arf_from_determinant(det: &BigUint) -> Result<u8> {
    let m: u64 = (det % BigUint::from(8u8)).try_into().unwrap();
    match m {
        1 | 7 => Ok(0),
        3 | 5 => Ok(1),
        _ => Err(Error::Degenerate(format!(
            "even knot determinant {det}; the diagram is not a knot diagram"
        ))),
    }
}

/// |det| of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_det_abs(mut m: Vec<Vec<BigInt>>) -> BigUint {
    let n = m.len();
    if n == 0 {
        return BigUint::one();
    }
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigUint::zero();
            };
            m.swap(k, r);
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].abs().to_biguint().expect("abs")
}

/// Builds the diagram of a cycle under the embedding's generic projection.
pub fn diagram_of(emb: &PLEmbedding, cycle: &Cycle) -> Result<Diagram> {
    let edges: std::collections::BTreeSet<EdgeId> =
        cycle.steps().iter().map(|s| s.edge.clone()).collect();
    let scene = Scene::build(&emb.paths_for(edges))?;
    diagram_in_scene(&scene, cycle)
}

pub fn diagram_in_scene(scene: &Scene, cycle: &Cycle) -> Result<Diagram> {
    let poly = scene.cycle_poly(cycle)?;
    let n = poly.points.len();

    // Corner coordinates as rationals.
    let corner: Vec<[BigRational; 2]> = poly
        .points
        .iter()
        .map(|&p| {
            let xy = scene.point_xy(p);
            [
                BigRational::from_integer(xy[0].clone()),
                BigRational::from_integer(xy[1].clone()),
            ]
        })
        .collect();
    // Traversal direction of each polygon side, as integer vectors.
    let side_dir: Vec<[BigInt; 2]> = (0..n)
        .map(|k| {
            let a = scene.point_xy(poly.points[k]);
            let b = scene.point_xy(poly.points[(k + 1) % n]);
            [&b[0] - &a[0], &b[1] - &a[1]]
        })
        .collect();

    // Crossings, translated to polygon sides and traversal-relative params.
    let seg_pos: BTreeMap<usize, (usize, i8)> = poly
        .segs
        .iter()
        .enumerate()
        .map(|(k, &(s, eps))| (s, (k, eps)))
        .collect();
    struct Crossing {
        point: [BigRational; 2],
        /// (side, param along traversal) for the over and under passes.
        over: (usize, BigRational),
        under: (usize, BigRational),
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    for raw in scene.crossings_within(&poly) {
        let (ka, ea) = seg_pos[&raw.seg_a];
        let (kb, eb) = seg_pos[&raw.seg_b];
        let adj = |p: BigRational, eps: i8| {
            if eps > 0 {
                p
            } else {
                BigRational::one() - p
            }
        };
        let pa = adj(raw.param_a, ea);
        let pb = adj(raw.param_b, eb);
        let (over, under) = if raw.over_a {
            ((ka, pa), (kb, pb))
        } else {
            ((kb, pb), (ka, pa))
        };
        crossings.push(Crossing {
            point: raw.point,
            over,
            under,
        });
    }
    let c_count = crossings.len();

    // Walk: corner k, then crossings on side k ordered by param.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    enum Node {
        Corner(usize),
        Cross(usize),
    }
    let mut events: Vec<(Node, usize)> = Vec::new(); // (node, node index)
    let node_index = |nd: Node| match nd {
        Node::Corner(k) => k,
        Node::Cross(c) => n + c,
    };
    let mut passages = Vec::new();
    for k in 0..n {
        events.push((Node::Corner(k), k));
        let mut on_side: Vec<(BigRational, usize, bool)> = Vec::new();
        for (c, cr) in crossings.iter().enumerate() {
            if cr.over.0 == k {
                on_side.push((cr.over.1.clone(), c, true));
            }
            if cr.under.0 == k {
                on_side.push((cr.under.1.clone(), c, false));
            }
        }
        on_side.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, c, over) in on_side {
            events.push((Node::Cross(c), node_index(Node::Cross(c))));
            passages.push(Passage { crossing: c, over });
        }
    }
    let m = events.len();
    let node_count = n + c_count;
    let point_of_event = |i: usize| -> [BigRational; 2] {
        match events[i].0 {
            Node::Corner(k) => corner[k].clone(),
            Node::Cross(c) => crossings[c].point.clone(),
        }
    };

    // Darts: 2 per piece. Dart 2i leaves events[i] toward events[i+1];
    // dart 2i+1 is its twin.
    let dart_count = 2 * m;
    let dart_node = |d: usize| -> usize {
        let piece = d / 2;
        if d % 2 == 0 {
            events[piece].1
        } else {
            events[(piece + 1) % m].1
        }
    };
    let dart_dir = |d: usize| -> [BigRational; 2] {
        let piece = d / 2;
        let a = point_of_event(piece);
        let b = point_of_event((piece + 1) % m);
        if d % 2 == 0 {
            [&b[0] - &a[0], &b[1] - &a[1]]
        } else {
            [&a[0] - &b[0], &a[1] - &b[1]]
        }
    };
    let twin = |d: usize| -> usize { d ^ 1 };

    // Rotation: darts per node sorted by angle from the +x axis, CCW.
    let mut node_darts: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for d in 0..dart_count {
        node_darts[dart_node(d)].push(d);
    }
    let angle_cmp = |a: &[BigRational; 2], b: &[BigRational; 2]| -> std::cmp::Ordering {
        let half = |v: &[BigRational; 2]| -> u8 {
            if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
                0
            } else {
                1
            }
        };
        half(a).cmp(&half(b)).then_with(|| {
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            if cross.is_positive() {
                std::cmp::Ordering::Less
            } else if cross.is_negative() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        })
    };
    for darts in node_darts.iter_mut() {
        darts.sort_by(|&d1, &d2| angle_cmp(&dart_dir(d1), &dart_dir(d2)));
    }
    let mut dart_pos = vec![0usize; dart_count];
    for darts in &node_darts {
        for (i, &d) in darts.iter().enumerate() {
            dart_pos[d] = i;
        }
    }

    // Trace faces (kept on the right of the walk direction): the successor
    // of dart d is the rotation-successor of its twin. Record which face
    // owns each angular sector on the way.
    let mut dart_face = vec![usize::MAX; dart_count];
    let mut sector_face: Vec<Vec<usize>> = node_darts
        .iter()
        .map(|ds| vec![usize::MAX; ds.len()])
        .collect();
    let mut face_count = 0usize;
    for start in 0..dart_count {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let face = face_count;
        face_count += 1;
        let mut d = start;
        loop {
            dart_face[d] = face;
            let t = twin(d);
            let nd = dart_node(t);
            let pos = dart_pos[t];
            sector_face[nd][pos] = face;
            let deg = node_darts[nd].len();
            d = node_darts[nd][(pos + 1) % deg];
            if d == start {
                break;
            }
        }
    }
    // Euler check for a connected diagram of a closed curve.
    if node_count + face_count != m + 2 {
        return Err(Error::Degenerate(format!(
            "diagram is not a connected planar map: V={node_count} E={m} F={face_count}"
        )));
    }

    // Checkerboard coloring across pieces.
    let mut color = vec![u8::MAX; face_count];
    color[dart_face[0]] = 0;
    let mut queue = vec![dart_face[0]];
    while let Some(f) = queue.pop() {
        for d in 0..dart_count {
            if dart_face[d] == f {
                let g = dart_face[twin(d)];
                if color[g] == u8::MAX {
                    color[g] = 1 - color[f];
                    queue.push(g);
                } else if color[g] == color[f] {
                    return Err(Error::Degenerate(
                        "diagram faces are not checkerboard-colorable".into(),
                    ));
                }
            }
        }
    }

    // Unbounded face: at the topmost node, the sector containing (0, 1).
    let node_pts: Vec<[BigRational; 2]> = (0..node_count)
        .map(|ix| {
            if ix < n {
                corner[ix].clone()
            } else {
                crossings[ix - n].point.clone()
            }
        })
        .collect();
    let top = (0..node_count)
        .max_by(|&a, &b| {
            node_pts[a][1]
                .cmp(&node_pts[b][1])
                .then_with(|| node_pts[a][0].cmp(&node_pts[b][0]))
        })
        .expect("nonempty diagram");
    let up = [BigRational::zero(), BigRational::one()];
    let unbounded = {
        let darts = &node_darts[top];
        let le_count = darts
            .iter()
            .filter(|&&d| angle_cmp(&dart_dir(d), &up) != std::cmp::Ordering::Greater)
            .count();
        let sector = (le_count + darts.len() - 1) % darts.len();
        sector_face[top][sector]
    };
    let white = color[unbounded];

    // White region numbering.
    let mut white_ix = vec![usize::MAX; face_count];
    let mut white_count = 0usize;
    for f in 0..face_count {
        if color[f] == white {
            white_ix[f] = white_count;
            white_count += 1;
        }
    }

    // Goeritz data per crossing.
    let mut goeritz_rows = Vec::new();
    for (c, cr) in crossings.iter().enumerate() {
        let nd = n + c;
        let darts = &node_darts[nd];
        debug_assert_eq!(darts.len(), 4);
        let faces: Vec<usize> = (0..4).map(|i| sector_face[nd][i]).collect();
        debug_assert_eq!(color[faces[0]], color[faces[2]]);
        debug_assert_eq!(color[faces[1]], color[faces[3]]);
        let (wu, wv) = if color[faces[0]] == white {
            (faces[0], faces[2])
        } else {
            (faces[1], faces[3])
        };
        // Crossing type: rotate the over line CCW onto the under line; the
        // swept quadrant pair determines the sign.
        let o = &side_dir[cr.over.0];
        let u = &side_dir[cr.under.0];
        let cross_ou = &o[0] * &u[1] - &o[1] * &u[0];
        let u_adj: [BigInt; 2] = if cross_ou.is_positive() {
            u.clone()
        } else {
            [-&u[0], -&u[1]]
        };
        let mdir = [
            BigRational::from_integer(&o[0] + &u_adj[0]),
            BigRational::from_integer(&o[1] + &u_adj[1]),
        ];
        let le_count = darts
            .iter()
            .filter(|&&d| angle_cmp(&dart_dir(d), &mdir) != std::cmp::Ordering::Greater)
            .count();
        let sector = (le_count + darts.len() - 1) % darts.len();
        let swept = sector_face[nd][sector];
        let eta: i8 = if color[swept] == white { 1 } else { -1 };
        goeritz_rows.push((eta, white_ix[wu], white_ix[wv]));
    }

    Ok(Diagram {
        crossing_count: c_count,
        passages,
        goeritz_rows,
        white_count,
        deleted: white_ix[unbounded],
    })
}

/// Builds the knot certificate of a cycle realized in `emb`.
pub fn knot_certificate(emb: &PLEmbedding, cycle: &Cycle) -> Result<KnotCertificate> {
    let diagram = diagram_of(emb, cycle)?;
    let determinant = diagram.determinant();
    let arf = arf_from_determinant(&determinant)?;
    Ok(KnotCertificate {
        cycle: cycle.clone(),
        determinant,
        arf,
        crossing_count: diagram.crossing_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::oriented_polygon;
    use crate::embedding::PLEmbedding;
    use crate::geom::Point3;
    use crate::id::VertexId;
    use std::collections::BTreeMap;

    fn polygon_embedding(coords: &[(i64, i64, i64)]) -> (PLEmbedding, Cycle) {
        let g = oriented_polygon("k", coords.len());
        let pos: BTreeMap<VertexId, Point3> = g
            .vertices()
            .iter()
            .cloned()
            .zip(coords.iter().map(|&(x, y, z)| Point3::from_ints(x, y, z)))
            .collect();
        let mut paths = BTreeMap::new();
        for e in g.edges() {
            paths.insert(
                e.id.clone(),
                vec![pos[&e.tail].clone(), pos[&e.head].clone()],
            );
        }
        let emb = PLEmbedding::new(g, pos, paths).unwrap();
        let cycles =
            crate::enumerate::directed_cycles(emb.graph(), crate::enumerate::EnumOptions::default())
                .unwrap();
        let c = cycles.into_iter().max_by_key(|c| c.len()).unwrap();
        (emb, c)
    }

    #[test]
    fn convex_polygon_is_unknotted() {
        let (emb, c) = polygon_embedding(&[(0, 0, 0), (4, 0, 0), (4, 4, 0), (0, 4, 0)]);
        let cert = knot_certificate(&emb, &c).unwrap();
        assert_eq!(cert.determinant, BigUint::from(1u8));
        assert_eq!(cert.arf, 0);
        assert_eq!(cert.crossing_count, 0);
        assert!(!cert.certifies_knot());
    }

    #[test]
    fn hexagonal_trefoil_has_determinant_three() {
        let (emb, c) = polygon_embedding(&[
            (6, 5, 5),
            (-8, 0, -4),
            (3, -9, 5),
            (4, 7, -2),
            (-6, -1, 4),
            (2, -5, -3),
        ]);
        let cert = knot_certificate(&emb, &c).unwrap();
        assert_eq!(cert.determinant, BigUint::from(3u8));
        assert_eq!(cert.arf, 1);
        assert!(cert.certifies_knot());
    }

    #[test]
    fn figure_eight_has_determinant_five() {
        let (emb, c) = polygon_embedding(&[
            (1036, 2501, 1000),
            (-1195, -495, -1000),
            (1195, -495, 1000),
            (-1036, 2501, -1000),
            (-1036, -2501, 1000),
            (1195, 495, -1000),
            (-1195, 495, 1000),
            (1036, -2501, -1000),
        ]);
        let cert = knot_certificate(&emb, &c).unwrap();
        assert_eq!(cert.determinant, BigUint::from(5u8));
        assert_eq!(cert.arf, 1);
    }

    #[test]
    fn arf_table() {
        assert_eq!(arf_from_determinant(&BigUint::from(1u8)).unwrap(), 0);
        assert_eq!(arf_from_determinant(&BigUint::from(7u8)).unwrap(), 0);
        assert_eq!(arf_from_determinant(&BigUint::from(9u8)).unwrap(), 0);
        assert_eq!(arf_from_determinant(&BigUint::from(3u8)).unwrap(), 1);
        assert_eq!(arf_from_determinant(&BigUint::from(5u8)).unwrap(), 1);
        assert_eq!(arf_from_determinant(&BigUint::from(11u8)).unwrap(), 1);
        assert!(arf_from_determinant(&BigUint::from(4u8)).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        assert_eq!(integer_det_abs(vec![]), BigUint::from(1u8));
        assert_eq!(integer_det_abs(m(&[&[5]])), BigUint::from(5u8));
        assert_eq!(
            integer_det_abs(m(&[&[2, 1], &[1, 2]])),
            BigUint::from(3u8)
        );
        assert_eq!(
            integer_det_abs(m(&[&[0, 1], &[1, 0]])),
            BigUint::from(1u8)
        );
        assert_eq!(
            integer_det_abs(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigUint::from(0u8)
        );
    }
}
