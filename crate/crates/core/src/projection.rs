//! Exact generic projections.
//!
//! A [`Scene`] fixes one projection direction for a set of edge polylines,
//! checked exactly for genericity: no projected segment degenerates, no
//! point lands on a segment it does not bound, no two crossings coincide,
//! and every crossing separates depths strictly. Crossings between all
//! segment pairs are cached so cycle-pair linking numbers are cheap.
//!
//! The direction schedule starts at (0,0,1) followed by a fixed family of
//! small integer perturbations; the first direction passing every check is
//! used. Coordinates are rewritten over a common denominator so all tests
//! are integer sign computations, with an i128 fast path when magnitudes
//! permit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cycle::{Cycle, Traversal};
use crate::error::{Error, Result};
use crate::geom::{scale_points, sign_of, Point3};
use crate::id::EdgeId;

/// Candidate projection directions: straight down z, then small integer
/// perturbations ordered by size.
pub fn direction_schedule() -> Vec<[i64; 3]> {
    let mut dirs = vec![[0, 0, 1]];
    let mut rest = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in 1i64..=3 {
                if (a, b, c) == (0, 0, 1) {
                    continue;
                }
                rest.push([a, b, c]);
            }
        }
    }
    rest.sort_by_key(|d| (d[0].abs() + d[1].abs() + d[2], d[0].abs(), d[1].abs()));
    dirs.extend(rest);
    dirs
}

/// A cached proper crossing incident to a segment.
#[derive(Clone, Copy, Debug)]
pub struct SegCross {
    pub other: usize,
    /// Sign of cross2d(dir_self, dir_other) with both segments in stored
    /// orientation.
    pub sign: i8,
    /// True iff this segment passes over `other`.
    pub over_self: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SceneSeg {
    pub a: usize,
    pub b: usize,
}

/// Exact crossing record for diagram building. Parameters are relative to
/// the stored segment orientation.
#[derive(Clone, Debug)]
pub struct RawCross {
    pub seg_a: usize,
    pub seg_b: usize,
    pub param_a: BigRational,
    pub param_b: BigRational,
    pub over_a: bool,
    pub point: [BigRational; 2],
}

pub struct Scene {
    pub direction: [i64; 3],
    /// Deduplicated projected points over a common denominator.
    xy: Vec<[BigInt; 2]>,
    depth: Vec<BigInt>,
    small: Option<Vec<[i128; 2]>>,
    segs: Vec<SceneSeg>,
    /// Edge id -> (polyline point indices, segment id range).
    edges: BTreeMap<EdgeId, (Vec<usize>, std::ops::Range<usize>)>,
    cross: Vec<Vec<SegCross>>,
}

/// One cycle's projected closed polyline: scene segments with traversal
/// signs, plus the closed point sequence.
#[derive(Clone, Debug)]
pub struct CyclePoly {
    pub segs: Vec<(usize, i8)>,
    pub points: Vec<usize>,
}

const SMALL_LIMIT: i128 = 1 << 61;

impl Scene {
    /// Builds a scene for the given edge polylines, searching the direction
    /// schedule for the first exactly-generic projection.
    pub fn build(paths: &BTreeMap<EdgeId, Vec<Point3>>) -> Result<Scene> {
        Scene::build_with_schedule(paths, &direction_schedule())
    }

    /// As [`Scene::build`] with an explicit candidate direction list.
    pub fn build_with_schedule(
        paths: &BTreeMap<EdgeId, Vec<Point3>>,
        schedule: &[[i64; 3]],
    ) -> Result<Scene> {
        // Deduplicate 3D points (shared endpoints collapse to one index).
        let mut point_ix: BTreeMap<Point3, usize> = BTreeMap::new();
        let mut points: Vec<Point3> = Vec::new();
        let mut edge_pts: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (eid, path) in paths {
            let ixs = path
                .iter()
                .map(|p| {
                    *point_ix.entry(p.clone()).or_insert_with(|| {
                        points.push(p.clone());
                        points.len() - 1
                    })
                })
                .collect();
            edge_pts.insert(eid.clone(), ixs);
        }
        let scaled = scale_points(points.iter());

        let mut segs = Vec::new();
        let mut edges = BTreeMap::new();
        for (eid, ixs) in &edge_pts {
            let start = segs.len();
            for w in ixs.windows(2) {
                segs.push(SceneSeg { a: w[0], b: w[1] });
            }
            edges.insert(eid.clone(), (ixs.clone(), start..segs.len()));
        }

        let tried = schedule.len();
        for &dir in schedule {
            if let Some(scene) = Scene::try_direction(&scaled.coords, &segs, &edges, dir) {
                return Ok(scene);
            }
        }
        Err(Error::DegenerateProjection { tried })
    }

    fn try_direction(
        coords: &[[BigInt; 3]],
        segs: &[SceneSeg],
        edges: &BTreeMap<EdgeId, (Vec<usize>, std::ops::Range<usize>)>,
        dir: [i64; 3],
    ) -> Option<Scene> {
        let d: [BigInt; 3] = [dir[0].into(), dir[1].into(), dir[2].into()];
        // Right-handed basis (b1, b2, d).
        let unit = |k: usize| {
            let mut e = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
            e[k] = BigInt::from(1);
            e
        };
        let mut b1 = crate::geom::cross3(&d, &unit(0));
        if crate::geom::is_zero3(&b1) {
            b1 = crate::geom::cross3(&d, &unit(1));
        }
        let b2 = crate::geom::cross3(&d, &b1);
        let xy: Vec<[BigInt; 2]> = coords
            .iter()
            .map(|p| [crate::geom::dot3(p, &b1), crate::geom::dot3(p, &b2)])
            .collect();
        let depth: Vec<BigInt> = coords.iter().map(|p| crate::geom::dot3(p, &d)).collect();

        // Distinct projected points.
        let mut order: Vec<usize> = (0..xy.len()).collect();
        order.sort_by(|&i, &j| xy[i].cmp(&xy[j]));
        if order.windows(2).any(|w| xy[w[0]] == xy[w[1]]) {
            return None;
        }

        let small = to_small(&xy);

        // No point on the closed image of a segment not bounding it.
        for (pi, p) in xy.iter().enumerate() {
            for s in segs {
                if s.a == pi || s.b == pi {
                    continue;
                }
                if point_on_closed_segment(p, &xy[s.a], &xy[s.b]) {
                    return None;
                }
            }
        }

        // All pairwise proper crossings; all crossing points distinct; all
        // depths strictly separated.
        let mut cross = vec![Vec::new(); segs.len()];
        let mut crossing_points: Vec<[BigRational; 2]> = Vec::new();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let (si, sj) = (&segs[i], &segs[j]);
                if si.a == sj.a || si.a == sj.b || si.b == sj.a || si.b == sj.b {
                    // Sharing a point: genericity already rules out further
                    // contact.
                    continue;
                }
                let hit = match &small {
                    Some(sm) => proper_crossing_i128(sm, si, sj),
                    None => proper_crossing_big(&xy, si, sj),
                };
                let Some(sign) = hit else { continue };
                // Exact crossing data in BigInt for depth and coincidence.
                let raw = resolve_crossing(&xy, &depth, si, sj)?;
                crossing_points.push(raw.point.clone());
                cross[i].push(SegCross {
                    other: j,
                    sign,
                    over_self: raw.over_a,
                });
                cross[j].push(SegCross {
                    other: i,
                    sign: -sign,
                    over_self: !raw.over_a,
                });
            }
        }
        crossing_points.sort_by(|a, b| a[0].cmp(&b[0]).then_with(|| a[1].cmp(&b[1])));
        if crossing_points.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }

        Some(Scene {
            direction: dir,
            xy,
            depth,
            small,
            segs: segs.to_vec(),
            edges: edges.clone(),
            cross,
        })
    }

    pub fn segment_count(&self) -> usize {
        self.segs.len()
    }

    /// True when coordinates fit the i128 fast path.
    pub fn fast_path(&self) -> bool {
        self.small.is_some()
    }

    pub fn segment(&self, i: usize) -> SceneSeg {
        self.segs[i]
    }

    pub fn point_xy(&self, i: usize) -> &[BigInt; 2] {
        &self.xy[i]
    }

    pub fn has_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    /// Projected closed polyline of a cycle. The cycle's edges must all be
    /// in the scene.
    pub fn cycle_poly(&self, cycle: &Cycle) -> Result<CyclePoly> {
        let mut segs = Vec::new();
        let mut points = Vec::new();
        for step in cycle.steps() {
            let (pts, range) = self
                .edges
                .get(&step.edge)
                .ok_or_else(|| Error::UnknownEdge(step.edge.0.clone()))?;
            match step.dir {
                Traversal::Forward => {
                    for s in range.clone() {
                        segs.push((s, 1i8));
                    }
                    points.extend(pts[..pts.len() - 1].iter().copied());
                }
                Traversal::Backward => {
                    for s in range.clone().rev() {
                        segs.push((s, -1i8));
                    }
                    points.extend(pts[1..].iter().rev().copied());
                }
            }
        }
        Ok(CyclePoly { segs, points })
    }

    /// One-sided signed crossing count: the sum of crossing signs over
    /// crossings where `a` passes over `b`.
    pub fn linking_number(&self, a: &CyclePoly, b: &CyclePoly) -> Result<i64> {
        let mut mark = vec![0i8; self.segs.len()];
        for &(s, eps) in &b.segs {
            mark[s] = eps;
        }
        let mut total: i64 = 0;
        for &(s, eps_a) in &a.segs {
            for c in &self.cross[s] {
                let eps_b = mark[c.other];
                if eps_b != 0 && c.over_self {
                    total = total
                        .checked_add(i64::from(eps_a) * i64::from(eps_b) * i64::from(c.sign))
                        .ok_or(Error::LinkingOverflow)?;
                }
            }
        }
        Ok(total)
    }

    /// Total signed crossing count over *all* crossings between the two
    /// curves, each crossing signed with its over-strand first; this is
    /// twice the linking number.
    pub fn total_signed_crossings(&self, a: &CyclePoly, b: &CyclePoly) -> Result<i64> {
        let mut mark = vec![0i8; self.segs.len()];
        for &(s, eps) in &b.segs {
            mark[s] = eps;
        }
        let mut total: i64 = 0;
        for &(s, eps_a) in &a.segs {
            for c in &self.cross[s] {
                let eps_b = mark[c.other];
                if eps_b != 0 {
                    let sign = if c.over_self { c.sign } else { -c.sign };
                    total = total
                        .checked_add(i64::from(eps_a) * i64::from(eps_b) * i64::from(sign))
                        .ok_or(Error::LinkingOverflow)?;
                }
            }
        }
        Ok(total)
    }

    /// Exact crossing records among the segments of one polyline, for
    /// diagram construction.
    pub fn crossings_within(&self, poly: &CyclePoly) -> Vec<RawCross> {
        let segset: Vec<usize> = poly.segs.iter().map(|&(s, _)| s).collect();
        let mut out = Vec::new();
        for (i, &sa) in segset.iter().enumerate() {
            for &sb in segset.iter().skip(i + 1) {
                if self.cross[sa].iter().any(|c| c.other == sb) {
                    let raw = resolve_crossing(
                        &self.xy,
                        &self.depth,
                        &self.segs[sa],
                        &self.segs[sb],
                    )
                    .expect("cached crossing resolves");
                    out.push(RawCross {
                        seg_a: sa,
                        seg_b: sb,
                        ..raw
                    });
                }
            }
        }
        out
    }
}

fn to_small(xy: &[[BigInt; 2]]) -> Option<Vec<[i128; 2]>> {
    let mut out = Vec::with_capacity(xy.len());
    for p in xy {
        let x: i128 = p[0].clone().try_into().ok()?;
        let y: i128 = p[1].clone().try_into().ok()?;
        if x.abs() >= SMALL_LIMIT || y.abs() >= SMALL_LIMIT {
            return None;
        }
        out.push([x, y]);
    }
    Some(out)
}

fn point_on_closed_segment(p: &[BigInt; 2], a: &[BigInt; 2], b: &[BigInt; 2]) -> bool {
    let cross = (&b[0] - &a[0]) * (&p[1] - &a[1]) - (&b[1] - &a[1]) * (&p[0] - &a[0]);
    if !cross.is_zero() {
        return false;
    }
    let (lox, hix) = if a[0] <= b[0] {
        (&a[0], &b[0])
    } else {
        (&b[0], &a[0])
    };
    let (loy, hiy) = if a[1] <= b[1] {
        (&a[1], &b[1])
    } else {
        (&b[1], &a[1])
    };
    lox <= &p[0] && &p[0] <= hix && loy <= &p[1] && &p[1] <= hiy
}

/// Strict interior crossing test, returning `sign(cross2d(dir_i, dir_j))`.
/// Touching configurations are excluded by scene genericity, so only strict
/// sign tests appear here.
fn proper_crossing_i128(xy: &[[i128; 2]], si: &SceneSeg, sj: &SceneSeg) -> Option<i8> {
    let a = xy[si.a];
    let b = xy[si.b];
    let c = xy[sj.a];
    let d = xy[sj.b];
    let o1 = orient_i128(a, b, c);
    let o2 = orient_i128(a, b, d);
    if o1 * o2 >= 0 {
        return None;
    }
    let o3 = orient_i128(c, d, a);
    let o4 = orient_i128(c, d, b);
    if o3 * o4 >= 0 {
        return None;
    }
    let cross = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0]);
    Some(if cross > 0 { 1 } else { -1 })
}

fn orient_i128(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    let v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    v.signum()
}

fn proper_crossing_big(xy: &[[BigInt; 2]], si: &SceneSeg, sj: &SceneSeg) -> Option<i8> {
    let orient = |a: &[BigInt; 2], b: &[BigInt; 2], c: &[BigInt; 2]| -> i8 {
        sign_of(&((&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])))
    };
    let (a, b, c, d) = (&xy[si.a], &xy[si.b], &xy[sj.a], &xy[sj.b]);
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 * o2 >= 0 {
        return None;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o3 * o4 >= 0 {
        return None;
    }
    let cross = (&b[0] - &a[0]) * (&d[1] - &c[1]) - (&b[1] - &a[1]) * (&d[0] - &c[0]);
    Some(sign_of(&cross))
}

/// Solves the crossing exactly: parameters, point, and depth order.
/// Returns `None` when the depths coincide (a 3D intersection: impossible in
/// a valid embedding, rejected defensively).
fn resolve_crossing(
    xy: &[[BigInt; 2]],
    depth: &[BigInt],
    si: &SceneSeg,
    sj: &SceneSeg,
) -> Option<RawCross> {
    let a = &xy[si.a];
    let b = &xy[si.b];
    let c = &xy[sj.a];
    let d = &xy[sj.b];
    let u = [&b[0] - &a[0], &b[1] - &a[1]];
    let v = [&d[0] - &c[0], &d[1] - &c[1]];
    let den = &u[0] * &v[1] - &u[1] * &v[0];
    debug_assert!(!den.is_zero());
    let w = [&c[0] - &a[0], &c[1] - &a[1]];
    let s_num = &w[0] * &v[1] - &w[1] * &v[0];
    let t_num = &w[0] * &u[1] - &w[1] * &u[0];
    let param_a = BigRational::new(s_num.clone(), den.clone());
    let param_b = BigRational::new(t_num.clone(), den.clone());
    // Depth difference sign: (h_a(s) - h_b(t)) * den^2 keeps it integral.
    let ha0 = &depth[si.a];
    let ha1 = &depth[si.b];
    let hb0 = &depth[sj.a];
    let hb1 = &depth[sj.b];
    let diff = (ha0 - hb0) * &den + &s_num * (ha1 - ha0) - &t_num * (hb1 - hb0);
    let diff_sign = sign_of(&diff) * sign_of(&den);
    if diff_sign == 0 {
        return None;
    }
    let px = BigRational::new(&a[0] * &den + &s_num * &u[0], den.clone());
    let py = BigRational::new(&a[1] * &den + &s_num * &u[1], den.clone());
    Some(RawCross {
        seg_a: 0,
        seg_b: 0,
        param_a,
        param_b,
        over_a: diff_sign > 0,
        point: [px, py],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn paths_of(polys: &[(&str, Vec<Point3>)]) -> BTreeMap<EdgeId, Vec<Point3>> {
        polys
            .iter()
            .map(|(n, p)| (EdgeId(n.to_string()), p.clone()))
            .collect()
    }

    #[test]
    fn schedule_starts_straight_down() {
        let s = direction_schedule();
        assert_eq!(s[0], [0, 0, 1]);
        assert!(s.len() > 100);
    }

    #[test]
    fn crossing_cache_and_over_under() {
        // Two segments crossing in projection; first passes above.
        let paths = paths_of(&[
            ("e1", vec![pt(-2, -2, 1), pt(2, 2, 1)]),
            ("e2", vec![pt(-2, 2, 0), pt(2, -2, 0)]),
        ]);
        let scene = Scene::build(&paths).unwrap();
        assert_eq!(scene.segment_count(), 2);
        let c = &scene.cross[0];
        assert_eq!(c.len(), 1);
        // e1 sorts before e2, so segment 0 belongs to e1 (depth 1): over.
        assert!(c[0].over_self);
    }

    #[test]
    fn degenerate_directions_are_skipped() {
        // A segment parallel to (0,0,1) forces a perturbed direction.
        let paths = paths_of(&[
            ("e1", vec![pt(0, 0, -3), pt(0, 0, 3)]),
            ("e2", vec![pt(1, 1, 0), pt(2, 2, 0)]),
        ]);
        let scene = Scene::build(&paths).unwrap();
        assert_ne!(scene.direction, [0, 0, 1]);
    }

    #[test]
    fn moment_curve_points_project_cleanly() {
        let pts: Vec<Point3> = (1..=8)
            .map(|t| Point3::moment(&BigRational::from_integer(t.into())))
            .collect();
        let mut paths = BTreeMap::new();
        for i in 0..8 {
            paths.insert(
                EdgeId(format!("e{i}")),
                vec![pts[i].clone(), pts[(i + 3) % 8].clone()],
            );
        }
        let scene = Scene::build(&paths).unwrap();
        assert!(scene.fast_path());
    }
}
