//! Exact rational geometry: points, common-denominator integer scaling, and
//! the 3D predicates used by embedding validation. No floating point
//! anywhere; every comparison is an exact integer or rational sign test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational point in 3-space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl Point3 {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3 {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
            z: BigRational::from_integer(z.into()),
        }
    }

    /// Point on the moment curve (t, t^2, t^3).
    pub fn moment(t: &BigRational) -> Self {
        Point3 {
            x: t.clone(),
            y: t * t,
            z: t * t * t,
        }
    }

    pub fn add(&self, o: &Point3) -> Point3 {
        Point3 {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            z: &self.z + &o.z,
        }
    }

    pub fn sub(&self, o: &Point3) -> Point3 {
        Point3 {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
            z: &self.z - &o.z,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Point3 {
        Point3 {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }

    pub fn dot(&self, o: &Point3) -> BigRational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Point3) -> Point3 {
        Point3 {
            x: &self.y * &o.z - &self.z * &o.y,
            y: &self.z * &o.x - &self.x * &o.z,
            z: &self.x * &o.y - &self.y * &o.x,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn midpoint(&self, o: &Point3) -> Point3 {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.add(o).scale(&half)
    }
}

/// Parses `p` or `p/q` into an exact rational.
pub fn rat_from_str(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
    }
}

/// Formats as `p` for integers, `p/q` otherwise.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Points rewritten over one common denominator: `coords[i] / scale` is the
/// original point.
pub struct ScaledPoints {
    pub scale: BigInt,
    pub coords: Vec<[BigInt; 3]>,
}

pub fn scale_points<'a>(pts: impl Iterator<Item = &'a Point3> + Clone) -> ScaledPoints {
    let mut scale = BigInt::one();
    for p in pts.clone() {
        for c in [&p.x, &p.y, &p.z] {
            scale = scale.lcm(c.denom());
        }
    }
    let coords = pts
        .map(|p| {
            [
                p.x.numer() * (&scale / p.x.denom()),
                p.y.numer() * (&scale / p.y.denom()),
                p.z.numer() * (&scale / p.z.denom()),
            ]
        })
        .collect();
    ScaledPoints { scale, coords }
}

pub fn sub3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot3(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn is_zero3(a: &[BigInt; 3]) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Sign of det[b-a; c-a; d-a]: 0 iff the four points are coplanar.
pub fn orient3d(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3], d: &[BigInt; 3]) -> i8 {
    let u = sub3(b, a);
    let v = sub3(c, a);
    let w = sub3(d, a);
    let det = dot3(&cross3(&u, &v), &w);
    sign_of(&det)
}

pub fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn orient2d(a: (&BigInt, &BigInt), b: (&BigInt, &BigInt), c: (&BigInt, &BigInt)) -> i8 {
    let det = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    sign_of(&det)
}

/// Closed-segment intersection for segments with four distinct endpoints.
/// Any contact counts.
pub fn segments_intersect_3d(
    a: &[BigInt; 3],
    b: &[BigInt; 3],
    c: &[BigInt; 3],
    d: &[BigInt; 3],
) -> bool {
    let u = sub3(b, a);
    let v = sub3(d, c);
    let n = cross3(&u, &v);
    if is_zero3(&n) {
        // Parallel. Distinct parallel lines never meet.
        if !is_zero3(&cross3(&sub3(c, a), &u)) {
            return false;
        }
        // Collinear: 1D interval overlap along the dominant axis of u.
        let axis = dominant_axis(&u);
        let (lo1, hi1) = minmax(&a[axis], &b[axis]);
        let (lo2, hi2) = minmax(&c[axis], &d[axis]);
        return lo1 <= hi2 && lo2 <= hi1;
    }
    if orient3d(a, b, c, d) != 0 {
        return false; // skew
    }
    // Coplanar, non-parallel: 2D test in the plane, dropping the axis where
    // the plane normal is largest.
    let axis = dominant_axis(&n);
    let (i, j) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let p = |q: &[BigInt; 3]| (q[i].clone(), q[j].clone());
    let (a2, b2, c2, d2) = (p(a), p(b), p(c), p(d));
    segments_intersect_2d_closed(
        (&a2.0, &a2.1),
        (&b2.0, &b2.1),
        (&c2.0, &c2.1),
        (&d2.0, &d2.1),
    )
}

fn dominant_axis(v: &[BigInt; 3]) -> usize {
    let a0 = v[0].abs();
    let a1 = v[1].abs();
    let a2 = v[2].abs();
    if a0 >= a1 && a0 >= a2 {
        0
    } else if a1 >= a2 {
        1
    } else {
        2
    }
}

fn minmax<'a>(a: &'a BigInt, b: &'a BigInt) -> (&'a BigInt, &'a BigInt) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn segments_intersect_2d_closed(
    a: (&BigInt, &BigInt),
    b: (&BigInt, &BigInt),
    c: (&BigInt, &BigInt),
    d: (&BigInt, &BigInt),
) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let on_seg = |p: (&BigInt, &BigInt), q: (&BigInt, &BigInt), r: (&BigInt, &BigInt)| -> bool {
        // r collinear with pq assumed; is r within the box?
        let (lox, hix) = if p.0 <= q.0 { (p.0, q.0) } else { (q.0, p.0) };
        let (loy, hiy) = if p.1 <= q.1 { (p.1, q.1) } else { (q.1, p.1) };
        lox <= r.0 && r.0 <= hix && loy <= r.1 && r.1 <= hiy
    };
    (o1 == 0 && on_seg(a, b, c))
        || (o2 == 0 && on_seg(a, b, d))
        || (o3 == 0 && on_seg(c, d, a))
        || (o4 == 0 && on_seg(c, d, b))
}

/// For segments sharing exactly the endpoint `p` (one runs p->x, the other
/// p->y): true iff they overlap beyond `p`, i.e. the directions are positive
/// multiples.
pub fn shared_endpoint_overlap(p: &[BigInt; 3], x: &[BigInt; 3], y: &[BigInt; 3]) -> bool {
    let u = sub3(x, p);
    let v = sub3(y, p);
    is_zero3(&cross3(&u, &v)) && dot3(&u, &v).is_positive()
}

fn rational_dot(a: &Point3, b: &Point3) -> BigRational {
    a.dot(b)
}

fn point_seg_sq_dist(p: &Point3, a: &Point3, b: &Point3) -> BigRational {
    let d = b.sub(a);
    let len_sq = rational_dot(&d, &d);
    if len_sq.is_zero() {
        let r = p.sub(a);
        return rational_dot(&r, &r);
    }
    let mut t = rational_dot(&p.sub(a), &d) / &len_sq;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if t < zero {
        t = zero;
    } else if t > one {
        t = one;
    }
    let closest = a.add(&d.scale(&t));
    let r = p.sub(&closest);
    rational_dot(&r, &r)
}

/// Exact minimum squared distance between two closed segments.
pub fn seg_seg_min_sq_dist(p1: &Point3, q1: &Point3, p2: &Point3, q2: &Point3) -> BigRational {
    let d1 = q1.sub(p1);
    let d2 = q2.sub(p2);
    let r = p1.sub(p2);
    let a = rational_dot(&d1, &d1);
    let e = rational_dot(&d2, &d2);
    let b = rational_dot(&d1, &d2);
    let c = rational_dot(&d1, &r);
    let f = rational_dot(&d2, &r);
    let denom = &a * &e - &b * &b;
    let mut best: Option<BigRational> = None;
    let mut consider = |v: BigRational| {
        if best.as_ref().map(|b| v < *b).unwrap_or(true) {
            best = Some(v);
        }
    };
    if !denom.is_zero() {
        let s = (&b * &f - &c * &e) / &denom;
        let t = (&a * &f - &b * &c) / &denom;
        let zero = BigRational::zero();
        let one = BigRational::one();
        if s >= zero && s <= one && t >= zero && t <= one {
            let pa = p1.add(&d1.scale(&s));
            let pb = p2.add(&d2.scale(&t));
            let diff = pa.sub(&pb);
            consider(rational_dot(&diff, &diff));
        }
    }
    consider(point_seg_sq_dist(p1, p2, q2));
    consider(point_seg_sq_dist(q1, p2, q2));
    consider(point_seg_sq_dist(p2, p1, q1));
    consider(point_seg_sq_dist(q2, p1, q1));
    best.expect("at least one candidate")
}

/// Largest power of two r (possibly fractional) with r^2 <= q. Requires q > 0.
pub fn dyadic_sqrt_floor(q: &BigRational) -> BigRational {
    assert!(q.is_positive(), "dyadic_sqrt_floor needs a positive input");
    let two = BigRational::from_integer(2.into());
    let mut r = BigRational::one();
    if &r * &r <= *q {
        loop {
            let next = &r * &two;
            if &next * &next <= *q {
                r = next;
            } else {
                return r;
            }
        }
    } else {
        loop {
            r /= &two;
            if &r * &r <= *q {
                return r;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_io_round_trips() {
        for s in ["0", "-3", "1/2", "-7/3", "22/7"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // Normalization.
        assert_eq!(rat_to_string(&rat_from_str("4/2").unwrap()), "2");
        assert_eq!(rat_to_string(&rat_from_str("2/-4").unwrap()), "-1/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn moment_points_are_in_general_position() {
        // No four points on the moment curve are coplanar, no three collinear.
        let pts: Vec<Point3> = (1..=6).map(|t| Point3::moment(&rat(t))).collect();
        let scaled = scale_points(pts.iter());
        for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    for d in (c + 1)..6 {
                        assert_ne!(
                            orient3d(
                                &scaled.coords[a],
                                &scaled.coords[b],
                                &scaled.coords[c],
                                &scaled.coords[d]
                            ),
                            0
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn segment_intersection_3d_cases() {
        let p = |x: i64, y: i64, z: i64| {
            let sp = scale_points(
                [Point3::from_ints(x, y, z)].iter(),
            );
            sp.coords.into_iter().next().unwrap()
        };
        // Crossing segments in a plane.
        assert!(segments_intersect_3d(
            &p(-1, -1, 0),
            &p(1, 1, 0),
            &p(-1, 1, 0),
            &p(1, -1, 0)
        ));
        // Skew segments.
        assert!(!segments_intersect_3d(
            &p(-1, -1, 0),
            &p(1, 1, 0),
            &p(-1, 1, 5),
            &p(1, -1, 5)
        ));
        // Collinear overlapping.
        assert!(segments_intersect_3d(
            &p(0, 0, 0),
            &p(4, 0, 0),
            &p(3, 0, 0),
            &p(9, 0, 0)
        ));
        // Collinear disjoint.
        assert!(!segments_intersect_3d(
            &p(0, 0, 0),
            &p(1, 0, 0),
            &p(3, 0, 0),
            &p(9, 0, 0)
        ));
        // Touching at an interior point (T shape).
        assert!(segments_intersect_3d(
            &p(0, -2, 0),
            &p(0, 2, 0),
            &p(0, 0, 0),
            &p(5, 0, 0)
        ));
    }

    #[test]
    fn min_distance_is_exact() {
        let a = Point3::from_ints(0, 0, 0);
        let b = Point3::from_ints(2, 0, 0);
        let c = Point3::from_ints(1, 3, 4);
        let d = Point3::from_ints(1, 3, -4);
        // Closest approach is (1,0,0) to (1,3,0): squared distance 9.
        assert_eq!(seg_seg_min_sq_dist(&a, &b, &c, &d), rat(9));
    }

    #[test]
    fn dyadic_sqrt_bounds() {
        let q = BigRational::new(9.into(), 2.into()); // 4.5; sqrt ~ 2.12
        let r = dyadic_sqrt_floor(&q);
        assert_eq!(r, rat(2));
        let tiny = BigRational::new(1.into(), 100.into()); // sqrt = 0.1
        let r = dyadic_sqrt_floor(&tiny);
        assert!(&r * &r <= tiny);
        assert!(&r * &r * rat(4) > tiny);
    }
}
