//! Exact segment-segment and segment-triangle intersections in dimensions
//! 2 and 3. These feed the completion engine: only single-point meets can
//! ever contribute new atoms, so the classification is explicit about
//! higher-dimensional overlaps.

use super::linalg::{rank, solve_exact};
use super::predicates::collinear;
use super::Point;
use crate::error::Error;
use crate::rational::{sign, Rational};
use num_traits::{One, Zero};

/// Outcome of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegMeet {
    Empty,
    Point(Point),
    /// Collinear overlap with distinct endpoints.
    Segment(Point, Point),
}

/// Outcome of intersecting a closed segment with a closed triangle in 3D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriMeet {
    Empty,
    Point(Point),
    /// The meet has dimension >= 1 (coplanar crossing or overlap).
    Higher,
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn cross3(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// Intersection of the closed segments `p1p2` and `q1q2`. Endpoints of
/// each segment must be distinct; both segments must share an ambient
/// dimension (2 or 3). Symmetric in its arguments.
pub fn segment_meet(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> SegMeet {
    assert!(p1 != p2 && q1 != q2, "degenerate segment");
    let d = p1.dim();
    assert!(p2.dim() == d && q1.dim() == d && q2.dim() == d);

    let u = p2.sub(p1);
    let v = q2.sub(q1);

    if rank(vec![u.clone(), v.clone()]) <= 1 {
        // parallel directions
        if !collinear(&[p1.clone(), p2.clone(), q1.clone()]) {
            return SegMeet::Empty;
        }
        // both on one line: 1D overlap in the parameter of u
        let k = u.iter().position(|x| !x.is_zero()).unwrap();
        let param = |p: &Point| (p.coord(k) - p1.coord(k)) / &u[k];
        let (mut qa, mut qb) = (param(q1), param(q2));
        if qa > qb {
            std::mem::swap(&mut qa, &mut qb);
        }
        let lo = qa.max(Rational::zero());
        let hi = qb.min(Rational::one());
        if lo > hi {
            SegMeet::Empty
        } else if lo == hi {
            SegMeet::Point(p1.lerp(p2, &lo))
        } else {
            SegMeet::Segment(p1.lerp(p2, &lo), p1.lerp(p2, &hi))
        }
    } else {
        // independent directions: solve p1 + s*u = q1 + t*v over all coords
        let a: Vec<Vec<Rational>> = (0..d).map(|i| vec![u[i].clone(), -v[i].clone()]).collect();
        let b: Vec<Rational> = (0..d).map(|i| q1.coord(i) - p1.coord(i)).collect();
        match solve_exact(&a, &b) {
            None => SegMeet::Empty, // skew lines (3D) or inconsistent
            Some(st) => {
                let (s, t) = (&st[0], &st[1]);
                let zero = Rational::zero();
                let one = Rational::one();
                if *s >= zero && *s <= one && *t >= zero && *t <= one {
                    SegMeet::Point(p1.lerp(p2, s))
                } else {
                    SegMeet::Empty
                }
            }
        }
    }
}

/// Intersection of a closed 3D segment with a closed triangle whose
/// vertices are not collinear. Degenerate triangles are rejected; callers
/// route those through `segment_meet` instead.
pub fn segment_triangle_meet(
    s1: &Point,
    s2: &Point,
    t0: &Point,
    t1: &Point,
    t2: &Point,
) -> Result<TriMeet, Error> {
    assert!(s1 != s2, "degenerate segment");
    for p in [s1, s2, t0, t1, t2] {
        assert_eq!(p.dim(), 3, "3D only");
    }
    if collinear(&[t0.clone(), t1.clone(), t2.clone()]) {
        return Err(Error::DegenerateTriangle);
    }
    let n = cross3(&t1.sub(t0), &t2.sub(t0));
    let d1 = sign(&dot(&n, &s1.sub(t0)));
    let d2 = sign(&dot(&n, &s2.sub(t0)));

    if d1 != 0 && d1 == d2 {
        return Ok(TriMeet::Empty);
    }
    if d1 == 0 && d2 == 0 {
        return Ok(coplanar_meet(s1, s2, t0, t1, t2, &n));
    }
    // proper crossing of the plane at a single parameter
    let denom = dot(&n, &s2.sub(s1));
    let t = dot(&n, &t0.sub(s1)) / denom;
    debug_assert!(t >= Rational::zero() && t <= Rational::one());
    let p = s1.lerp(s2, &t);
    if point_in_triangle_3d(&p, t0, t1, t2, &n) {
        Ok(TriMeet::Point(p))
    } else {
        Ok(TriMeet::Empty)
    }
}

/// Drops the coordinate along which the triangle normal is nonzero,
/// giving an injective projection of the triangle's plane to 2D.
fn drop_axis(n: &[Rational]) -> usize {
    n.iter().position(|x| !x.is_zero()).unwrap()
}

fn project(p: &Point, axis: usize) -> (Rational, Rational) {
    let c: Vec<&Rational> = (0..3).filter(|&i| i != axis).map(|i| p.coord(i)).collect();
    (c[0].clone(), c[1].clone())
}

fn orient2(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> i8 {
    sign(&((&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)))
}

fn point_in_triangle_3d(p: &Point, t0: &Point, t1: &Point, t2: &Point, n: &[Rational]) -> bool {
    let axis = drop_axis(n);
    let (p, a, b, c) = (
        project(p, axis),
        project(t0, axis),
        project(t1, axis),
        project(t2, axis),
    );
    let s1 = orient2(&a, &b, &p);
    let s2 = orient2(&b, &c, &p);
    let s3 = orient2(&c, &a, &p);
    // closed triangle: all non-negative or all non-positive
    (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)
}

/// Segment and triangle lie in one plane: clip the segment's parameter
/// interval against the triangle's three edges.
fn coplanar_meet(s1: &Point, s2: &Point, t0: &Point, t1: &Point, t2: &Point, n: &[Rational]) -> TriMeet {
    let axis = drop_axis(n);
    let p = project(s1, axis);
    let q = project(s2, axis);
    let tri = [project(t0, axis), project(t1, axis), project(t2, axis)];

    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    for i in 0..3 {
        let (e1, e2) = (&tri[i], &tri[(i + 1) % 3]);
        let inner = orient2(e1, e2, &tri[(i + 2) % 3]);
        debug_assert!(inner != 0);
        // f(t) = signed area against the edge, linear in t
        let f0 = (&e2.0 - &e1.0) * (&p.1 - &e1.1) - (&e2.1 - &e1.1) * (&p.0 - &e1.0);
        let f1 = (&e2.0 - &e1.0) * (&q.1 - &e1.1) - (&e2.1 - &e1.1) * (&q.0 - &e1.0);
        // keep the part with f(t) on the inner side (closed)
        let (g0, g1) = if inner > 0 {
            (f0, f1)
        } else {
            (-f0, -f1)
        };
        let slope = &g1 - &g0;
        if slope.is_zero() {
            if g0 < Rational::zero() {
                return TriMeet::Empty;
            }
            continue;
        }
        let root = -&g0 / &slope;
        if slope > Rational::zero() {
            // g < 0 before the root
            if root > lo {
                lo = root;
            }
        } else if root < hi {
            hi = root;
        }
        if lo > hi {
            return TriMeet::Empty;
        }
    }
    if lo == hi {
        TriMeet::Point(s1.lerp(s2, &lo))
    } else {
        TriMeet::Higher
    }
}
