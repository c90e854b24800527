//! Convex hulls and exact hull membership in dimensions up to 3.

use super::linalg::{affine_rank, solve_exact};
use super::predicates::orientation;
use super::Point;
use crate::rational::Rational;
use itertools::Itertools;
use num_traits::{One, Zero};

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dimension(points: &[Point]) -> usize {
    assert!(!points.is_empty());
    affine_rank(points)
}

/// Counterclockwise cycle of the extreme points of a 2D point set
/// (monotone chain). Collinear boundary points are excluded. All-collinear
/// input yields its two endpoints; a single repeated point yields one.
pub fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    assert!(!points.is_empty());
    assert!(points.iter().all(|p| p.dim() == 2), "2D only");
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return pts;
    }

    fn chain<'a>(iter: impl Iterator<Item = &'a Point>) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for p in iter {
            while out.len() >= 2 && orientation(&out[out.len() - 2], &out[out.len() - 1], p) <= 0 {
                out.pop();
            }
            out.push(p.clone());
        }
        out
    }
    let mut lower = chain(pts.iter());
    let mut upper = chain(pts.iter().rev());
    // each chain ends where the other begins
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Exact closed-hull membership: is `x` in ch(S)? Dispatches on the affine
/// dimension of S; the 3D case runs a Caratheodory search over affinely
/// independent subsets of size at most 4.
pub fn point_in_hull(x: &Point, s: &[Point]) -> bool {
    assert!(!s.is_empty());
    assert!(s.iter().all(|p| p.dim() == x.dim()));
    if s.contains(x) {
        return true;
    }
    match affine_rank(s) {
        0 => false, // single distinct point, x != it
        1 => on_hull_segment(x, s),
        2 => in_planar_hull(x, s),
        _ => caratheodory(x, s, 4),
    }
}

fn on_hull_segment(x: &Point, s: &[Point]) -> bool {
    let p0 = &s[0];
    let p1 = s.iter().find(|p| *p != p0).unwrap();
    let u = p1.sub(p0);
    let k = u.iter().position(|c| !c.is_zero()).unwrap();
    let param = |p: &Point| -> Option<Rational> {
        let t = (p.coord(k) - p0.coord(k)) / &u[k];
        (0..p.dim())
            .all(|i| p.coord(i) - p0.coord(i) == &t * &u[i])
            .then_some(t)
    };
    let Some(tx) = param(x) else { return false };
    let ts: Vec<Rational> = s.iter().map(|p| param(p).unwrap()).collect();
    let lo = ts.iter().min().unwrap();
    let hi = ts.iter().max().unwrap();
    tx >= *lo && tx <= *hi
}

fn in_planar_hull(x: &Point, s: &[Point]) -> bool {
    if x.dim() == 2 {
        return in_hull_2d(x, s);
    }
    // embedded plane in 3D: express everything in an affine frame of S
    let frame = planar_frame(s).expect("affine rank 2");
    let Some(x2) = frame.to_plane(x) else {
        return false; // x is off the plane
    };
    let s2: Vec<Point> = s.iter().map(|p| frame.to_plane(p).unwrap()).collect();
    in_hull_2d(&x2, &s2)
}

fn in_hull_2d(x: &Point, s: &[Point]) -> bool {
    let hull = convex_hull_2d(s);
    match hull.len() {
        1 => x == &hull[0],
        2 => on_hull_segment(x, &hull),
        n => (0..n).all(|i| orientation(&hull[i], &hull[(i + 1) % n], x) >= 0),
    }
}

struct PlanarFrame {
    origin: Point,
    u: Vec<Rational>,
    v: Vec<Rational>,
}

impl PlanarFrame {
    fn to_plane(&self, p: &Point) -> Option<Point> {
        let d = p.dim();
        let a: Vec<Vec<Rational>> = (0..d)
            .map(|i| vec![self.u[i].clone(), self.v[i].clone()])
            .collect();
        let b = p.sub(&self.origin);
        solve_exact(&a, &b).map(Point::new)
    }
}

fn planar_frame(s: &[Point]) -> Option<PlanarFrame> {
    let p0 = &s[0];
    for (i, j) in (1..s.len()).tuple_combinations() {
        let u = s[i].sub(p0);
        let v = s[j].sub(p0);
        if super::linalg::rank(vec![u.clone(), v.clone()]) == 2 {
            return Some(PlanarFrame {
                origin: p0.clone(),
                u,
                v,
            });
        }
    }
    None
}

/// Brute-force Caratheodory membership: x is in ch(S) iff it is in the
/// hull of some affinely independent subset of size <= max_size. Exposed
/// for use as an independent oracle in tests.
pub fn caratheodory(x: &Point, s: &[Point], max_size: usize) -> bool {
    let d = x.dim();
    for k in 1..=max_size.min(s.len()) {
        for subset in s.iter().combinations(k) {
            let pts: Vec<Point> = subset.iter().map(|p| (*p).clone()).collect();
            if affine_rank(&pts) + 1 != k {
                continue; // affinely dependent; smaller subsets cover it
            }
            // barycentric: sum l_i * p_i = x, sum l_i = 1, l_i >= 0
            let mut a: Vec<Vec<Rational>> = (0..d)
                .map(|i| pts.iter().map(|p| p.coord(i).clone()).collect())
                .collect();
            a.push(vec![Rational::one(); k]);
            let mut b: Vec<Rational> = x.coords().to_vec();
            b.push(Rational::one());
            if let Some(lambda) = solve_exact(&a, &b) {
                if lambda.iter().all(|l| *l >= Rational::zero()) {
                    return true;
                }
            }
        }
    }
    false
}
