//! Orientation, betweenness and half-plane predicates. All exact.

use super::linalg::affine_rank;
use super::Point;
use crate::error::Error;
use crate::rational::sign;
use num_traits::Zero;

/// Sign of the determinant of `(b - a, c - a)`: +1 for a counterclockwise
/// turn, 0 for collinear, -1 for clockwise. 2D only.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> i8 {
    assert!(a.dim() == 2 && b.dim() == 2 && c.dim() == 2, "2D only");
    let det = (b.coord(0) - a.coord(0)) * (c.coord(1) - a.coord(1))
        - (b.coord(1) - a.coord(1)) * (c.coord(0) - a.coord(0));
    sign(&det)
}

/// True iff the given points (any dimension) lie on one line.
pub fn collinear(points: &[Point]) -> bool {
    affine_rank(points) <= 1
}

/// True iff a, b, c are pairwise distinct, collinear, and b lies strictly
/// inside the segment ac. Works in any dimension.
pub fn between(a: &Point, b: &Point, c: &Point) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    let u = c.sub(a);
    let k = match u.iter().position(|x| !x.is_zero()) {
        Some(k) => k,
        None => return false,
    };
    let t = (b.coord(k) - a.coord(k)) / &u[k];
    if t <= Zero::zero() || t >= num_traits::One::one() {
        return false;
    }
    // b must equal a + t*(c - a) in every coordinate
    (0..a.dim()).all(|i| b.coord(i) - a.coord(i) == &t * &u[i])
}

/// Which side of the oriented line ab the point x lies on; the sign of
/// `orientation(a, b, x)`. Callers compose open half-plane tests from it.
pub fn half_plane_side(a: &Point, b: &Point, x: &Point) -> i8 {
    assert!(a != b, "degenerate line");
    orientation(a, b, x)
}

/// Membership in the open region beyond the segment bc, inside the cone at
/// a spanned by the rays ab and ac. When this holds, the segments ad and
/// bc cross in a single point.
pub fn in_theta(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<bool, Error> {
    if orientation(a, b, c) == 0 {
        return Err(Error::CollinearTriple);
    }
    let same_open = |p: &Point, q: &Point, x: &Point, r: &Point| {
        let s = half_plane_side(p, q, r);
        let t = half_plane_side(p, q, x);
        t != 0 && t == s
    };
    // H+(ab, c) ∩ H+(ac, b) ∩ H-(bc, a)
    let h1 = same_open(a, b, d, c);
    let h2 = same_open(a, c, d, b);
    let s = half_plane_side(b, c, a);
    let t = half_plane_side(b, c, d);
    let h3 = t != 0 && t == -s;
    Ok(h1 && h2 && h3)
}
