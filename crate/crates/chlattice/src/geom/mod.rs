//! Exact rational geometric primitives in dimensions 1..3: predicates,
//! hulls, and segment/triangle intersections.

mod hull;
mod linalg;
mod meet;
mod predicates;

pub use hull::{affine_dimension, caratheodory, convex_hull_2d, point_in_hull};
pub use linalg::{affine_rank, solve_exact};
pub use meet::{segment_meet, segment_triangle_meet, SegMeet, TriMeet};
pub use predicates::{between, collinear, half_plane_side, in_theta, orientation};

use crate::rational::{format_rational, parse_rational, Rational};
use std::cmp::Ordering;
use std::fmt;

/// A point with exact rational coordinates. The coordinate length is the
/// ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "point needs at least one coordinate");
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    /// Componentwise difference, as a coordinate vector.
    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + t * (b - a))
            .collect();
        Point::new(coords)
    }

    /// Appends a coordinate, lifting into one higher ambient dimension.
    pub fn lift(&self, last: Rational) -> Point {
        let mut coords = self.coords.clone();
        coords.push(last);
        Point::new(coords)
    }

    pub fn parse(parts: &[&str]) -> Result<Point, String> {
        let coords = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err("empty coordinate list".into());
        }
        Ok(Point::new(coords))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// Shorthand constructor for 2D points with integer coordinates.
pub fn pt2(x: i64, y: i64) -> Point {
    Point::new(vec![crate::rational::rat(x), crate::rational::rat(y)])
}

/// Shorthand constructor for 3D points with integer coordinates.
pub fn pt3(x: i64, y: i64, z: i64) -> Point {
    Point::new(vec![
        crate::rational::rat(x),
        crate::rational::rat(y),
        crate::rational::rat(z),
    ])
}
