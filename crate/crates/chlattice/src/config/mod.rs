//! Point configurations, relative convex hulls, and the invariants that
//! discriminate them.

mod families;
mod morphism;

pub use families::{
    catalog, catalog_pairwise_distinct, realize, v5_canonical, CatalogEntry, FamilySpec,
};
pub use morphism::{
    automorphism_count, count_subconfigs, equivalent, is_subconfiguration, ConfigMap,
};

use crate::error::Error;
use crate::geom::{affine_dimension, point_in_hull, Point};
use std::collections::BTreeSet;

/// Internal index-set representation; configurations are capped well below
/// 64 points everywhere they are enumerated.
pub(crate) type Mask = u64;

pub(crate) fn mask_of(indices: impl IntoIterator<Item = usize>) -> Mask {
    indices.into_iter().fold(0, |m, i| m | (1 << i))
}

pub(crate) fn mask_to_set(mask: Mask) -> BTreeSet<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// A finite set of pairwise distinct labelled points with a fixed ambient
/// dimension; the affine hull dimension is recorded at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Configuration {
    dim: usize,
    points: Vec<Point>,
    affine_dim: usize,
}

impl std::fmt::Debug for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Configuration{:?}", self.points)
    }
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self, Error> {
        if !(1..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if points.is_empty() {
            return Err(Error::DuplicatePoints);
        }
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch);
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoints);
        }
        let affine_dim = affine_dimension(&points);
        Ok(Configuration {
            dim,
            points,
            affine_dim,
        })
    }

    pub fn from_coords(dim: usize, coords: Vec<Point>) -> Result<Self, Error> {
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// Relative convex hull: the indices of all points of the
    /// configuration inside ch of the selected points.
    pub fn rch(&self, a: &BTreeSet<usize>) -> BTreeSet<usize> {
        mask_to_set(self.rch_mask(mask_of(a.iter().copied())))
    }

    pub(crate) fn rch_mask(&self, a: Mask) -> Mask {
        if a.count_ones() <= 1 {
            return a;
        }
        let sel: Vec<Point> = (0..self.len())
            .filter(|i| a >> i & 1 == 1)
            .map(|i| self.points[i].clone())
            .collect();
        let mut out = a;
        for i in 0..self.len() {
            if out >> i & 1 == 0 && point_in_hull(&self.points[i], &sel) {
                out |= 1 << i;
            }
        }
        out
    }

    /// True iff the index set is relatively convex (closed under rch).
    pub fn is_relatively_convex(&self, a: &BTreeSet<usize>) -> bool {
        let m = mask_of(a.iter().copied());
        self.rch_mask(m) == m
    }

    /// Points whose removal leaves a relatively convex set.
    pub fn rext(&self) -> BTreeSet<usize> {
        let full = mask_of(0..self.len());
        (0..self.len())
            .filter(|&i| {
                let rest = full & !(1 << i);
                self.rch_mask(rest) == rest
            })
            .collect()
    }

    /// Sub-configuration induced by the given indices (in the given
    /// order); the ambient dimension is kept.
    pub fn induced(&self, indices: &[usize]) -> Configuration {
        let points: Vec<Point> = indices.iter().map(|&i| self.points[i].clone()).collect();
        let affine_dim = affine_dimension(&points);
        Configuration {
            dim: self.dim,
            points,
            affine_dim,
        }
    }

    /// True iff point `j` lies strictly between points `i` and `k`.
    pub fn between_idx(&self, i: usize, j: usize, k: usize) -> bool {
        crate::geom::between(&self.points[i], &self.points[j], &self.points[k])
    }

    /// All maximal collinear subsets of size >= 3, as sorted index lists,
    /// lexicographically ordered.
    pub fn maximal_collinear_sets(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                let line: Vec<usize> = (0..n)
                    .filter(|&k| {
                        k == i
                            || k == j
                            || crate::geom::collinear(&[
                                self.points[i].clone(),
                                self.points[j].clone(),
                                self.points[k].clone(),
                            ])
                    })
                    .collect();
                if line.len() >= 3 {
                    seen.insert(line);
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt2;
    use crate::rational::ratio;

    fn l3() -> Configuration {
        Configuration::new(2, vec![pt2(0, 0), pt2(1, 0), pt2(2, 0)]).unwrap()
    }

    fn square_center() -> Configuration {
        Configuration::new(
            2,
            vec![
                pt2(0, 0),
                pt2(1, 0),
                pt2(1, 1),
                pt2(0, 1),
                Point::new(vec![ratio(1, 2), ratio(1, 2)]),
            ],
        )
        .unwrap()
    }

    use crate::geom::Point;

    #[test]
    fn duplicate_points_rejected() {
        assert!(Configuration::new(2, vec![pt2(0, 0), pt2(0, 0)]).is_err());
    }

    #[test]
    fn rch_absorbs_middle_point() {
        let x = l3();
        let a: BTreeSet<usize> = [0, 2].into();
        assert_eq!(x.rch(&a), [0, 1, 2].into());
        assert_eq!(x.rch(&BTreeSet::new()), BTreeSet::new());
    }

    #[test]
    fn rch_absorbs_center() {
        let x = square_center();
        let corners: BTreeSet<usize> = [0, 1, 2, 3].into();
        assert_eq!(x.rch(&corners), [0, 1, 2, 3, 4].into());
    }

    #[test]
    fn rext_of_l3_is_the_endpoints() {
        assert_eq!(l3().rext(), [0, 2].into());
    }

    #[test]
    fn rext_of_square_with_center() {
        assert_eq!(square_center().rext(), [0, 1, 2, 3].into());
    }

    #[test]
    fn rext_of_t3() {
        // axis + star: both axis endpoints and the star are removable
        let t3 =
            Configuration::new(2, vec![pt2(0, 0), pt2(1, 0), pt2(2, 0), pt2(0, 1)]).unwrap();
        assert_eq!(t3.rext(), [0, 2, 3].into());
    }

    #[test]
    fn maximal_collinear_sets_of_t3() {
        let t3 =
            Configuration::new(2, vec![pt2(0, 0), pt2(1, 0), pt2(2, 0), pt2(0, 1)]).unwrap();
        assert_eq!(t3.maximal_collinear_sets(), vec![vec![0, 1, 2]]);
    }
}
