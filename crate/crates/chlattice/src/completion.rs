//! Fixed-point completion: closing a configuration under the new points
//! that segment and triangle intersections create, plus the two derived
//! constructions (the descending V5 transformation and the cross
//! operator into the next dimension).
//!
//! One round intersects every pair of index-disjoint segments and, in
//! 3D, every segment against every non-degenerate triangle disjoint
//! from it. Only `Point`-type meets can contribute: overlap endpoints
//! are always existing points. New points are collected per round,
//! sorted, and appended, so the discovery order is independent of scan
//! order — which lets the scan run data-parallel without changing the
//! result.

use crate::config::Configuration;
use crate::error::Error;
use crate::geom::{
    between, collinear, point_in_hull, segment_meet, segment_triangle_meet, Point, SegMeet,
    TriMeet,
};
use crate::rational::Rational;
use itertools::Itertools;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Termination guard for inputs whose completion never stabilizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_points: usize,
    pub max_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 512,
            max_rounds: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    BudgetExceeded,
}

/// The generating intersection of an added point, by indices into the
/// accumulated point list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    SegSeg(usize, usize, usize, usize),
    SegTri(usize, usize, usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub point: Point,
    pub generator: Generator,
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub status: Status,
    /// Original points first, then the added ones in discovery order.
    pub points: Configuration,
    pub added: Vec<Point>,
    /// One certificate per added point, in the same order.
    pub certificates: Vec<Certificate>,
    pub rounds: usize,
}

impl CompletionResult {
    pub fn original_len(&self) -> usize {
        self.points.len() - self.added.len()
    }
}

fn eval(points: &[Point], existing: &BTreeSet<Point>, g: Generator) -> Option<(Point, Generator)> {
    let p = match g {
        Generator::SegSeg(a, b, c, d) => {
            match segment_meet(&points[a], &points[b], &points[c], &points[d]) {
                SegMeet::Point(p) => p,
                _ => return None,
            }
        }
        Generator::SegTri(a, b, c, d, e) => {
            match segment_triangle_meet(&points[a], &points[b], &points[c], &points[d], &points[e])
            {
                Ok(TriMeet::Point(p)) => p,
                _ => return None,
            }
        }
    };
    (!existing.contains(&p)).then_some((p, g))
}

fn eval_row(
    points: &[Point],
    existing: &BTreeSet<Point>,
    row: &[Generator],
    par: bool,
) -> Vec<Option<(Point, Generator)>> {
    #[cfg(feature = "parallel")]
    if par {
        return row
            .par_iter()
            .map(|&g| eval(points, existing, g))
            .collect();
    }
    let _ = par;
    row.iter().map(|&g| eval(points, existing, g)).collect()
}

/// One full intersection round. `limit` bounds the total point count;
/// the scan aborts at a row boundary once it is exceeded, so partial
/// results are deterministic too. Returns the new points (with their
/// first-found certificates, in candidate order) and the abort flag.
fn scan_round(
    points: &[Point],
    limit: Option<usize>,
    par: bool,
) -> (BTreeMap<Point, Generator>, bool) {
    let n = points.len();
    let dim = if n > 0 { points[0].dim() } else { 2 };
    let existing: BTreeSet<Point> = points.iter().cloned().collect();
    let mut found: BTreeMap<Point, Generator> = BTreeMap::new();

    let segs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let over = |found: &BTreeMap<Point, Generator>| match limit {
        Some(maxp) => n + found.len() > maxp,
        None => false,
    };

    // segment x segment rows: segment r against all earlier segments
    let mut row = Vec::new();
    for r in 1..segs.len() {
        let (c, d) = segs[r];
        row.clear();
        row.extend((0..r).filter_map(|s| {
            let (a, b) = segs[s];
            // sharing an endpoint can only reproduce existing points
            (a != c && a != d && b != c && b != d).then_some(Generator::SegSeg(a, b, c, d))
        }));
        for hit in eval_row(points, &existing, &row, par).into_iter().flatten() {
            found.entry(hit.0).or_insert(hit.1);
        }
        if over(&found) {
            return (found, true);
        }
    }

    if dim == 3 {
        for tri in (0..n).combinations(3) {
            let (t0, t1, t2) = (tri[0], tri[1], tri[2]);
            if collinear(&[points[t0].clone(), points[t1].clone(), points[t2].clone()]) {
                continue;
            }
            row.clear();
            row.extend(segs.iter().filter_map(|&(a, b)| {
                (!tri.contains(&a) && !tri.contains(&b))
                    .then_some(Generator::SegTri(a, b, t0, t1, t2))
            }));
            for hit in eval_row(points, &existing, &row, par).into_iter().flatten() {
                found.entry(hit.0).or_insert(hit.1);
            }
            if over(&found) {
                return (found, true);
            }
        }
    }

    (found, false)
}

fn default_par() -> bool {
    cfg!(feature = "parallel")
}

/// All points one intersection round adds, sorted.
pub fn completion_step(x: &Configuration) -> Vec<Point> {
    scan_round(x.points(), None, default_par())
        .0
        .into_keys()
        .collect()
}

/// Sequential variant with identical output; exists so the two scan
/// paths can be benchmarked and cross-checked against each other.
pub fn completion_step_seq(x: &Configuration) -> Vec<Point> {
    scan_round(x.points(), None, false).0.into_keys().collect()
}

#[cfg(feature = "parallel")]
pub fn completion_step_par(x: &Configuration) -> Vec<Point> {
    scan_round(x.points(), None, true).0.into_keys().collect()
}

pub fn is_complete(x: &Configuration) -> bool {
    completion_step(x).is_empty()
}

/// Iterate intersection rounds to a fixed point or until the budget
/// trips. On `Complete`, the result holds exactly the completion of X.
pub fn complete(x: &Configuration, budget: &Budget) -> CompletionResult {
    let mut points = x.points().to_vec();
    let mut added = Vec::new();
    let mut certificates = Vec::new();
    let mut rounds = 0;
    let mut status = Status::BudgetExceeded;

    while rounds < budget.max_rounds {
        rounds += 1;
        let (found, aborted) = scan_round(&points, Some(budget.max_points), default_par());
        let empty = found.is_empty();
        for (p, g) in found {
            points.push(p.clone());
            added.push(p.clone());
            certificates.push(Certificate {
                point: p,
                generator: g,
            });
        }
        if aborted {
            break;
        }
        if empty {
            status = Status::Complete;
            break;
        }
    }

    CompletionResult {
        status,
        points: Configuration::new(x.dim(), points).expect("closure points stay distinct"),
        added,
        certificates,
        rounds,
    }
}

/// Check the V5 labeling a-b-c, a-d-e (indices 0..4), not all collinear.
fn check_v5_form(v: &Configuration) -> Result<(), Error> {
    if v.len() != 5 {
        return Err(Error::InvalidV5);
    }
    let [a, b, c, d, e] = [v.point(0), v.point(1), v.point(2), v.point(3), v.point(4)];
    if !between(a, b, c) || !between(a, d, e) {
        return Err(Error::InvalidV5);
    }
    if collinear(&[a.clone(), b.clone(), d.clone()]) {
        return Err(Error::InvalidV5);
    }
    Ok(())
}

/// The descending transformation on a V5 configuration (a,b,c,d,e) ->
/// (a,b,c,d',e') with e' = cd ∧ be and d' = bd ∧ ae'. Both meets always
/// exist: writing b,c and d,e along the two rays from a, the four
/// points are in convex position with bc and de as edges, so cd and be
/// are crossing diagonals; and the segment from a to the interior point
/// e' must cross bd on its way out. Iterating yields e > e' > e'' > …
/// strictly toward b, which is why a V5 is never finitely completable.
pub fn v5_descent(v: &Configuration, k: usize) -> Result<Vec<Configuration>, Error> {
    check_v5_form(v)?;
    let mut out = Vec::with_capacity(k);
    let mut cur = v.clone();
    for _ in 0..k {
        let [a, b, c, d, e] = [
            cur.point(0).clone(),
            cur.point(1).clone(),
            cur.point(2).clone(),
            cur.point(3).clone(),
            cur.point(4).clone(),
        ];
        let e2 = match segment_meet(&c, &d, &b, &e) {
            SegMeet::Point(p) => p,
            _ => return Err(Error::InvalidV5),
        };
        let d2 = match segment_meet(&b, &d, &a, &e2) {
            SegMeet::Point(p) => p,
            _ => return Err(Error::InvalidV5),
        };
        let next = Configuration::new(cur.dim(), vec![a, b, c, d2, e2])?;
        check_v5_form(&next)?;
        out.push(next.clone());
        cur = next;
    }
    Ok(out)
}

/// Lift X to the hyperplane x_{d+1} = 0 and add the two points (c, ±h).
/// Requires c ∈ X or c outside ch(X), so the segment between the new
/// points meets the hyperplane only at an existing point or outside the
/// hull — the construction then preserves finite completability.
pub fn cross(x: &Configuration, c: &Point, h: &Rational) -> Result<Configuration, Error> {
    if x.dim() >= 3 {
        return Err(Error::UnsupportedDimension(x.dim() + 1));
    }
    if c.dim() != x.dim() {
        return Err(Error::DimensionMismatch);
    }
    if *h <= Rational::zero() {
        return Err(Error::CrossPrecondition);
    }
    let in_x = x.points().contains(c);
    if !in_x && point_in_hull(c, x.points()) {
        return Err(Error::CrossPrecondition);
    }
    let mut points: Vec<Point> = x.points().iter().map(|p| p.lift(Rational::zero())).collect();
    points.push(c.lift(h.clone()));
    points.push(c.lift(-h.clone()));
    Configuration::new(x.dim() + 1, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{equivalent, realize, v5_canonical, FamilySpec};
    use crate::geom::{pt2, Point};
    use crate::rational::{rat, ratio};

    fn cfg(dim: usize, pts: Vec<Point>) -> Configuration {
        Configuration::new(dim, pts).unwrap()
    }

    #[test]
    fn square_gains_its_center() {
        let sq = cfg(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)]);
        let step = completion_step(&sq);
        assert_eq!(step, vec![Point::new(vec![ratio(1, 2), ratio(1, 2)])]);
        let r = complete(&sq, &Budget::default());
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.points.len(), 5);
        let d11 = realize(FamilySpec::D { p: 1, q: 1 }).unwrap();
        assert!(equivalent(&r.points, &d11).is_some());
    }

    #[test]
    fn lines_are_complete() {
        let l = realize(FamilySpec::L { n: 5 }).unwrap();
        assert!(is_complete(&l));
    }

    #[test]
    fn i23_completes_to_its_center() {
        let i = realize(FamilySpec::I { p: 2, q: 3 }).unwrap();
        let step = completion_step(&i);
        assert_eq!(step, vec![pt2(0, 0)]);
        let r = complete(&i, &Budget::default());
        assert_eq!(r.status, Status::Complete);
        let d = realize(FamilySpec::D { p: 2, q: 3 }).unwrap();
        assert!(equivalent(&r.points, &d).is_some());
    }

    #[test]
    fn s6_is_already_complete() {
        let s6 = realize(FamilySpec::S6).unwrap();
        let r = complete(&s6, &Budget::default());
        assert_eq!(r.status, Status::Complete);
        assert!(r.added.is_empty());
    }

    #[test]
    fn pentagon_exceeds_budget() {
        let p5 = cfg(
            2,
            vec![pt2(0, 0), pt2(4, 0), pt2(5, 3), pt2(2, 5), pt2(-1, 3)],
        );
        let r = complete(&p5, &Budget::default());
        assert_eq!(r.status, Status::BudgetExceeded);
        assert!(r.points.len() > Budget::default().max_points);
    }

    #[test]
    fn seq_and_par_steps_agree() {
        let i = realize(FamilySpec::I { p: 1, q: 2 }).unwrap();
        let sq = cfg(2, vec![pt2(0, 0), pt2(3, 0), pt2(3, 3), pt2(0, 3), pt2(1, 2)]);
        for x in [&i, &sq] {
            let seq = completion_step_seq(x);
            #[cfg(feature = "parallel")]
            assert_eq!(seq, completion_step_par(x));
            assert_eq!(seq, completion_step(x));
        }
    }

    #[test]
    fn certificates_reproduce_their_points() {
        let sq = cfg(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)]);
        let r = complete(&sq, &Budget::default());
        for cert in &r.certificates {
            match cert.generator {
                Generator::SegSeg(a, b, c, d) => {
                    let m = segment_meet(
                        r.points.point(a),
                        r.points.point(b),
                        r.points.point(c),
                        r.points.point(d),
                    );
                    assert_eq!(m, SegMeet::Point(cert.point.clone()));
                }
                Generator::SegTri(..) => unreachable!("2D input"),
            }
        }
    }

    #[test]
    fn skew_lines_are_complete() {
        let ll = realize(FamilySpec::LPlusL { p: 2, q: 2 }).unwrap();
        let r = complete(&ll, &Budget::default());
        assert_eq!(r.status, Status::Complete);
        assert!(r.added.is_empty());
    }

    #[test]
    fn descent_produces_strictly_descending_e_chain() {
        let v = v5_canonical();
        let chain = v5_descent(&v, 3).unwrap();
        assert_eq!(chain.len(), 3);
        let b = v.point(1).clone();
        let mut prev_e = v.point(4).clone();
        for step in &chain {
            let e = step.point(4).clone();
            assert!(between(&prev_e, &e, &b), "e-chain must descend toward b");
            prev_e = e;
        }
        assert!(v5_descent(&v, 0).unwrap().is_empty());
        // eight iterations stay pairwise distinct
        let eight = v5_descent(&v, 8).unwrap();
        let es: BTreeSet<Point> = eight.iter().map(|s| s.point(4).clone()).collect();
        assert_eq!(es.len(), 8);
    }

    #[test]
    fn descent_rejects_non_v5() {
        let sq = cfg(
            2,
            vec![pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1), pt2(5, 5)],
        );
        assert!(matches!(v5_descent(&sq, 1), Err(Error::InvalidV5)));
    }

    #[test]
    fn cross_l3_gives_the_marked_square_shape() {
        let l3 = realize(FamilySpec::L { n: 3 }).unwrap();
        let y = cross(&l3, &pt2(1, 0), &rat(1)).unwrap();
        assert_eq!(y.len(), 5);
        let d11 = realize(FamilySpec::D { p: 1, q: 1 }).unwrap();
        assert!(equivalent(&y, &d11).is_some());
        // independent of the height up to equivalence
        let y7 = cross(&l3, &pt2(1, 0), &rat(7)).unwrap();
        assert!(equivalent(&y, &y7).is_some());
    }

    #[test]
    fn cross_rejects_interior_non_member() {
        let sq = cfg(2, vec![pt2(0, 0), pt2(2, 0), pt2(2, 2), pt2(0, 2)]);
        let r = cross(&sq, &pt2(1, 1), &rat(1));
        assert!(matches!(r, Err(Error::CrossPrecondition)));
        // outside the hull is fine
        assert!(cross(&sq, &pt2(5, 5), &rat(1)).is_ok());
    }
}
