//! Exact decision of finite completability for planar configurations.
//!
//! A planar configuration generates a finite lattice exactly when it is
//! equivalent to a member of the L/T/D/I families or the sporadic
//! six-point configuration. The recognizer works structurally: pick a
//! maximal collinear set as axis, classify the off-axis points against
//! the family incidence requirements, and confirm any candidate with a
//! full equivalence check. When no candidate survives, the input is
//! infinite and one of three forbidden five-point patterns must occur;
//! the search returns the lexicographically first witness.

use crate::completion::is_complete;
use crate::config::{equivalent, realize, ConfigMap, Configuration, FamilySpec};
use crate::error::Error;
use crate::geom::{collinear, half_plane_side, solve_exact, Point};
use crate::rational::Rational;
use itertools::Itertools;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForbiddenKind {
    V5,
    BPosition,
    GeneralPosition,
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// Five input indices forming the named forbidden pattern.
    Forbidden {
        kind: ForbiddenKind,
        indices: [usize; 5],
    },
    /// An isomorphism from the input onto a canonical family
    /// realization.
    Embedding(ConfigMap),
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub finite: bool,
    pub label: Option<FamilySpec>,
    pub witness: Option<Witness>,
}

/// Betweenness triples (x, m, y) with m strictly inside xy, x < y.
fn betweenness_triples(x: &Configuration, subset: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for c in subset.iter().combinations(3) {
        let (&i, &j, &k) = (c[0], c[1], c[2]);
        if x.between_idx(i, j, k) {
            out.push((i, j, k));
        } else if x.between_idx(j, i, k) {
            out.push((j, i, k));
        } else if x.between_idx(i, k, j) {
            out.push((i, k, j));
        }
    }
    out
}

/// First five indices (lexicographic subset order) labeled a,b,c,d,e
/// with a-b-c, a-d-e and not all collinear: two segments hanging from a
/// shared endpoint.
pub fn has_v5(x: &Configuration) -> Option<[usize; 5]> {
    assert_eq!(x.dim(), 2, "planar detector");
    for s in (0..x.len()).combinations(5) {
        let triples = betweenness_triples(x, &s);
        for (t1, t2) in triples.iter().tuple_combinations() {
            for (u, v) in [(t1, t2), (t2, t1)] {
                let (x1, m1, y1) = *u;
                let (x2, m2, y2) = *v;
                for (a, c) in [(x1, y1), (y1, x1)] {
                    for (a2, e) in [(x2, y2), (y2, x2)] {
                        if a != a2 {
                            continue;
                        }
                        let labels = [a, m1, c, m2, e];
                        let mut uniq = labels.to_vec();
                        uniq.sort_unstable();
                        uniq.dedup();
                        if uniq.len() != 5 {
                            continue;
                        }
                        if collinear(&[
                            x.point(a).clone(),
                            x.point(m1).clone(),
                            x.point(m2).clone(),
                        ]) {
                            continue;
                        }
                        return Some(labels);
                    }
                }
            }
        }
    }
    None
}

/// First five indices a,b,c,d,e with a-b-c collinear and d,e strictly
/// on one common side of that line, d,e,b not collinear.
pub fn in_b_position(x: &Configuration) -> Option<[usize; 5]> {
    assert_eq!(x.dim(), 2, "planar detector");
    for s in (0..x.len()).combinations(5) {
        for t in betweenness_triples(x, &s) {
            let (a, b, c) = t;
            let rest: Vec<usize> = s.iter().copied().filter(|&i| ![a, b, c].contains(&i)).collect();
            let [d, e] = [rest[0], rest[1]];
            let sd = half_plane_side(x.point(a), x.point(c), x.point(d));
            let se = half_plane_side(x.point(a), x.point(c), x.point(e));
            if sd != 0
                && sd == se
                && !collinear(&[x.point(d).clone(), x.point(e).clone(), x.point(b).clone()])
            {
                return Some([a, b, c, d, e]);
            }
        }
    }
    None
}

/// First five indices with no three collinear.
pub fn has_general_position_5(x: &Configuration) -> Option<[usize; 5]> {
    assert_eq!(x.dim(), 2, "planar detector");
    for s in (0..x.len()).combinations(5) {
        let clean = s.iter().combinations(3).all(|c| {
            !collinear(&[
                x.point(*c[0]).clone(),
                x.point(*c[1]).clone(),
                x.point(*c[2]).clone(),
            ])
        });
        if clean {
            return Some([s[0], s[1], s[2], s[3], s[4]]);
        }
    }
    None
}

/// Where the line through two off-axis points crosses the axis line,
/// with the axis points and the crossing expressed as parameters along
/// the axis. Returns the crossing parameter and point, if the two off
/// points straddle the line.
fn axis_crossing(
    x: &Configuration,
    axis: &[usize],
    s1: usize,
    s2: usize,
) -> Option<(Rational, Point)> {
    let p0 = x.point(axis[0]);
    let p1 = x.point(axis[1]);
    if half_plane_side(p0, p1, x.point(s1)) * half_plane_side(p0, p1, x.point(s2)) >= 0 {
        return None;
    }
    // p0 + u*(p1-p0) = s1 + t*(s2-s1)
    let dir = p1.sub(p0);
    let sdir = x.point(s2).sub(x.point(s1));
    let a: Vec<Vec<Rational>> = (0..2)
        .map(|i| vec![dir[i].clone(), -sdir[i].clone()])
        .collect();
    let b: Vec<Rational> = (0..2)
        .map(|i| x.point(s1).coord(i) - p0.coord(i))
        .collect();
    let ut = solve_exact(&a, &b)?;
    let u = ut[0].clone();
    let c = p0.lerp(p1, &u);
    Some((u, c))
}

fn axis_param(x: &Configuration, axis0: &Point, axis1: &Point, p: &Point) -> Rational {
    let dir = axis1.sub(axis0);
    let k = dir
        .iter()
        .position(|v| !num_traits::Zero::is_zero(v))
        .expect("distinct axis points");
    let _ = x;
    (p.coord(k) - axis0.coord(k)) / &dir[k]
}

/// Family candidates suggested by the collinear structure.
fn structural_candidates(x: &Configuration) -> Vec<FamilySpec> {
    let n = x.len();
    let lines = x.maximal_collinear_sets();
    let mut out: Vec<FamilySpec> = Vec::new();
    let mut push = |s: FamilySpec| {
        if !out.contains(&s) {
            out.push(s);
        }
    };

    if lines.is_empty() {
        match n {
            3 => push(FamilySpec::T { n: 2 }),
            4 => {
                push(FamilySpec::I { p: 1, q: 1 });
                push(FamilySpec::I { p: 0, q: 2 });
            }
            _ => {}
        }
    }
    for axis in &lines {
        let off: Vec<usize> = (0..n).filter(|i| !axis.contains(i)).collect();
        match off.len() {
            0 => push(FamilySpec::L { n }),
            1 => push(FamilySpec::T { n: axis.len() }),
            2 => {
                if let Some((u, c)) = axis_crossing(x, axis, off[0], off[1]) {
                    let p0 = x.point(axis[0]).clone();
                    let p1 = x.point(axis[1]).clone();
                    let params: Vec<Rational> = axis
                        .iter()
                        .map(|&i| axis_param(x, &p0, &p1, x.point(i)))
                        .collect();
                    let p = params.iter().filter(|t| **t < u).count();
                    let q = params.iter().filter(|t| **t > u).count();
                    let center_in_x = x.points().contains(&c);
                    let spec = if center_in_x {
                        FamilySpec::D { p, q }
                    } else {
                        FamilySpec::I { p, q }
                    };
                    if spec.validate().is_ok() {
                        push(spec);
                    }
                }
            }
            _ => {}
        }
    }
    if n == 6 {
        push(FamilySpec::S6);
    }
    out
}

/// Every family spec whose realization has exactly n points; the
/// exhaustive fallback behind the structural shortlist.
fn all_candidates_of_size(n: usize) -> Vec<FamilySpec> {
    let mut out = vec![FamilySpec::L { n }];
    if n >= 3 {
        out.push(FamilySpec::T { n: n - 1 });
    }
    if n >= 5 {
        for p in 0..=(n - 3) / 2 {
            out.push(FamilySpec::D { p, q: n - 3 - p });
        }
    }
    if n >= 4 {
        for p in 0..=(n - 2) / 2 {
            let q = n - 2 - p;
            if p + q >= 2 {
                out.push(FamilySpec::I { p, q });
            }
        }
    }
    if n == 6 {
        out.push(FamilySpec::S6);
    }
    out.retain(|s| s.validate().is_ok());
    out
}

fn family_verdict(x: &Configuration, spec: FamilySpec) -> Option<Verdict> {
    let canon = realize(spec).ok()?;
    let w = equivalent(x, &canon)?;
    Some(Verdict {
        finite: true,
        label: Some(spec),
        witness: Some(Witness::Embedding(w)),
    })
}

/// Decide finite completability of a planar configuration, naming the
/// family or exhibiting a forbidden pattern.
pub fn recognize_family(x: &Configuration) -> Result<Verdict, Error> {
    if x.dim() > 2 || x.affine_dim() > 2 {
        return Err(Error::ClassifierDimension);
    }
    if x.affine_dim() <= 1 {
        let spec = FamilySpec::L { n: x.len() };
        let canon = realize(spec)?;
        let w = equivalent(x, &canon).expect("equally sized collinear sets are equivalent");
        return Ok(Verdict {
            finite: true,
            label: Some(spec),
            witness: Some(Witness::Embedding(w)),
        });
    }

    for spec in structural_candidates(x) {
        if let Some(v) = family_verdict(x, spec) {
            return Ok(v);
        }
    }

    let forbidden = has_v5(x)
        .map(|w| (ForbiddenKind::V5, w))
        .or_else(|| in_b_position(x).map(|w| (ForbiddenKind::BPosition, w)))
        .or_else(|| has_general_position_5(x).map(|w| (ForbiddenKind::GeneralPosition, w)));
    if let Some((kind, indices)) = forbidden {
        return Ok(Verdict {
            finite: false,
            label: None,
            witness: Some(Witness::Forbidden { kind, indices }),
        });
    }

    // the structural shortlist missed; sweep every family of this size
    for spec in all_candidates_of_size(x.len()) {
        if let Some(v) = family_verdict(x, spec) {
            return Ok(v);
        }
    }
    unreachable!("planar classification is total: family match or forbidden pattern must exist")
}

/// Catalog lookup for n <= 5; internal cross-check against the
/// structural recognizer.
pub fn catalog_lookup(x: &Configuration) -> Option<String> {
    let cat = crate::config::catalog(x.len()).ok()?;
    cat.into_iter()
        .find(|e| equivalent(x, &e.config).is_some())
        .map(|e| e.name)
}

/// Consistency of the two finiteness characterizations on a complete
/// planar configuration: family membership must coincide with the
/// absence of the V5 pattern.
pub fn check_second_characterization(x: &Configuration) -> Result<bool, Error> {
    if !is_complete(x) {
        return Err(Error::NotComplete);
    }
    let finite = recognize_family(x)?.finite;
    Ok(finite == has_v5(x).is_none())
}
