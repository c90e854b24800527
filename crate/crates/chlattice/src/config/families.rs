//! The named families of finitely completable configurations and the
//! catalog of all small planar configuration classes.

use super::morphism::equivalent;
use super::Configuration;
use crate::error::Error;
use crate::geom::{pt2, pt3, Point};
use crate::rational::{rat, ratio};

/// Abstract family identifiers with their parameters.
///
/// `L{n}` is n collinear points. `T{n}` is an n-point axis plus one
/// star point off the line. `D{p,q}` is an axis with p points left and
/// q points right of a center, plus two stars on opposite sides whose
/// segment crosses the axis at the center; `I{p,q}` is `D{p,q}` without
/// the center. `S6` is the sporadic six-point configuration. The two
/// spatial families are a pair of skew lines and a planar `T` together
/// with an off-plane line not parallel to its axis.
#[derive(Clone, Copy, Debug, Eq)]
pub enum FamilySpec {
    L { n: usize },
    T { n: usize },
    D { p: usize, q: usize },
    I { p: usize, q: usize },
    S6,
    LPlusL { p: usize, q: usize },
    TPlusL { p: usize, q: usize },
}

impl FamilySpec {
    /// Reflecting the axis swaps p and q in D, I and the two lines in
    /// L+L, so those parameter pairs name one class.
    fn canon(&self) -> (u8, usize, usize) {
        match *self {
            FamilySpec::L { n } => (0, n, 0),
            FamilySpec::T { n } => (1, n, 0),
            FamilySpec::D { p, q } => (2, p.min(q), p.max(q)),
            FamilySpec::I { p, q } => (3, p.min(q), p.max(q)),
            FamilySpec::S6 => (4, 0, 0),
            FamilySpec::LPlusL { p, q } => (5, p.min(q), p.max(q)),
            FamilySpec::TPlusL { p, q } => (6, p, q),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match *self {
            FamilySpec::L { n } if n == 0 => bad("L needs n >= 1".into()),
            FamilySpec::T { n } if n < 2 => bad("T needs an axis of at least 2 points".into()),
            FamilySpec::D { p, q } | FamilySpec::I { p, q } if p + q < 2 => {
                bad(format!("parameters ({p},{q}) are excluded: the axis degenerates"))
            }
            FamilySpec::LPlusL { p, q } if p < 2 || q < 2 => {
                bad("L+L needs two genuine lines (p,q >= 2)".into())
            }
            FamilySpec::TPlusL { p, q } if p < 2 || q < 2 => {
                bad("T+L needs a valid T (p >= 2) and a genuine line (q >= 2)".into())
            }
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::L { .. } => "L",
            FamilySpec::T { .. } => "T",
            FamilySpec::D { .. } => "D",
            FamilySpec::I { .. } => "I",
            FamilySpec::S6 => "S6",
            FamilySpec::LPlusL { .. } => "L+L",
            FamilySpec::TPlusL { .. } => "T+L",
        }
    }
}

impl PartialEq for FamilySpec {
    fn eq(&self, other: &Self) -> bool {
        self.canon() == other.canon()
    }
}

impl std::hash::Hash for FamilySpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canon().hash(state);
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            FamilySpec::L { n } => write!(f, "L{n}"),
            FamilySpec::T { n } => write!(f, "T{n}"),
            FamilySpec::D { p, q } => write!(f, "D({p},{q})"),
            FamilySpec::I { p, q } => write!(f, "I({p},{q})"),
            FamilySpec::S6 => write!(f, "S6"),
            FamilySpec::LPlusL { p, q } => write!(f, "L{p}+L{q}"),
            FamilySpec::TPlusL { p, q } => write!(f, "T{p}+L{q}"),
        }
    }
}

/// Canonical small-integer realization of a family member. Any
/// realization of the class would do; recognizers never rely on these
/// coordinates.
pub fn realize(spec: FamilySpec) -> Result<Configuration, Error> {
    spec.validate()?;
    let points = match spec {
        FamilySpec::L { n } => (0..n as i64).map(|i| pt2(i, 0)).collect(),
        FamilySpec::T { n } => {
            let mut pts: Vec<Point> = (0..n as i64).map(|i| pt2(i, 0)).collect();
            pts.push(pt2(0, 1));
            pts
        }
        FamilySpec::D { p, q } => axis_and_stars(p, q, true),
        FamilySpec::I { p, q } => axis_and_stars(p, q, false),
        FamilySpec::S6 => vec![
            pt2(0, 0),
            pt2(1, 0),
            pt2(2, 0),
            pt2(0, 1),
            pt2(0, -1),
            pt2(-1, 2),
        ],
        FamilySpec::LPlusL { p, q } => {
            let mut pts: Vec<Point> = (0..p as i64).map(|i| pt3(i, 0, 0)).collect();
            pts.extend((0..q as i64).map(|j| pt3(0, j, 1)));
            pts
        }
        FamilySpec::TPlusL { p, q } => {
            // the line sits over the star point: any line meeting the base
            // plane strictly inside the hull away from the points would
            // spawn segment/triangle intersections without end
            let mut pts: Vec<Point> = (0..p as i64).map(|i| pt3(i, 0, 0)).collect();
            pts.push(pt3(0, 1, 0));
            pts.extend((1..=q as i64).map(|j| pt3(0, 1, j)));
            pts
        }
    };
    let dim = points[0].dim();
    Configuration::new(dim, points)
}

fn axis_and_stars(p: usize, q: usize, with_center: bool) -> Vec<Point> {
    let mut pts: Vec<Point> = (-(p as i64)..=q as i64)
        .filter(|&i| with_center || i != 0)
        .map(|i| pt2(i, 0))
        .collect();
    pts.push(pt2(0, 1));
    pts.push(pt2(0, -1));
    pts
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub config: Configuration,
}

fn entry(name: &str, config: Configuration) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        config,
    }
}

fn family_entry(name: &str, spec: FamilySpec) -> CatalogEntry {
    entry(name, realize(spec).expect("valid catalog spec"))
}

fn cfg2(coords: Vec<Point>) -> Configuration {
    Configuration::new(2, coords).expect("valid catalog realization")
}

/// The canonical five-point configuration with two segments sharing an
/// endpoint: a-b-c and a-d-e, not all collinear. Its completion never
/// terminates, which makes it the key forbidden pattern.
pub fn v5_canonical() -> Configuration {
    cfg2(vec![pt2(0, 0), pt2(2, 0), pt2(4, 0), pt2(1, 2), pt2(2, 4)])
}

/// All planar configuration classes with n points (n <= 5), one
/// canonical realization each: 1, 1, 2, 4 and 12 classes.
pub fn catalog(n: usize) -> Result<Vec<CatalogEntry>, Error> {
    let l = |k: usize| FamilySpec::L { n: k };
    let t = |k: usize| FamilySpec::T { n: k };
    let i = |p: usize, q: usize| FamilySpec::I { p, q };
    let d = |p: usize, q: usize| FamilySpec::D { p, q };
    Ok(match n {
        1 => vec![family_entry("L1", l(1))],
        2 => vec![family_entry("L2", l(2))],
        3 => vec![family_entry("L3", l(3)), family_entry("T2", t(2))],
        4 => vec![
            family_entry("L4", l(4)),
            family_entry("T3", t(3)),
            family_entry("I(0,2)", i(0, 2)),
            family_entry("I(1,1)", i(1, 1)),
        ],
        5 => vec![
            family_entry("L5", l(5)),
            family_entry("T4", t(4)),
            entry("V5", v5_canonical()),
            family_entry("D(0,2)", d(0, 2)),
            entry(
                "R",
                cfg2(vec![pt2(0, 0), pt2(1, 0), pt2(3, 0), pt2(0, 2), pt2(3, 2)]),
            ),
            family_entry("I(0,3)", i(0, 3)),
            entry(
                "G",
                cfg2(vec![pt2(0, 0), pt2(3, 0), pt2(4, 2), pt2(1, 3), pt2(2, 2)]),
            ),
            entry(
                "R'",
                cfg2(vec![
                    pt2(0, 0),
                    pt2(2, 0),
                    pt2(4, 0),
                    pt2(1, 3),
                    Point::new(vec![ratio(5, 2), rat(1)]),
                ]),
            ),
            family_entry("D(1,1)", d(1, 1)),
            family_entry("I(1,2)", i(1, 2)),
            entry(
                "G'",
                cfg2(vec![pt2(0, 0), pt2(6, 0), pt2(1, 5), pt2(2, 1), pt2(3, 2)]),
            ),
            entry(
                "P5",
                cfg2(vec![pt2(0, 0), pt2(4, 0), pt2(5, 3), pt2(2, 5), pt2(-1, 3)]),
            ),
        ],
        _ => return Err(Error::UnsupportedDimension(n)),
    })
}

/// Exhaustive pairwise non-equivalence over one catalog size; pulled
/// out so tests and the acceptance suite share it.
pub fn catalog_pairwise_distinct(n: usize) -> Result<bool, Error> {
    let cat = catalog(n)?;
    for a in 0..cat.len() {
        for b in a + 1..cat.len() {
            if equivalent(&cat[a].config, &cat[b].config).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
