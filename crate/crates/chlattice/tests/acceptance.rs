//! The release gate: one test per acceptance criterion, each printing a
//! single PASS/FAIL line (visible with --nocapture).

use chlattice::classifier::{self, ForbiddenKind, Witness};
use chlattice::completion::{self, Budget, Status};
use chlattice::config::{self, Configuration, FamilySpec};
use chlattice::geom::{between, point_in_hull, pt2, Point};
use chlattice::lattice::{self, RefLattice};
use chlattice::rational::ratio;
use std::collections::BTreeSet;
use std::panic::AssertUnwindSafe;

fn criterion(id: usize, name: &str, f: impl FnOnce()) {
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(f));
    println!(
        "criterion {id:02} ({name}): {}",
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    if let Err(e) = outcome {
        std::panic::resume_unwind(e);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn completed(x: &Configuration) -> Configuration {
    let r = completion::complete(x, &Budget::default());
    assert_eq!(r.status, Status::Complete, "expected a finite completion");
    r.points
}

fn fam(spec: FamilySpec) -> Configuration {
    config::realize(spec).unwrap()
}

#[test]
fn criterion_01_catalog_census_and_counting_identity() {
    criterion(1, "catalog census and counting identity", || {
        for (n, expect) in [(1, 1), (2, 1), (3, 2), (4, 4), (5, 12)] {
            let cat = config::catalog(n).unwrap();
            assert_eq!(cat.len(), expect, "census at n = {n}");
            assert!(config::catalog_pairwise_distinct(n).unwrap());
        }
        // sum over all patterns of size k of the occurrence counts is the
        // number of k-subsets, since every subset induces exactly one class
        let samples = [
            fam(FamilySpec::S6),
            fam(FamilySpec::D { p: 2, q: 2 }),
            fam(FamilySpec::T { n: 4 }),
            config::v5_canonical(),
        ];
        for x in &samples {
            for k in 1..=x.len().min(5) {
                let total: usize = config::catalog(k)
                    .unwrap()
                    .iter()
                    .map(|z| config::count_subconfigs(x, &z.config))
                    .sum();
                assert_eq!(total, binomial(x.len(), k), "identity at |X|={} k={k}", x.len());
            }
        }
    });
}

#[test]
fn criterion_02_square_completion_is_the_centered_diamond() {
    criterion(2, "unit square completes to the centered diamond", || {
        let sq =
            Configuration::new(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)]).unwrap();
        let r = completion::complete(&sq, &Budget::default());
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.added, vec![Point::new(vec![ratio(1, 2), ratio(1, 2)])]);
        let d11 = fam(FamilySpec::D { p: 1, q: 1 });
        assert!(config::equivalent(&r.points, &d11).is_some());
    });
}

#[test]
fn criterion_03_diamond_minus_center_completions() {
    criterion(3, "I family completions", || {
        for p in 1..=3usize {
            for q in 1..=3usize {
                let i = fam(FamilySpec::I { p, q });
                let r = completion::complete(&i, &Budget::default());
                assert_eq!(r.status, Status::Complete, "I({p},{q})");
                assert_eq!(r.added.len(), 1, "I({p},{q}) adds exactly the center");
                let d = fam(FamilySpec::D { p, q });
                assert!(config::equivalent(&r.points, &d).is_some(), "I({p},{q}) vs D");
            }
        }
        for q in 2..=4usize {
            let i = fam(FamilySpec::I { p: 0, q });
            let r = completion::complete(&i, &Budget::default());
            assert_eq!(r.status, Status::Complete);
            assert!(r.added.is_empty(), "I(0,{q}) is already complete");
        }
    });
}

#[test]
fn criterion_04_collinear_lattices_are_subword_lattices() {
    criterion(4, "collinear lattices are subword lattices", || {
        for n in 1..=6usize {
            let x = fam(FamilySpec::L { n });
            let d = lattice::enumerate_rlat(&x).unwrap();
            assert_eq!(d.len(), n * (n + 1) / 2 + 1, "size at n = {n}");
            let w = lattice::build_ref(&RefLattice::Subword(n));
            assert!(lattice::lattice_isomorphic(&d, &w).unwrap().is_some(), "iso at n = {n}");
        }
    });
}

#[test]
fn criterion_05_star_lattices_are_chain_times_subword() {
    criterion(5, "star lattices are chain x subword", || {
        for n in 2..=5usize {
            let x = fam(FamilySpec::T { n });
            let d = lattice::enumerate_rlat(&x).unwrap();
            assert_eq!(d.len(), n * n + n + 2, "size at n = {n}");
            let r = lattice::build_ref(&RefLattice::Product(
                Box::new(RefLattice::Chain(2)),
                Box::new(RefLattice::Subword(n)),
            ));
            assert!(lattice::lattice_isomorphic(&d, &r).unwrap().is_some(), "iso at n = {n}");
        }
    });
}

#[test]
fn criterion_06_diamond_and_punctured_diamond_share_a_lattice() {
    criterion(6, "D(2,3) and completed I(2,3) lattices coincide", || {
        let d = completed(&fam(FamilySpec::D { p: 2, q: 3 }));
        let i = completed(&fam(FamilySpec::I { p: 2, q: 3 }));
        let ld = lattice::enumerate_rlat(&d).unwrap();
        let li = lattice::enumerate_rlat(&i).unwrap();
        assert!(lattice::lattice_isomorphic(&ld, &li).unwrap().is_some());
    });
}

#[test]
fn criterion_07_sporadic_six_point_configuration() {
    criterion(7, "sporadic six-point configuration", || {
        let s6 = fam(FamilySpec::S6);
        let r = completion::complete(&s6, &Budget::default());
        assert_eq!(r.status, Status::Complete);
        assert!(r.added.is_empty());
        let v = classifier::recognize_family(&s6).unwrap();
        assert!(v.finite);
        assert_eq!(v.label, Some(FamilySpec::S6));
        assert_eq!(config::automorphism_count(&s6).unwrap(), 3);
        let d = lattice::enumerate_rlat(&s6).unwrap();
        assert!(lattice::is_atomistic(&d));
    });
}

#[test]
fn criterion_08_v5_is_infinite_with_a_strict_descent() {
    criterion(8, "V5 forces an infinite descent", || {
        let v = config::v5_canonical();
        let verdict = classifier::recognize_family(&v).unwrap();
        assert!(!verdict.finite);
        assert!(matches!(
            verdict.witness,
            Some(Witness::Forbidden { kind: ForbiddenKind::V5, .. })
        ));
        let r = completion::complete(&v, &Budget::default());
        assert_eq!(r.status, Status::BudgetExceeded);
        let steps = completion::v5_descent(&v, 8).unwrap();
        assert_eq!(steps.len(), 8);
        let b = v.point(1).clone();
        let mut chain = vec![v.point(4).clone()];
        chain.extend(steps.iter().map(|s| s.point(4).clone()));
        let distinct: BTreeSet<&Point> = chain.iter().collect();
        assert_eq!(distinct.len(), chain.len(), "descent points pairwise distinct");
        for w in chain.windows(2) {
            assert!(between(&b, &w[1], &w[0]), "each step lands strictly nearer b");
        }
    });
}

#[test]
fn criterion_09_convex_position_pentagon_is_infinite() {
    criterion(9, "convex-position pentagon is infinite", || {
        let pent = Configuration::new(
            2,
            vec![pt2(0, 0), pt2(4, 0), pt2(5, 3), pt2(2, 5), pt2(-1, 3)],
        )
        .unwrap();
        let verdict = classifier::recognize_family(&pent).unwrap();
        assert!(!verdict.finite);
        assert!(matches!(
            verdict.witness,
            Some(Witness::Forbidden { kind: ForbiddenKind::GeneralPosition, .. })
        ));
        let r = completion::complete(&pent, &Budget::default());
        assert_eq!(r.status, Status::BudgetExceeded);
    });
}

#[test]
fn criterion_10_cross_operator_respects_the_four_fold_bound() {
    criterion(10, "cross operator four-fold lattice bound", || {
        for x in [
            fam(FamilySpec::L { n: 3 }),
            fam(FamilySpec::T { n: 3 }),
            fam(FamilySpec::D { p: 1, q: 1 }),
        ] {
            let c = x.point(0).clone();
            let (base, lifted, ok) = lattice::cross_bound_check(&x, &c).unwrap();
            assert!(ok, "|Lat(X*c)| = {lifted} exceeds 4 * {base}");
        }
    });
}

#[test]
fn criterion_11_spatial_families_stay_finite() {
    criterion(11, "spatial families stay finite", || {
        for (p, q) in [(2, 2), (3, 3)] {
            let x = fam(FamilySpec::LPlusL { p, q });
            let r = completion::complete(&x, &Budget::default());
            assert_eq!(r.status, Status::Complete, "L{p}+L{q}");
            assert!(r.added.is_empty(), "skew lines generate nothing new");
        }
        let t = fam(FamilySpec::TPlusL { p: 3, q: 2 });
        let r = completion::complete(&t, &Budget::default());
        assert_eq!(r.status, Status::Complete, "T3+L2 terminates in budget");
    });
}

#[test]
fn criterion_12_both_characterizations_agree_on_complete_inputs() {
    criterion(12, "finiteness characterizations agree", || {
        let mut complete_configs: Vec<Configuration> = Vec::new();
        for n in 1..=5 {
            for e in config::catalog(n).unwrap() {
                let r = completion::complete(&e.config, &Budget::default());
                if r.status == Status::Complete {
                    complete_configs.push(r.points);
                }
            }
        }
        let sq =
            Configuration::new(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(0, 1)]).unwrap();
        complete_configs.push(completed(&sq));
        for p in 1..=3usize {
            for q in 1..=3usize {
                complete_configs.push(completed(&fam(FamilySpec::I { p, q })));
            }
        }
        for n in 1..=6 {
            complete_configs.push(fam(FamilySpec::L { n }));
        }
        for n in 2..=5 {
            complete_configs.push(fam(FamilySpec::T { n }));
        }
        complete_configs.push(fam(FamilySpec::D { p: 2, q: 3 }));
        complete_configs.push(fam(FamilySpec::S6));
        assert!(complete_configs.len() >= 25);
        for x in &complete_configs {
            assert!(
                classifier::check_second_characterization(x).unwrap(),
                "characterizations disagree on {x:?}"
            );
        }
    });
}

#[test]
fn criterion_13_property_suites_hold_on_seeded_samples() {
    criterion(13, "seeded property sweep", || {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        // the 5x5 rational grid with quarter steps
        let grid: Vec<Point> = (0..5)
            .flat_map(|i| (0..5).map(move |j| Point::new(vec![ratio(i, 2), ratio(j, 2)])))
            .collect();
        for _ in 0..60 {
            let k = rng.gen_range(1..=7);
            let mut pts = grid.clone();
            pts.shuffle(&mut rng);
            pts.truncate(k);
            pts.sort();
            let x = Configuration::new(2, pts).unwrap();
            // closure laws on a random subset
            let a: BTreeSet<usize> = (0..x.len()).filter(|_| rng.gen_bool(0.5)).collect();
            let ca = x.rch(&a);
            assert!(a.is_subset(&ca));
            assert_eq!(x.rch(&ca), ca);
            // classifier versus engine: finite verdicts and terminating
            // completions must coincide
            let verdict = classifier::recognize_family(&x).unwrap();
            let run = completion::complete(&x, &Budget::default());
            assert_eq!(
                verdict.finite,
                run.status == Status::Complete,
                "classifier/engine split on {x:?}"
            );
            // hull membership agrees with the small-subset oracle
            let probe = grid[rng.gen_range(0..grid.len())].clone();
            assert_eq!(
                point_in_hull(&probe, x.points()),
                chlattice::geom::caratheodory(&probe, x.points(), 3),
            );
            // random self-maps that are morphisms preserve betweenness
            let map: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..x.len())).collect();
            let f = config::ConfigMap::new(x.clone(), x.clone(), map).unwrap();
            if f.is_morphism() {
                for i in 0..x.len() {
                    for j in 0..x.len() {
                        for l in 0..x.len() {
                            if x.between_idx(i, j, l) {
                                let (fi, fj, fl) = (f.apply(i), f.apply(j), f.apply(l));
                                assert!(fj == fi || fj == fl || x.between_idx(fi, fj, fl));
                            }
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_14_equivalence_iff_lattice_isomorphism() {
    criterion(14, "equivalence iff lattice isomorphism", || {
        let mut members: Vec<(String, Configuration)> = Vec::new();
        for n in 1..=5 {
            for e in config::catalog(n).unwrap() {
                if completion::is_complete(&e.config) {
                    members.push((e.name.clone(), e.config));
                }
            }
        }
        assert!(members.len() >= 8);
        let diagrams: Vec<_> = members
            .iter()
            .map(|(_, x)| lattice::enumerate_rlat(x).unwrap())
            .collect();
        for i in 0..members.len() {
            for j in i..members.len() {
                let equiv = config::equivalent(&members[i].1, &members[j].1).is_some();
                let iso = lattice::lattice_isomorphic(&diagrams[i], &diagrams[j])
                    .unwrap()
                    .is_some();
                assert_eq!(
                    equiv, iso,
                    "verdicts split on {} vs {}",
                    members[i].0, members[j].0
                );
            }
        }
    });
}
