//! Morphisms between configurations, isomorphism search, and the
//! counting invariants built on top of it.
//!
//! A map f is a morphism when f(rch(A)) ⊆ rch(f(A)) for every subset A;
//! an isomorphism is a bijection preserving rch images exactly in both
//! directions. By Caratheodory it suffices to probe subsets of size at
//! most max(affine dim) + 1: hull membership is witnessed by a subset of
//! that size, and rch is monotone.

use super::{mask_of, Configuration, Mask};
use crate::error::Error;
use itertools::Itertools;
use std::collections::HashMap;

const AUT_GUARD: usize = 9;

fn probe_bound(x: &Configuration, y: &Configuration) -> usize {
    x.affine_dim().max(y.affine_dim()) + 1
}

/// A total map on the points of `source`, given by target indices.
#[derive(Clone, Debug)]
pub struct ConfigMap {
    source: Configuration,
    target: Configuration,
    map: Vec<usize>,
}

impl ConfigMap {
    pub fn new(source: Configuration, target: Configuration, map: Vec<usize>) -> Result<Self, Error> {
        if map.len() != source.len() || map.iter().any(|&j| j >= target.len()) {
            return Err(Error::InvalidMap);
        }
        Ok(ConfigMap { source, target, map })
    }

    pub fn source(&self) -> &Configuration {
        &self.source
    }

    pub fn target(&self) -> &Configuration {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    fn image_mask(&self, m: Mask) -> Mask {
        let mut out = 0;
        for (i, &j) in self.map.iter().enumerate() {
            if m >> i & 1 == 1 {
                out |= 1 << j;
            }
        }
        out
    }

    fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        self.image_mask(mask_of(0..self.source.len())).count_ones() as usize == self.map.len()
    }

    pub fn inverse(&self) -> Option<ConfigMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Some(ConfigMap {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    /// Morphism test: image of every relative hull stays inside the
    /// relative hull of the image, probed on all small subsets.
    pub fn is_morphism(&self) -> bool {
        let n = self.source.len();
        let bound = probe_bound(&self.source, &self.target).min(n);
        for k in 2..=bound {
            for s in (0..n).combinations(k) {
                let sm = mask_of(s);
                let img_of_rch = self.image_mask(self.source.rch_mask(sm));
                let rch_of_img = self.target.rch_mask(self.image_mask(sm));
                if img_of_rch & !rch_of_img != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Bijective, with rch images preserved exactly both ways.
    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective()
            && self.is_morphism()
            && self.inverse().expect("bijective").is_morphism()
    }
}

/// Per-point invariants preserved by every isomorphism; used to prune
/// the bijection search. Components: relative-extreme membership, how
/// often the point is strictly inside a segment, how many segments from
/// it absorb a third point, and how many 3-subsets absorb it.
type Sig = (bool, usize, usize, usize);

fn signatures(x: &Configuration) -> Vec<Sig> {
    let n = x.len();
    let ext = x.rext();
    let mut mid = vec![0usize; n];
    let mut deg = vec![0usize; n];
    for (i, j) in (0..n).tuple_combinations() {
        let pair = mask_of([i, j]);
        let extra = x.rch_mask(pair) & !pair;
        if extra != 0 {
            deg[i] += 1;
            deg[j] += 1;
            for k in 0..n {
                if extra >> k & 1 == 1 {
                    mid[k] += 1;
                }
            }
        }
    }
    let mut tri = vec![0usize; n];
    if n >= 3 {
        for s in (0..n).combinations(3) {
            let sm = mask_of(s);
            let extra = x.rch_mask(sm) & !sm;
            for k in 0..n {
                if extra >> k & 1 == 1 {
                    tri[k] += 1;
                }
            }
        }
    }
    (0..n)
        .map(|i| (ext.contains(&i), mid[i], deg[i], tri[i]))
        .collect()
}

struct IsoSearch<'a> {
    x: &'a Configuration,
    y: &'a Configuration,
    subsets: Vec<Mask>,
    x_rch: Vec<Mask>,
    y_rch: HashMap<Mask, Mask>,
    sig_x: Vec<Sig>,
    sig_y: Vec<Sig>,
    order: Vec<usize>,
    assignment: Vec<Option<usize>>,
    used: Mask,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl<'a> IsoSearch<'a> {
    fn partial_image(&self, m: Mask) -> Mask {
        let mut out = 0;
        for i in 0..self.x.len() {
            if m >> i & 1 == 1 {
                out |= 1 << self.assignment[i].expect("assigned");
            }
        }
        out
    }

    fn assigned_mask(&self) -> Mask {
        mask_of(
            (0..self.x.len()).filter(|&i| self.assignment[i].is_some()),
        )
    }

    fn consistent(&mut self, just: usize) -> bool {
        let assigned = self.assigned_mask();
        for t in 0..self.subsets.len() {
            let sm = self.subsets[t];
            if sm >> just & 1 == 0 || sm & !assigned != 0 {
                continue;
            }
            let img = self.partial_image(sm);
            let rhs = *self
                .y_rch
                .entry(img)
                .or_insert_with(|| self.y.rch_mask(img));
            let lhs = self.partial_image(self.x_rch[t] & assigned);
            // restricted to assigned points a genuine isomorphism gives
            // exactly the visible part of the target hull
            if lhs != rhs & self.partial_image(assigned) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, pos: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if pos == self.order.len() {
            let map: Vec<usize> = self
                .assignment
                .iter()
                .map(|a| a.expect("complete"))
                .collect();
            let cm = ConfigMap {
                source: self.x.clone(),
                target: self.y.clone(),
                map: map.clone(),
            };
            if cm.is_isomorphism() {
                self.found.push(map);
            }
            return;
        }
        let i = self.order[pos];
        for j in 0..self.y.len() {
            if self.used >> j & 1 == 1 || self.sig_y[j] != self.sig_x[i] {
                continue;
            }
            self.assignment[i] = Some(j);
            self.used |= 1 << j;
            if self.consistent(i) {
                self.run(pos + 1);
            }
            self.assignment[i] = None;
            self.used &= !(1 << j);
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn isomorphisms(x: &Configuration, y: &Configuration, limit: usize) -> Vec<Vec<usize>> {
    let n = x.len();
    if n != y.len() {
        return Vec::new();
    }
    let sig_x = signatures(x);
    let sig_y = signatures(y);
    let mut mx = sig_x.clone();
    let mut my = sig_y.clone();
    mx.sort();
    my.sort();
    if mx != my {
        return Vec::new();
    }

    let bound = probe_bound(x, y).min(n);
    let mut subsets = Vec::new();
    let mut x_rch = Vec::new();
    for k in 2..=bound {
        for s in (0..n).combinations(k) {
            let sm = mask_of(s);
            subsets.push(sm);
            x_rch.push(x.rch_mask(sm));
        }
    }

    // rarest signatures first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        (
            sig_y.iter().filter(|s| **s == sig_x[i]).count(),
            i,
        )
    });

    let mut search = IsoSearch {
        x,
        y,
        subsets,
        x_rch,
        y_rch: HashMap::new(),
        sig_x,
        sig_y,
        order,
        assignment: vec![None; n],
        used: 0,
        limit,
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

/// Search for an isomorphism; the witness is deterministic (first map
/// found under signature-rarity variable order and ascending images).
pub fn equivalent(x: &Configuration, y: &Configuration) -> Option<ConfigMap> {
    isomorphisms(x, y, 1).into_iter().next().map(|map| ConfigMap {
        source: x.clone(),
        target: y.clone(),
        map,
    })
}

pub fn automorphism_count(x: &Configuration) -> Result<usize, Error> {
    if x.len() > AUT_GUARD {
        return Err(Error::GuardExceeded {
            size: x.len(),
            guard: AUT_GUARD,
        });
    }
    Ok(isomorphisms(x, x, usize::MAX).len())
}

/// An injective morphism of `z` into `x`, found by testing `z` for
/// equivalence against the induced subconfigurations of `x` in
/// lexicographic subset order.
pub fn is_subconfiguration(z: &Configuration, x: &Configuration) -> Option<ConfigMap> {
    if z.len() > x.len() {
        return None;
    }
    for combo in (0..x.len()).combinations(z.len()) {
        let induced = x.induced(&combo);
        if let Some(w) = equivalent(z, &induced) {
            let map: Vec<usize> = (0..z.len()).map(|i| combo[w.apply(i)]).collect();
            return Some(ConfigMap {
                source: z.clone(),
                target: x.clone(),
                map,
            });
        }
    }
    None
}

/// Number of |Z|-subsets of X inducing a subconfiguration equivalent
/// to Z.
pub fn count_subconfigs(x: &Configuration, z: &Configuration) -> usize {
    if z.len() > x.len() {
        return 0;
    }
    (0..x.len())
        .combinations(z.len())
        .filter(|combo| equivalent(z, &x.induced(combo)).is_some())
        .count()
}
