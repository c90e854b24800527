//! Finite lattices of relatively convex sets: enumeration for complete
//! configurations, Hasse diagrams, reference lattices, and order
//! isomorphism.

use crate::completion::{complete, cross, is_complete, Budget, Status};
use crate::config::{mask_to_set, Configuration, Mask};
use crate::error::Error;
use crate::geom::Point;
use crate::rational::rat;
use std::collections::BTreeSet;

const ENUM_GUARD: usize = 12;
const ISO_GUARD: usize = 4096;

/// A finite lattice presented by its elements (index sets over the
/// underlying points, bottom ∅ included) and the covers of its Hasse
/// diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDiagram {
    /// Sorted by (cardinality, lexicographic content).
    pub elements: Vec<BTreeSet<usize>>,
    /// (lower, upper) pairs of element indices; the transitive
    /// reduction of set inclusion.
    pub covers: Vec<(usize, usize)>,
    pub meta: String,
}

impl LatticeDiagram {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn from_elements(mut elements: Vec<BTreeSet<usize>>, meta: String) -> LatticeDiagram {
        elements.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        elements.dedup();
        let covers = transitive_reduction(&elements);
        LatticeDiagram {
            elements,
            covers,
            meta,
        }
    }

    /// Union of all elements; the top once the diagram is a lattice.
    fn universe(&self) -> BTreeSet<usize> {
        self.elements
            .iter()
            .flat_map(|e| e.iter().copied())
            .collect()
    }
}

fn transitive_reduction(elements: &[BTreeSet<usize>]) -> Vec<(usize, usize)> {
    let m = elements.len();
    let mut covers = Vec::new();
    for j in 0..m {
        let below: Vec<usize> = (0..m)
            .filter(|&i| i != j && elements[i].is_subset(&elements[j]))
            .collect();
        for &i in &below {
            let is_cover = below
                .iter()
                .all(|&k| k == i || !elements[i].is_subset(&elements[k]));
            if is_cover {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    covers
}

/// All rch-closed subsets by brute force over the power set; the
/// independent oracle for the closure enumeration (use only for small
/// inputs).
pub fn rlat_powerset(x: &Configuration) -> Vec<BTreeSet<usize>> {
    let n = x.len();
    let mut out = Vec::new();
    for m in 0..(1u64 << n) {
        if x.rch_mask(m) == m {
            out.push(mask_to_set(m));
        }
    }
    out
}

/// Enumerate the lattice of relatively convex subsets of a complete
/// configuration via canonical (lectic) closure generation.
pub fn enumerate_rlat(x: &Configuration) -> Result<LatticeDiagram, Error> {
    if x.len() > ENUM_GUARD {
        return Err(Error::GuardExceeded {
            size: x.len(),
            guard: ENUM_GUARD,
        });
    }
    if !is_complete(x) {
        return Err(Error::NotComplete);
    }
    let n = x.len();
    let mut closed: Vec<BTreeSet<usize>> = Vec::new();
    let mut a: Mask = x.rch_mask(0);
    loop {
        closed.push(mask_to_set(a));
        // next closed set in lectic order
        let mut advanced = false;
        for i in (0..n).rev() {
            if a >> i & 1 == 1 {
                continue;
            }
            let low: Mask = a & ((1 << i) - 1);
            let b = x.rch_mask(low | (1 << i));
            if b & !(low | (1 << i)) & ((1 << i) - 1) == 0 {
                a = b;
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(LatticeDiagram::from_elements(
        closed,
        format!("rlat of {} points", n),
    ))
}

/// Reference lattices: the subword (factor) lattice of a word of n
/// distinct letters, finite chains, and direct products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefLattice {
    Subword(usize),
    Chain(usize),
    Product(Box<RefLattice>, Box<RefLattice>),
}

pub fn build_ref(kind: &RefLattice) -> LatticeDiagram {
    match kind {
        RefLattice::Subword(n) => {
            let mut elements = vec![BTreeSet::new()];
            for i in 0..*n {
                for j in i..*n {
                    elements.push((i..=j).collect());
                }
            }
            LatticeDiagram::from_elements(elements, format!("subwords of {n} letters"))
        }
        RefLattice::Chain(k) => {
            let elements = (0..*k).map(|h| (0..h).collect()).collect();
            LatticeDiagram::from_elements(elements, format!("chain of {k} elements"))
        }
        RefLattice::Product(a, b) => {
            let da = build_ref(a);
            let db = build_ref(b);
            let shift = da.universe().iter().max().map_or(0, |m| m + 1);
            let mut elements = Vec::new();
            for ea in &da.elements {
                for eb in &db.elements {
                    let mut e = ea.clone();
                    e.extend(eb.iter().map(|i| i + shift));
                    elements.push(e);
                }
            }
            LatticeDiagram::from_elements(elements, format!("({}) x ({})", da.meta, db.meta))
        }
    }
}

/// Order structure derived from the covers alone, so it applies to any
/// diagram regardless of how the elements are encoded.
struct OrderInfo {
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// leq[i] holds a bitset over j with i <= j.
    leq: Vec<Vec<u64>>,
    height: Vec<usize>,
}

impl OrderInfo {
    fn new(d: &LatticeDiagram) -> OrderInfo {
        let m = d.len();
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for &(lo, hi) in &d.covers {
            up[lo].push(hi);
            down[hi].push(lo);
        }
        // topological order by Kahn over the covers
        let mut indeg: Vec<usize> = down.iter().map(|v| v.len()).collect();
        let mut queue: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(m);
        while let Some(i) = queue.pop() {
            topo.push(i);
            for &j in &up[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push(j);
                }
            }
        }
        let words = m.div_ceil(64);
        let mut leq = vec![vec![0u64; words]; m];
        for &i in topo.iter().rev() {
            leq[i][i / 64] |= 1 << (i % 64);
            for &j in &up[i] {
                let row = leq[j].clone();
                for (w, v) in leq[i].iter_mut().zip(row) {
                    *w |= v;
                }
            }
        }
        let mut height = vec![0usize; m];
        for &i in &topo {
            for &j in &up[i] {
                height[j] = height[j].max(height[i] + 1);
            }
        }
        OrderInfo {
            up,
            down,
            leq,
            height,
        }
    }

    fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j / 64] >> (j % 64) & 1 == 1
    }
}

/// Every element is the join of the atoms below it, and the atoms are
/// exactly the singletons of the universe.
pub fn is_atomistic(d: &LatticeDiagram) -> bool {
    let Some(bottom) = d.elements.iter().position(|e| e.is_empty()) else {
        return false;
    };
    let ord = OrderInfo::new(d);
    let atoms: Vec<usize> = ord.up[bottom].clone();
    let singletons: BTreeSet<BTreeSet<usize>> =
        d.universe().iter().map(|&i| BTreeSet::from([i])).collect();
    let atom_sets: BTreeSet<BTreeSet<usize>> =
        atoms.iter().map(|&a| d.elements[a].clone()).collect();
    if atom_sets != singletons {
        return false;
    }
    for e in 0..d.len() {
        let below: Vec<usize> = atoms.iter().copied().filter(|&a| ord.le(a, e)).collect();
        // the join of these atoms is the unique minimal upper bound;
        // atomistic means that bound is e itself
        let is_join = (0..d.len())
            .filter(|&u| below.iter().all(|&a| ord.le(a, u)))
            .all(|u| !ord.le(u, e) || u == e);
        if !is_join {
            return false;
        }
    }
    true
}

fn refine_labels(d: &LatticeDiagram, ord: &OrderInfo) -> Vec<u64> {
    let m = d.len();
    let mut labels: Vec<u64> = (0..m)
        .map(|i| {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            use std::hash::{Hash, Hasher};
            (ord.height[i], ord.up[i].len(), ord.down[i].len()).hash(&mut h);
            h.finish()
        })
        .collect();
    loop {
        let mut next: Vec<u64> = Vec::with_capacity(m);
        for i in 0..m {
            use std::hash::{Hash, Hasher};
            let mut h = std::collections::hash_map::DefaultHasher::new();
            labels[i].hash(&mut h);
            let mut ups: Vec<u64> = ord.up[i].iter().map(|&j| labels[j]).collect();
            let mut downs: Vec<u64> = ord.down[i].iter().map(|&j| labels[j]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            ups.hash(&mut h);
            downs.hash(&mut h);
            next.push(h.finish());
        }
        let classes = |v: &[u64]| v.iter().collect::<BTreeSet<_>>().len();
        if classes(&next) == classes(&labels) {
            return next;
        }
        labels = next;
    }
}

/// Order-isomorphism search by iterated degree/height refinement and
/// backtracking; returns the element bijection a-index -> b-index.
pub fn lattice_isomorphic(
    a: &LatticeDiagram,
    b: &LatticeDiagram,
) -> Result<Option<Vec<usize>>, Error> {
    for d in [a, b] {
        if d.len() > ISO_GUARD {
            return Err(Error::GuardExceeded {
                size: d.len(),
                guard: ISO_GUARD,
            });
        }
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let m = a.len();
    let oa = OrderInfo::new(a);
    let ob = OrderInfo::new(b);
    let la = refine_labels(a, &oa);
    let lb = refine_labels(b, &ob);
    let mut sa = la.clone();
    let mut sb = lb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }

    // rarest labels first
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (lb.iter().filter(|&&l| l == la[i]).count(), i));

    fn go(
        pos: usize,
        order: &[usize],
        la: &[u64],
        lb: &[u64],
        oa: &OrderInfo,
        ob: &OrderInfo,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for j in 0..lb.len() {
            if used[j] || la[i] != lb[j] {
                continue;
            }
            let ok = order[..pos].iter().all(|&k| {
                let fk = map[k].expect("assigned");
                oa.le(i, k) == ob.le(j, fk) && oa.le(k, i) == ob.le(fk, j)
            });
            if !ok {
                continue;
            }
            map[i] = Some(j);
            used[j] = true;
            if go(pos + 1, order, la, lb, oa, ob, map, used) {
                return true;
            }
            map[i] = None;
            used[j] = false;
        }
        false
    }

    let mut map = vec![None; m];
    let mut used = vec![false; m];
    if !go(0, &order, &la, &lb, &oa, &ob, &mut map, &mut used) {
        return Ok(None);
    }
    let witness: Vec<usize> = map.into_iter().map(|v| v.expect("complete")).collect();
    // full verification of the order isomorphism
    for i in 0..m {
        for j in 0..m {
            if oa.le(i, j) != ob.le(witness[i], witness[j]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(witness))
}

/// Verify |Lat(X*c)| <= 4 |Lat(X)| by enumerating both sides; X must
/// be planar, complete and finitely completable.
pub fn cross_bound_check(x: &Configuration, c: &Point) -> Result<(usize, usize, bool), Error> {
    let dx = enumerate_rlat(x)?;
    let lifted = cross(x, c, &rat(1))?;
    let done = complete(&lifted, &Budget::default());
    if done.status != Status::Complete {
        return Err(Error::InfiniteLattice);
    }
    let dxc = enumerate_rlat(&done.points)?;
    Ok((dx.len(), dxc.len(), dxc.len() <= 4 * dx.len()))
}

/// Graph-description text for diagram rendering: one node per element
/// labeled by its index set, one edge per cover.
pub fn to_dot(d: &LatticeDiagram) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for (i, e) in d.elements.iter().enumerate() {
        let label: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("  n{} [label=\"{{{}}}\"];\n", i, label.join(",")));
    }
    for &(lo, hi) in &d.covers {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}
