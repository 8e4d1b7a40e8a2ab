//! Enumeration of all triangulations of `C(m, delta)` and the two higher
//! Stasheff-Tamari orders on them: breadth-first search over increasing
//! bistellar flips from the lower triangulation, pairwise computation of the
//! second order, order comparison, lattice checks, and exports.

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};
use crate::even::EvenTriangulation;
use crate::odd::OddTriangulation;
use crate::tuple::VertexTuple;
use itertools::Itertools;
use rayon::prelude::*;
use std::collections::HashMap;
use std::time::{Duration, Instant};

/// One triangulation of `C(m, delta)`, encoded by parity of `delta`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Triangulation {
    Even(EvenTriangulation),
    Odd(OddTriangulation),
}

impl Triangulation {
    pub fn tuples(&self) -> &[VertexTuple] {
        match self {
            Triangulation::Even(t) => t.e_set(),
            Triangulation::Odd(t) => t.internal_set(),
        }
    }

    pub fn canonical_label(&self) -> String {
        match self {
            Triangulation::Even(t) => t.canonical_label(),
            Triangulation::Odd(t) => t.canonical_label(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Triangulation::Even(t) => t.to_json(),
            Triangulation::Odd(t) => t.to_json(),
        }
    }

    pub fn as_even(&self) -> Option<&EvenTriangulation> {
        match self {
            Triangulation::Even(t) => Some(t),
            Triangulation::Odd(_) => None,
        }
    }

    pub fn as_odd(&self) -> Option<&OddTriangulation> {
        match self {
            Triangulation::Odd(t) => Some(t),
            Triangulation::Even(_) => None,
        }
    }
}

/// Which of the two orders to inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Order1,
    Order2,
}

/// Resource limits for `enumerate`; exceeding either aborts with a resource
/// error reporting the partial count.
#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub max_elements: usize,
    pub max_duration: Option<Duration>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_elements: 1_000_000,
            max_duration: Some(Duration::from_secs(600)),
        }
    }
}

/// Outcome of a lattice check: either a lattice, or a witness pair with no
/// join or meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCheck {
    pub is_lattice: bool,
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct StasheffTamariPoset {
    m: u32,
    delta: u32,
    elements: Vec<Triangulation>,
    hasse1: Vec<(u32, u32)>,
    rel1: BitMatrix,
    rel2: BitMatrix,
}

/// Indices of separated tuples, plus the intertwining relation between them
/// as bit rows, for the fast paths of flip search and the second order.
struct TupleTable {
    tuples: Vec<VertexTuple>,
    index: HashMap<VertexTuple, usize>,
    words: usize,
    /// `wr[b]` has bit `a` set when `tuples[b]` intertwines `tuples[a]`.
    wr: Vec<Vec<u64>>,
    /// Transpose: `wr_t[b]` has bit `a` set when `tuples[a]` intertwines `tuples[b]`.
    wr_t: Vec<Vec<u64>>,
}

impl TupleTable {
    fn new(tuples: Vec<VertexTuple>) -> Self {
        let n = tuples.len();
        let words = n.div_ceil(64).max(1);
        let index: HashMap<VertexTuple, usize> = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut wr = vec![vec![0u64; words]; n];
        let mut wr_t = vec![vec![0u64; words]; n];
        for (b, tb) in tuples.iter().enumerate() {
            for (a, ta) in tuples.iter().enumerate() {
                if crate::tuple::intertwines_eq(tb, ta) {
                    wr[b][a / 64] |= 1 << (a % 64);
                    wr_t[a][b / 64] |= 1 << (b % 64);
                }
            }
        }
        TupleTable {
            tuples,
            index,
            words,
            wr,
            wr_t,
        }
    }
}

struct Budget {
    start: Instant,
    opts: EnumerateOptions,
}

impl Budget {
    fn new(opts: EnumerateOptions) -> Self {
        Budget {
            start: Instant::now(),
            opts,
        }
    }

    fn check(&self, visited: usize) -> Result<()> {
        if visited > self.opts.max_elements {
            return Err(Error::ResourceCap {
                visited,
                cap: format!("max {} elements", self.opts.max_elements),
            });
        }
        if let Some(limit) = self.opts.max_duration {
            if self.start.elapsed() > limit {
                return Err(Error::ResourceCap {
                    visited,
                    cap: format!("max {:.0?}", limit),
                });
            }
        }
        Ok(())
    }
}

/// Enumerates every triangulation of `C(m, delta)` by flip search from the
/// lower triangulation, and computes both orders. Elements come out sorted by
/// canonical form, so results are independent of thread count.
pub fn enumerate(m: u32, delta: u32, opts: EnumerateOptions) -> Result<StasheffTamariPoset> {
    if delta == 0 || m <= delta {
        return Err(Error::DegeneratePolytope { m, delta });
    }
    let budget = Budget::new(opts);
    if delta.is_multiple_of(2) {
        enumerate_even(m, delta / 2, budget)
    } else {
        enumerate_odd(m, (delta - 1) / 2, budget)
    }
}

/// Keys in discovery order plus the cover edges on discovery indices.
type BfsResult<K> = Result<(Vec<K>, Vec<(u32, u32)>)>;

/// Generic BFS over covers: `seed` is the bottom element, `covers` yields the
/// keys covering a given key.
fn bfs_covers<K, F>(seed: K, mut covers: F, budget: &Budget) -> BfsResult<K>
where
    K: Clone + Eq + std::hash::Hash,
    F: FnMut(&K) -> Vec<K>,
{
    let mut ids: HashMap<K, u32> = HashMap::new();
    let mut order: Vec<K> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    ids.insert(seed.clone(), 0);
    order.push(seed);
    let mut head = 0usize;
    while head < order.len() {
        budget.check(order.len())?;
        let current = order[head].clone();
        let cid = head as u32;
        for next in covers(&current) {
            let nid = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = order.len() as u32;
                    ids.insert(next.clone(), id);
                    order.push(next);
                    id
                }
            };
            edges.push((cid, nid));
        }
        head += 1;
    }
    Ok((order, edges))
}

fn enumerate_even(m: u32, d: u32, budget: Budget) -> Result<StasheffTamariPoset> {
    let table = TupleTable::new(crate::tuple::separated_tuples(m, d));
    let lower = EvenTriangulation::lower(m, d)?;
    let seed: Vec<u16> = lower
        .e_set()
        .iter()
        .map(|t| table.index[t] as u16)
        .sorted()
        .collect();

    let covers = |key: &Vec<u16>| -> Vec<Vec<u16>> {
        let mask = {
            let mut mask = vec![0u64; table.words];
            for &i in key {
                mask[i as usize / 64] |= 1 << (i % 64);
            }
            mask
        };
        let mut out = Vec::new();
        for (pos, &ai) in key.iter().enumerate() {
            let a = &table.tuples[ai as usize];
            // Mask without the tuple being exchanged.
            let mut rest = mask.clone();
            rest[ai as usize / 64] &= !(1 << (ai % 64));
            for b in exchange_candidates(a, m) {
                let bi = table.index[&b];
                let w = bi / 64;
                let bit = 1u64 << (bi % 64);
                if rest[w] & bit != 0 {
                    continue;
                }
                if !bits::is_disjoint(&table.wr[bi], &rest)
                    || !bits::is_disjoint(&table.wr_t[bi], &rest)
                {
                    continue;
                }
                let mut next = key.clone();
                next.remove(pos);
                let ins = next.partition_point(|&x| (x as usize) < bi);
                next.insert(ins, bi as u16);
                out.push(next);
            }
        }
        out
    };

    let (order, edges) = bfs_covers(seed, covers, &budget)?;
    let elements: Vec<Triangulation> = order
        .iter()
        .map(|key| {
            let e_set: Vec<VertexTuple> = key
                .iter()
                .map(|&i| table.tuples[i as usize].clone())
                .collect();
            Triangulation::Even(EvenTriangulation::from_parts_unchecked(m, d, e_set))
        })
        .collect();

    // Second order per element: union of the intertwining rows of its e-set.
    // `i <=_2 j` holds exactly when that union for `j` misses `i`'s mask.
    let masks: Vec<Vec<u64>> = order
        .iter()
        .map(|key| {
            let mut mask = vec![0u64; table.words];
            for &i in key {
                mask[i as usize / 64] |= 1 << (i % 64);
            }
            mask
        })
        .collect();
    let unions: Vec<Vec<u64>> = order
        .par_iter()
        .map(|key| {
            let mut u = vec![0u64; table.words];
            for &b in key {
                for (w, x) in table.wr[b as usize].iter().enumerate() {
                    u[w] |= x;
                }
            }
            u
        })
        .collect();
    let n = order.len();
    let mut rel2 = BitMatrix::new(n);
    rel2.par_rows_mut().into_par_iter().for_each(|(i, row)| {
        for j in 0..n {
            if bits::is_disjoint(&unions[j], &masks[i]) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
    });

    finish_poset(m, 2 * d, elements, edges, rel2, &budget)
}

/// Tuples strictly interleaved above `a` within `[m]`: the candidates `b`
/// with `a` intertwining `b`.
fn exchange_candidates(a: &VertexTuple, m: u32) -> Vec<VertexTuple> {
    let xs = a.entries();
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(xs.len());
    fn rec(xs: &[u32], m: u32, cur: &mut Vec<u32>, out: &mut Vec<VertexTuple>) {
        let i = cur.len();
        let lo = xs[i] + 1;
        let hi = if i + 1 < xs.len() { xs[i + 1] - 1 } else { m };
        for v in lo..=hi {
            cur.push(v);
            if cur.len() == xs.len() {
                out.push(VertexTuple::from_sorted_unchecked(cur.clone()));
            } else {
                rec(xs, m, cur, out);
            }
            cur.pop();
        }
    }
    rec(xs, m, &mut cur, &mut out);
    out
}

fn enumerate_odd(m: u32, d: u32, budget: Budget) -> Result<StasheffTamariPoset> {
    let universe = crate::tuple::internal_tuples_odd(m, d);
    let lower = OddTriangulation::lower(m, d)?;
    let index: HashMap<VertexTuple, usize> = universe
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let seed: Vec<u16> = (0..universe.len() as u16).collect();
    debug_assert_eq!(lower.internal_set(), universe.as_slice());

    let covers = |key: &Vec<u16>| -> Vec<Vec<u16>> {
        let tuples: Vec<VertexTuple> = key.iter().map(|&i| universe[i as usize].clone()).collect();
        let flips = OddTriangulation::from_parts_unchecked(m, d, tuples).increasing_flips();
        flips
            .into_iter()
            .map(|(_, t)| {
                t.internal_set()
                    .iter()
                    .map(|t| index[t] as u16)
                    .collect::<Vec<u16>>()
            })
            .collect()
    };

    let (order, edges) = bfs_covers(seed, covers, &budget)?;
    let elements: Vec<Triangulation> = order
        .iter()
        .map(|key| {
            let set: Vec<VertexTuple> = key.iter().map(|&i| universe[i as usize].clone()).collect();
            Triangulation::Odd(OddTriangulation::from_parts_unchecked(m, d, set))
        })
        .collect();

    let words = universe.len().div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = order
        .iter()
        .map(|key| {
            let mut mask = vec![0u64; words];
            for &i in key {
                mask[i as usize / 64] |= 1 << (i % 64);
            }
            mask
        })
        .collect();
    let n = order.len();
    let mut rel2 = BitMatrix::new(n);
    rel2.par_rows_mut().into_par_iter().for_each(|(i, row)| {
        for j in 0..n {
            // i <=_2 j iff the internal set of i contains that of j.
            if bits::is_subset(&masks[j], &masks[i]) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
    });

    finish_poset(m, 2 * d + 1, elements, edges, rel2, &budget)
}

/// Sorts elements canonically, remaps edges, closes the first order, and
/// permutes `rel2` to match.
fn finish_poset(
    m: u32,
    delta: u32,
    elements: Vec<Triangulation>,
    edges: Vec<(u32, u32)>,
    rel2: BitMatrix,
    budget: &Budget,
) -> Result<StasheffTamariPoset> {
    budget.check(elements.len())?;
    let n = elements.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| elements[a].tuples().cmp(elements[b].tuples()));
    // new index of old element
    let mut rank = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let mut sorted_elements: Vec<Triangulation> = Vec::with_capacity(n);
    for &old in &perm {
        sorted_elements.push(elements[old].clone());
    }
    let mut hasse1: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|(a, b)| (rank[a as usize] as u32, rank[b as usize] as u32))
        .collect();
    hasse1.sort_unstable();
    hasse1.dedup();

    let mut rel2_sorted = BitMatrix::new(n);
    for i in 0..n {
        for j in rel2.iter_row(i) {
            rel2_sorted.set(rank[i], rank[j], true);
        }
    }

    let rel1 = reachability(n, &hasse1)?;
    Ok(StasheffTamariPoset {
        m,
        delta,
        elements: sorted_elements,
        hasse1,
        rel1,
        rel2: rel2_sorted,
    })
}

/// Reflexive-transitive closure of the cover digraph.
fn reachability(n: usize, edges: &[(u32, u32)]) -> Result<BitMatrix> {
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in edges {
        succ[a as usize].push(b);
        indeg[b as usize] += 1;
    }
    // Kahn topological order.
    let mut stack: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        topo.push(v);
        for &w in &succ[v as usize] {
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                stack.push(w);
            }
        }
    }
    if topo.len() != n {
        return Err(Error::Internal("cover digraph has a cycle".into()));
    }
    let mut rel = BitMatrix::new(n);
    for &v in topo.iter().rev() {
        rel.set(v as usize, v as usize, true);
        let children = succ[v as usize].clone();
        for w in children {
            rel.or_row_into(w as usize, v as usize);
        }
    }
    Ok(rel)
}

impl StasheffTamariPoset {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Triangulation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Triangulation {
        &self.elements[i]
    }

    pub fn hasse1(&self) -> &[(u32, u32)] {
        &self.hasse1
    }

    pub fn rel(&self, which: OrderKind) -> &BitMatrix {
        match which {
            OrderKind::Order1 => &self.rel1,
            OrderKind::Order2 => &self.rel2,
        }
    }

    pub fn leq(&self, which: OrderKind, i: usize, j: usize) -> bool {
        self.rel(which).get(i, j)
    }

    /// Index of the unique minimum (the lower triangulation) in the chosen
    /// order, if there is one.
    pub fn bottom(&self, which: OrderKind) -> Option<usize> {
        let rel = self.rel(which);
        (0..self.len()).find(|&i| rel.row_popcount(i) == self.len())
    }

    /// Index of the unique maximum (the upper triangulation).
    pub fn top(&self, which: OrderKind) -> Option<usize> {
        let rel = self.rel(which);
        (0..self.len()).find(|&j| (0..self.len()).all(|i| rel.get(i, j)))
    }

    /// Whether the two orders coincide as relations.
    pub fn orders_equal(&self) -> bool {
        self.rel1 == self.rel2
    }

    /// The first pair on which the orders disagree, in index order.
    pub fn orders_diff_witness(&self) -> Option<(usize, usize)> {
        if self.orders_equal() {
            return None;
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.rel1.get(i, j) != self.rel2.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Containment of the first order in the second, which must always hold.
    pub fn rel1_subset_of_rel2(&self) -> bool {
        (0..self.len()).all(|i| bits::is_subset(self.rel1.row(i), self.rel2.row(i)))
    }

    /// Direct scan for unique minimal upper bounds. A pair of elements whose
    /// upper-bound set has no minimum is a witness that the poset is not a
    /// lattice; if every pair has a join and a bottom element exists, meets
    /// exist as well.
    pub fn is_lattice(&self, which: OrderKind) -> LatticeCheck {
        let n = self.len();
        if n <= 1 {
            return LatticeCheck {
                is_lattice: true,
                witness: None,
            };
        }
        let rel = self.rel(which);
        if self.bottom(which).is_none() {
            // Two minimal elements have no lower bound at all.
            let down = rel.transpose();
            let minimal: Vec<usize> = (0..n).filter(|&i| down.row_popcount(i) == 1).collect();
            let witness = Some((minimal[0], minimal[1]));
            return LatticeCheck {
                is_lattice: false,
                witness,
            };
        }
        let upcnt: Vec<u32> = (0..n).map(|i| rel.row_popcount(i) as u32).collect();
        let witness = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut buf = vec![0u64; rel.words_per_row()];
                for j in i + 1..n {
                    if rel.get(i, j) || rel.get(j, i) {
                        continue; // comparable pairs trivially have a join
                    }
                    bits::and_into(rel.row(i), rel.row(j), &mut buf);
                    let size = bits::popcount(&buf) as u32;
                    let has_join = size > 0 && bits::iter_bits(&buf).any(|u| upcnt[u] == size);
                    if !has_join {
                        return Some((i, j));
                    }
                }
                None
            })
            .find_first(|w| w.is_some())
            .flatten();
        LatticeCheck {
            is_lattice: witness.is_none(),
            witness,
        }
    }

    /// Whether vertex reversal induces an order-reversing bijection on both
    /// orders. Only meaningful in even dimensions; odd-dimensional posets are
    /// not self-dual.
    pub fn self_duality_check(&self) -> Result<bool> {
        if !self.delta.is_multiple_of(2) {
            return Err(Error::NotApplicable(
                "self-duality via vertex reversal applies to even dimensions only".into(),
            ));
        }
        let index: HashMap<&[VertexTuple], usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, t)| (t.tuples(), i))
            .collect();
        let mut sigma = Vec::with_capacity(self.len());
        for t in &self.elements {
            let rev = t.as_even().expect("even poset").reverse();
            match index.get(rev.e_set()) {
                Some(&j) => sigma.push(j),
                None => return Err(Error::Internal("reversal left the poset".into())),
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.rel2.get(i, j) != self.rel2.get(sigma[j], sigma[i])
                    || self.rel1.get(i, j) != self.rel1.get(sigma[j], sigma[i])
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Transitive reduction of one of the orders (its Hasse diagram), as
    /// directed cover edges.
    pub fn transitive_reduction(&self, which: OrderKind) -> Vec<(u32, u32)> {
        let rel = self.rel(which);
        let n = self.len();
        let down = rel.transpose();
        let mut edges: Vec<(u32, u32)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut out = Vec::new();
                for j in rel.iter_row(i) {
                    if i == j {
                        continue;
                    }
                    // (i, j) is a cover unless something sits strictly between.
                    let strict_between =
                        rel.row(i)
                            .iter()
                            .zip(down.row(j))
                            .enumerate()
                            .any(|(w, (a, b))| {
                                let mut x = a & b;
                                if w * 64 <= i && i < (w + 1) * 64 {
                                    x &= !(1u64 << (i % 64));
                                }
                                if w * 64 <= j && j < (w + 1) * 64 {
                                    x &= !(1u64 << (j % 64));
                                }
                                x != 0
                            });
                    if !strict_between {
                        out.push((i as u32, j as u32));
                    }
                }
                out
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// DOT rendering: canonical labels, cover edges of the first order drawn
    /// upward; when the orders differ, covers of the second order missing
    /// from the first-order relation are added dashed.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "digraph stasheff_tamari {{");
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=box, fontname=\"monospace\"];");
        for (i, t) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  {} [label=\"{}\"];", i, t.canonical_label());
        }
        for &(a, b) in &self.hasse1 {
            let _ = writeln!(s, "  {a} -> {b};");
        }
        if !self.orders_equal() {
            for (a, b) in self.transitive_reduction(OrderKind::Order2) {
                if !self.rel1.get(a as usize, b as usize) {
                    let _ = writeln!(s, "  {a} -> {b} [style=dashed];");
                }
            }
        }
        let _ = writeln!(s, "}}");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rel2_pairs: Vec<[usize; 2]> = (0..self.len())
            .flat_map(|i| {
                self.rel2
                    .iter_row(i)
                    .filter(move |&j| j != i)
                    .map(move |j| [i, j])
            })
            .collect();
        serde_json::json!({
            "m": self.m,
            "delta": self.delta,
            "elements": self.elements.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "hasse1": self.hasse1.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "rel2_pairs": rel2_pairs,
        })
    }
}

/// Embedding of the odd second order into the Boolean lattice on the internal
/// tuples, with reversed inclusion: the image is the internal set itself. The
/// ground set has size `binom(m-d-2, d+1)`.
pub fn boolean_embedding_odd(t: &OddTriangulation) -> Vec<VertexTuple> {
    t.internal_set().to_vec()
}
