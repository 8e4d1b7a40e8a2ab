//! Independent oracles shared by the integration suites. Everything here
//! recomputes results from first principles (brute force over subsets, the
//! geometric flip rule on sub-polytopes, exhaustive chain enumeration) and
//! never goes through the encodings under test.
#![allow(dead_code)] // each test target uses its own subset of the oracles

use itertools::Itertools;
use st_core::even::EvenTriangulation;
use st_core::odd;
use st_core::poset::StasheffTamariPoset;
use st_core::tuple::{self, VertexTuple};
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub fn vt(entries: &[u32]) -> VertexTuple {
    VertexTuple::new(entries.to_vec(), 64).unwrap()
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn catalan(n: u64) -> u64 {
    binom(2 * n, n) / (n + 1)
}

/// A poset of triangulations represented by full top-cell sets, built by
/// breadth-first search with the geometric flip rule: locate a sub-polytope
/// on `2d+2` vertices triangulated as its lower triangulation and replace
/// that portion by the upper triangulation.
pub struct GeometricPoset {
    pub elements: Vec<BTreeSet<VertexTuple>>,
    pub edges: BTreeSet<(usize, usize)>,
}

pub fn geometric_bfs(m: u32, d: u32) -> GeometricPoset {
    let delta = 2 * d;
    let tmpl_lower = tuple::lower_triangulation(delta + 2, delta).unwrap();
    let tmpl_upper = tuple::upper_triangulation(delta + 2, delta).unwrap();
    let relabel = |t: &VertexTuple, x: &[u32]| -> VertexTuple {
        vt(&t
            .entries()
            .iter()
            .map(|&i| x[(i - 1) as usize])
            .collect::<Vec<_>>())
    };

    let start: BTreeSet<VertexTuple> = tuple::lower_triangulation(m, delta)
        .unwrap()
        .into_iter()
        .collect();
    let subsets: Vec<Vec<u32>> = (1..=m).combinations((delta + 2) as usize).collect();

    let mut ids: HashMap<Vec<VertexTuple>, usize> = HashMap::new();
    let mut elements: Vec<BTreeSet<VertexTuple>> = Vec::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let key = |cells: &BTreeSet<VertexTuple>| cells.iter().cloned().collect::<Vec<_>>();
    ids.insert(key(&start), 0);
    elements.push(start);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for x in &subsets {
            let old: Vec<VertexTuple> = tmpl_lower.iter().map(|t| relabel(t, x)).collect();
            if !old.iter().all(|c| current.contains(c)) {
                continue;
            }
            let mut next = current.clone();
            for c in &old {
                next.remove(c);
            }
            for t in &tmpl_upper {
                next.insert(relabel(t, x));
            }
            let k = key(&next);
            let id = match ids.get(&k) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    ids.insert(k, id);
                    elements.push(next);
                    id
                }
            };
            edges.insert((head, id));
        }
        head += 1;
    }
    GeometricPoset { elements, edges }
}

/// Counts the subsets of the internal tuple set that are supporting and
/// bridging, by direct filtration of all subsets.
pub fn brute_force_odd_count(m: u32, d: u32) -> u64 {
    let universe = tuple::internal_tuples_odd(m, d);
    assert!(universe.len() <= 20, "brute force budget exceeded");
    let mut count = 0;
    for bits in 0u64..(1 << universe.len()) {
        let x: Vec<VertexTuple> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, t)| t.clone())
            .collect();
        if odd::is_supporting(&x, m, d).unwrap() && odd::is_bridging(&x, m, d).unwrap() {
            count += 1;
        }
    }
    count
}

/// All maximal non-intertwining collections of separated `(d+1)`-tuples, by
/// backtracking over the tuple universe.
pub fn brute_force_even_collections(m: u32, d: u32) -> Vec<Vec<VertexTuple>> {
    let universe = tuple::separated_tuples(m, d);
    let u = universe.len();
    assert!(u <= 64, "brute force budget exceeded");
    let target = {
        let n = (m - 2 * d) as u64;
        binom(n + d as u64 - 1, d as u64) as usize
    };
    // conflict[i]: tuples intertwining universe[i] in either direction.
    let mut conflict = vec![0u64; u];
    for i in 0..u {
        for j in 0..u {
            if i != j {
                let a = &universe[i];
                let b = &universe[j];
                if st_core::tuple::intertwines(a, b).unwrap()
                    || st_core::tuple::intertwines(b, a).unwrap()
                {
                    conflict[i] |= 1 << j;
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        chosen: &mut Vec<usize>,
        blocked: u64,
        target: usize,
        universe: &[VertexTuple],
        conflict: &[u64],
        out: &mut Vec<Vec<VertexTuple>>,
    ) {
        if chosen.len() == target {
            out.push(chosen.iter().map(|&i| universe[i].clone()).collect());
            return;
        }
        let remaining = target - chosen.len();
        if universe.len() - start < remaining {
            return;
        }
        for i in start..universe.len() {
            if blocked & (1 << i) != 0 {
                continue;
            }
            chosen.push(i);
            rec(
                i + 1,
                chosen,
                blocked | conflict[i],
                target,
                universe,
                conflict,
                out,
            );
            chosen.pop();
        }
    }
    rec(0, &mut chosen, 0, target, &universe, &conflict, &mut out);
    out
}

/// Successor lists of the first-order cover digraph.
pub fn cover_successors(p: &StasheffTamariPoset) -> Vec<Vec<usize>> {
    let mut succ = vec![Vec::new(); p.len()];
    for &(a, b) in p.hasse1() {
        succ[a as usize].push(b as usize);
    }
    succ
}

/// Every maximal chain of the first order, as sequences of element indices,
/// found by depth-first search from the bottom.
pub fn all_maximal_chains(p: &StasheffTamariPoset) -> Vec<Vec<usize>> {
    let succ = cover_successors(p);
    let bottom = p.bottom(st_core::poset::OrderKind::Order1).unwrap();
    let mut out = Vec::new();
    let mut path = vec![bottom];
    fn rec(v: usize, succ: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if succ[v].is_empty() {
            out.push(path.clone());
            return;
        }
        for &w in &succ[v] {
            path.push(w);
            rec(w, succ, path, out);
            path.pop();
        }
    }
    rec(bottom, &succ, &mut path, &mut out);
    out
}

/// The summand set of a chain of even triangulations: the union of all
/// tuples over all steps.
pub fn chain_sigma(p: &StasheffTamariPoset, chain: &[usize]) -> BTreeSet<VertexTuple> {
    chain
        .iter()
        .flat_map(|&i| p.element(i).tuples().iter().cloned())
        .collect()
}

/// Groups all maximal chains of the first order by their summand sets.
pub fn sigma_classes(p: &StasheffTamariPoset) -> BTreeMap<BTreeSet<VertexTuple>, Vec<Vec<usize>>> {
    let mut classes: BTreeMap<BTreeSet<VertexTuple>, Vec<Vec<usize>>> = BTreeMap::new();
    for chain in all_maximal_chains(p) {
        classes
            .entry(chain_sigma(p, &chain))
            .or_default()
            .push(chain);
    }
    classes
}

/// Converts a chain of poset indices into a validated tilting chain.
pub fn chain_as_tilting(
    p: &StasheffTamariPoset,
    chain: &[usize],
    n: u32,
    d: u32,
) -> st_core::algebra::TiltingChain {
    let steps: Vec<EvenTriangulation> = chain
        .iter()
        .map(|&i| p.element(i).as_even().unwrap().clone())
        .collect();
    st_core::algebra::TiltingChain::from_steps(n, d, st_core::algebra::Frame::Tilting, steps)
        .unwrap()
}
