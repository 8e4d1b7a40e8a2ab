//! Triangulations of the even-dimensional cyclic polytope `C(m, 2d)`, encoded
//! by the set of separated `(d+1)`-tuples among their `d`-simplices.
//!
//! A set of separated `(d+1)`-tuples in `[m]` describes a triangulation
//! exactly when it is pairwise non-intertwining and has size
//! `binom(n+d-1, d)` for `n = m - 2d`; validity is checked purely through
//! these invariants. No geometric test exists anywhere in this crate.

use crate::error::{Error, Result};
use crate::tuple::{
    self, internal_tuples_even, intertwines_eq, lower_triangulation, upper_triangulation,
    VertexTuple,
};
use itertools::Itertools;
use std::collections::BTreeSet;

/// An increasing bistellar flip: `removed` is exchanged for `added`, which it
/// intertwines, producing the covering triangulation `result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flip {
    pub removed: VertexTuple,
    pub added: VertexTuple,
    pub result: EvenTriangulation,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenTriangulation {
    m: u32,
    d: u32,
    e_set: Vec<VertexTuple>,
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Expected e-set size for a triangulation of `C(m, 2d)`.
pub fn e_set_size(m: u32, d: u32) -> u64 {
    let n = (m - 2 * d) as u64;
    binom(n + d as u64 - 1, d as u64)
}

impl EvenTriangulation {
    /// Validates the three encoding invariants: every tuple is a separated
    /// `(d+1)`-tuple in `[m]`, the set is pairwise non-intertwining, and it
    /// has the size forced by `(m, d)`.
    pub fn new(m: u32, d: u32, e_set: Vec<VertexTuple>) -> Result<Self> {
        if d == 0 || m < 2 * d + 1 {
            return Err(Error::DegeneratePolytope { m, delta: 2 * d });
        }
        if m > tuple::MAX_VERTICES {
            return Err(Error::TooManyVertices { m });
        }
        let mut e_set = e_set;
        e_set.sort();
        e_set.dedup();
        for t in &e_set {
            if t.len() != (d + 1) as usize {
                return Err(Error::NotTriangulation {
                    reason: format!("tuple {t} does not have {} entries", d + 1),
                });
            }
            if t.last().unwrap_or(0) > m {
                return Err(Error::NotTriangulation {
                    reason: format!("tuple {t} has entries outside [{m}]"),
                });
            }
            if !t.is_separated() {
                return Err(Error::NotTriangulation {
                    reason: format!("tuple {t} is not separated"),
                });
            }
        }
        for (i, a) in e_set.iter().enumerate() {
            for b in &e_set[i + 1..] {
                if intertwines_eq(a, b) || intertwines_eq(b, a) {
                    return Err(Error::NotTriangulation {
                        reason: format!("tuples {a} and {b} are intertwining"),
                    });
                }
            }
        }
        let want = e_set_size(m, d);
        if e_set.len() as u64 != want {
            return Err(Error::NotTriangulation {
                reason: format!(
                    "expected {want} tuples for C({m},{}), got {}",
                    2 * d,
                    e_set.len()
                ),
            });
        }
        Ok(EvenTriangulation { m, d, e_set })
    }

    /// Fast path for sets already known to satisfy the invariants.
    pub(crate) fn from_parts_unchecked(m: u32, d: u32, e_set: Vec<VertexTuple>) -> Self {
        debug_assert!(e_set.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(e_set.len() as u64, e_set_size(m, d));
        EvenTriangulation { m, d, e_set }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn delta(&self) -> u32 {
        2 * self.d
    }

    pub fn e_set(&self) -> &[VertexTuple] {
        &self.e_set
    }

    pub fn contains(&self, t: &VertexTuple) -> bool {
        self.e_set.binary_search(t).is_ok()
    }

    /// Extracts the encoding from a triangulation given by its top cells: the
    /// e-set is the set of separated `(d+1)`-subtuples of the cells.
    pub fn from_full(simplices: &[VertexTuple], m: u32, d: u32) -> Result<Self> {
        let mut tuples = BTreeSet::new();
        for s in simplices {
            if s.len() != (2 * d + 1) as usize {
                return Err(Error::InvalidArity {
                    expected: format!("cells with {} vertices", 2 * d + 1),
                    got: format!("{s}"),
                });
            }
            for t in s.subtuples((d + 1) as usize) {
                if t.is_separated() {
                    tuples.insert(t);
                }
            }
        }
        Self::new(m, d, tuples.into_iter().collect())
    }

    /// The e-set of the lower triangulation of `C(m, 2d)`.
    pub fn lower(m: u32, d: u32) -> Result<Self> {
        Self::from_full(&lower_triangulation(m, 2 * d)?, m, d)
    }

    /// The e-set of the upper triangulation of `C(m, 2d)`.
    pub fn upper(m: u32, d: u32) -> Result<Self> {
        Self::from_full(&upper_triangulation(m, 2 * d)?, m, d)
    }

    /// Reconstructs the top cells: the `(2d+1)`-subsets of `[m]` all of whose
    /// separated `(d+1)`-subtuples lie in the e-set.
    pub fn full_simplices(&self) -> Vec<VertexTuple> {
        let k = (2 * self.d + 1) as usize;
        let sub = (self.d + 1) as usize;
        let mut out = Vec::new();
        'outer: for comb in (1..=self.m).combinations(k) {
            let s = VertexTuple::from_sorted_unchecked(comb);
            for t in s.subtuples(sub) {
                if t.is_separated() && !self.contains(&t) {
                    continue 'outer;
                }
            }
            out.push(s);
        }
        out
    }

    /// Candidate exchange partners for `a`: the tuples it intertwines, which
    /// interleave strictly between its entries and once above.
    fn exchange_candidates(&self, a: &VertexTuple) -> Vec<VertexTuple> {
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
        rec(xs, self.m, &mut cur, &mut out);
        out
    }

    /// All increasing bistellar flips out of this triangulation: exchanges of
    /// one e-set tuple for a tuple it intertwines such that the result is
    /// again a valid encoding. Empty exactly on the upper triangulation.
    pub fn increasing_flips(&self) -> Vec<Flip> {
        let mut flips = Vec::new();
        for (i, a) in self.e_set.iter().enumerate() {
            'cand: for b in self.exchange_candidates(a) {
                // Candidates intertwined by `a` are automatically separated.
                debug_assert!(b.is_separated());
                debug_assert!(intertwines_eq(a, &b));
                for (j, c) in self.e_set.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    if c == &b || intertwines_eq(c, &b) || intertwines_eq(&b, c) {
                        continue 'cand;
                    }
                }
                let mut e_set = self.e_set.clone();
                e_set.remove(i);
                let pos = e_set.binary_search(&b).unwrap_err();
                e_set.insert(pos, b.clone());
                flips.push(Flip {
                    removed: a.clone(),
                    added: b,
                    result: EvenTriangulation::from_parts_unchecked(self.m, self.d, e_set),
                });
            }
        }
        flips
    }

    /// Second-order comparison: `self <=_2 other` holds when no tuple of
    /// `other` intertwines a tuple of `self`.
    pub fn leq2(&self, other: &Self) -> Result<bool> {
        if self.m != other.m || self.d != other.d {
            return Err(Error::Incompatible(format!(
                "C({},{}) vs C({},{})",
                self.m,
                self.delta(),
                other.m,
                other.delta()
            )));
        }
        for a in &self.e_set {
            for b in &other.e_set {
                if intertwines_eq(b, a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The internal `d`-simplices submerged by this triangulation: those that
    /// no e-set tuple intertwines.
    pub fn submersion_set(&self) -> Vec<VertexTuple> {
        internal_tuples_even(self.m, self.d)
            .into_iter()
            .filter(|a| !self.e_set.iter().any(|b| intertwines_eq(b, a)))
            .collect()
    }

    /// Image under the vertex reversal `v -> m + 1 - v`. Separatedness is
    /// preserved, so this is again a valid encoding.
    pub fn reverse(&self) -> Self {
        let mut e_set: Vec<VertexTuple> = self.e_set.iter().map(|t| t.reverse(self.m)).collect();
        e_set.sort();
        EvenTriangulation::from_parts_unchecked(self.m, self.d, e_set)
    }

    /// Embedding into the Boolean lattice on the internal `d`-simplices that
    /// avoid vertex 1: the submersion set restricted to tuples with first
    /// entry at least 2. The ground set has size `binom(m-d-1, d+1)`.
    pub fn boolean_embedding(&self) -> Vec<VertexTuple> {
        self.submersion_set()
            .into_iter()
            .filter(|t| t.first() != Some(1))
            .collect()
    }

    /// Canonical label, e.g. `135|136|146`.
    pub fn canonical_label(&self) -> String {
        self.e_set.iter().join("|")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "d": self.d,
            "kind": "even",
            "e": self.e_set.iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::NotTriangulation {
            reason: format!("malformed JSON: {what}"),
        };
        if v.get("kind").and_then(|k| k.as_str()) != Some("even") {
            return Err(bad("kind must be \"even\""));
        }
        let m = v
            .get("m")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("m"))? as u32;
        let d = v
            .get("d")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("d"))? as u32;
        let arr = v
            .get("e")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("e"))?;
        let mut e_set = Vec::with_capacity(arr.len());
        for t in arr {
            let entries: Vec<u32> = t
                .as_array()
                .ok_or_else(|| bad("tuple"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as u32).ok_or_else(|| bad("entry")))
                .collect::<Result<_>>()?;
            e_set.push(VertexTuple::new(entries, m)?);
        }
        Self::new(m, d, e_set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vt(entries: &[u32]) -> VertexTuple {
        VertexTuple::new(entries.to_vec(), 64).unwrap()
    }

    fn et(m: u32, d: u32, tuples: &[&[u32]]) -> EvenTriangulation {
        EvenTriangulation::new(m, d, tuples.iter().map(|t| vt(t)).collect()).unwrap()
    }

    #[test]
    fn e_sets_of_c64() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        assert_eq!(
            lower.e_set(),
            et(6, 2, &[&[1, 3, 5], &[1, 3, 6], &[1, 4, 6]]).e_set()
        );
        let upper = EvenTriangulation::upper(6, 2).unwrap();
        assert_eq!(
            upper.e_set(),
            et(6, 2, &[&[1, 3, 6], &[1, 4, 6], &[2, 4, 6]]).e_set()
        );
    }

    #[test]
    fn single_simplex_round_trip() {
        for d in 1..=3 {
            let m = 2 * d + 1;
            let cell = VertexTuple::new((1..=m).collect(), m).unwrap();
            let t = EvenTriangulation::from_full(std::slice::from_ref(&cell), m, d).unwrap();
            assert_eq!(t.e_set().len() as u64, e_set_size(m, d));
            assert_eq!(t.full_simplices(), vec![cell]);
        }
    }

    #[test]
    fn invariant_violations_are_rejected() {
        // 135 and 246 intertwine.
        assert!(matches!(
            EvenTriangulation::new(6, 2, vec![vt(&[1, 3, 5]), vt(&[2, 4, 6]), vt(&[1, 3, 6])]),
            Err(Error::NotTriangulation { .. })
        ));
        // Wrong size.
        assert!(matches!(
            EvenTriangulation::new(6, 2, vec![vt(&[1, 3, 5])]),
            Err(Error::NotTriangulation { .. })
        ));
        // Not separated.
        assert!(matches!(
            EvenTriangulation::new(6, 2, vec![vt(&[1, 2, 5]), vt(&[1, 3, 6]), vt(&[1, 4, 6])]),
            Err(Error::NotTriangulation { .. })
        ));
    }

    #[test]
    fn full_simplices_of_c64_lower() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        let mut cells = lower.full_simplices();
        cells.sort();
        let mut want = lower_triangulation(6, 4).unwrap();
        want.sort();
        assert_eq!(cells, want);
    }

    #[test]
    fn flips_of_c64() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        let flips = lower.increasing_flips();
        assert_eq!(flips.len(), 1);
        assert_eq!(flips[0].removed, vt(&[1, 3, 5]));
        assert_eq!(flips[0].added, vt(&[2, 4, 6]));
        assert_eq!(flips[0].result, EvenTriangulation::upper(6, 2).unwrap());
        assert!(EvenTriangulation::upper(6, 2)
            .unwrap()
            .increasing_flips()
            .is_empty());
    }

    #[test]
    fn leq2_examples() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        let upper = EvenTriangulation::upper(6, 2).unwrap();
        assert!(lower.leq2(&upper).unwrap());
        assert!(!upper.leq2(&lower).unwrap());
        assert!(lower.leq2(&lower).unwrap());
        assert!(upper.leq2(&upper).unwrap());
        let other = EvenTriangulation::lower(8, 2).unwrap();
        assert!(matches!(lower.leq2(&other), Err(Error::Incompatible(_))));
    }

    #[test]
    fn submersion_sets_of_c64() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        let upper = EvenTriangulation::upper(6, 2).unwrap();
        assert_eq!(lower.submersion_set(), vec![vt(&[1, 3, 5])]);
        assert_eq!(upper.submersion_set(), vec![vt(&[1, 3, 5]), vt(&[2, 4, 6])]);
    }

    #[test]
    fn reverse_swaps_lower_and_upper() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        let upper = EvenTriangulation::upper(6, 2).unwrap();
        assert_eq!(lower.reverse(), upper);
        assert_eq!(upper.reverse(), lower);
        assert_eq!(lower.reverse().reverse(), lower);
    }

    #[test]
    fn boolean_embedding_of_c64() {
        let lower = EvenTriangulation::lower(6, 2).unwrap();
        let upper = EvenTriangulation::upper(6, 2).unwrap();
        let ground = crate::tuple::internal_tuples_odd(7, 2);
        assert_eq!(ground.len(), 1); // binom(6-2-1, 3) = 1
        assert_eq!(lower.boolean_embedding(), Vec::<VertexTuple>::new());
        assert_eq!(upper.boolean_embedding(), vec![vt(&[2, 4, 6])]);
    }

    #[test]
    fn json_round_trip() {
        let lower = EvenTriangulation::lower(8, 2).unwrap();
        let v = lower.to_json();
        assert_eq!(v["kind"], "even");
        assert_eq!(EvenTriangulation::from_json(&v).unwrap(), lower);
    }

    proptest::proptest! {
        /// Random walks along increasing flips stay valid, ascend in the
        /// second order, reverse contravariantly, and round-trip through
        /// JSON at every step.
        #[test]
        fn random_flip_walks(choices in proptest::collection::vec(0usize..32, 0..12),
                             seed in 0usize..3) {
            let (m, d) = [(7, 1), (8, 2), (9, 2)][seed];
            let mut current = EvenTriangulation::lower(m, d).unwrap();
            for c in choices {
                let flips = current.increasing_flips();
                if flips.is_empty() {
                    break;
                }
                let flip = &flips[c % flips.len()];
                let next = EvenTriangulation::new(m, d, flip.result.e_set().to_vec()).unwrap();
                proptest::prop_assert!(current.leq2(&next).unwrap());
                proptest::prop_assert!(!next.leq2(&current).unwrap());
                proptest::prop_assert!(next.reverse().leq2(&current.reverse()).unwrap());
                proptest::prop_assert_eq!(
                    EvenTriangulation::from_json(&next.to_json()).unwrap(),
                    next.clone()
                );
                current = next;
            }
        }
    }
}
