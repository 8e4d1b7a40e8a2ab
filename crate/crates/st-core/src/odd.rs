//! Triangulations of the odd-dimensional cyclic polytope `C(m, 2d+1)`,
//! encoded by their sets of internal `d`-simplices. A subset of the internal
//! `(d+1)`-tuples describes a triangulation exactly when it is supporting and
//! bridging; covers of the first order remove one tuple, and the second order
//! is reverse inclusion.

use crate::error::{Error, OddDefect, Result};
use crate::tuple::{self, internal_tuples_odd, intertwines_off, VertexTuple};
use itertools::Itertools;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddTriangulation {
    m: u32,
    d: u32,
    internal_set: Vec<VertexTuple>,
}

fn check_ambient(m: u32, d: u32) -> Result<()> {
    if m < 2 * d + 2 {
        return Err(Error::DegeneratePolytope {
            m,
            delta: 2 * d + 1,
        });
    }
    if m > tuple::MAX_VERTICES {
        return Err(Error::TooManyVertices { m });
    }
    Ok(())
}

fn check_members(x: &[VertexTuple], m: u32, d: u32) -> Result<()> {
    for t in x {
        if t.len() != (d + 1) as usize || t.last().unwrap_or(0) > m || !t.is_internal_odd(m) {
            return Err(Error::NotOddTriangulation {
                defect: OddDefect::OutsideInternalSet { tuple: t.clone() },
            });
        }
    }
    Ok(())
}

/// All `d`-tuples interleaving strictly between the entries of `a`:
/// the witnesses `a'` with `a' wr a`.
fn interleaving_witnesses(a: &VertexTuple) -> Vec<VertexTuple> {
    let xs = a.entries();
    let d = xs.len() - 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(xs: &[u32], cur: &mut Vec<u32>, d: usize, out: &mut Vec<VertexTuple>) {
        if cur.len() == d {
            out.push(VertexTuple::from_sorted_unchecked(cur.clone()));
            return;
        }
        let i = cur.len();
        for v in xs[i] + 1..xs[i + 1] {
            cur.push(v);
            rec(xs, cur, d, out);
            cur.pop();
        }
    }
    rec(xs, &mut cur, d, &mut out);
    out
}

fn supporting_defect(x: &[VertexTuple], m: u32, d: u32) -> Option<VertexTuple> {
    let set: HashSet<&VertexTuple> = x.iter().collect();
    let sub = (d + 1) as usize;
    'tuples: for a in x {
        'witness: for w in interleaving_witnesses(a) {
            let mut union: Vec<u32> = a.entries().to_vec();
            union.extend_from_slice(w.entries());
            union.sort_unstable();
            for comb in union.into_iter().combinations(sub) {
                let b = VertexTuple::from_sorted_unchecked(comb);
                if b.is_internal_odd(m) && !set.contains(&b) {
                    continue 'witness;
                }
            }
            continue 'tuples;
        }
        return Some(a.clone());
    }
    None
}

fn bridging_defect(x: &[VertexTuple]) -> Option<(VertexTuple, VertexTuple, VertexTuple)> {
    let set: HashSet<&VertexTuple> = x.iter().collect();
    for (i, s) in x.iter().enumerate() {
        for t in &x[i + 1..] {
            let xs = s.entries();
            let ys = t.entries();
            let diffs: Vec<usize> = (0..xs.len()).filter(|&k| xs[k] != ys[k]).collect();
            let (first, last) = match (diffs.first(), diffs.last()) {
                (Some(&f), Some(&l)) => (f, l),
                _ => continue,
            };
            // The pair only qualifies when the disagreement window segments
            // strictly interleave; orient so `p`'s segment intertwines `q`'s.
            let (p, q) = if xs[first] < ys[first] {
                (s, t)
            } else {
                (t, s)
            };
            let (ps, qs) = (p.entries(), q.entries());
            let interleaved =
                (first..=last).all(|k| ps[k] < qs[k] && (k == last || qs[k] < ps[k + 1]));
            if !interleaved {
                continue;
            }
            for k in first + 1..=last {
                let mut entries = Vec::with_capacity(ps.len());
                entries.extend_from_slice(&ps[..k]);
                entries.extend_from_slice(&qs[k..]);
                let interpolant = VertexTuple::from_sorted_unchecked(entries);
                if !set.contains(&interpolant) {
                    return Some((p.clone(), q.clone(), interpolant));
                }
            }
        }
    }
    None
}

/// Whether every tuple of `x` has an interleaving witness tuple all of whose
/// internal `(d+1)`-subtuples already lie in `x`.
pub fn is_supporting(x: &[VertexTuple], m: u32, d: u32) -> Result<bool> {
    check_ambient(m, d)?;
    check_members(x, m, d)?;
    Ok(supporting_defect(x, m, d).is_none())
}

/// Whether `x` is closed under interpolation: whenever two members agree
/// outside an index window whose segments strictly interleave, every mixed
/// prefix/suffix tuple between them is also a member.
pub fn is_bridging(x: &[VertexTuple], m: u32, d: u32) -> Result<bool> {
    check_ambient(m, d)?;
    check_members(x, m, d)?;
    Ok(bridging_defect(x).is_none())
}

impl OddTriangulation {
    /// Validates that `internal_set` lies in the internal tuple set and is
    /// supporting and bridging; reports the failing property and a witness
    /// otherwise.
    pub fn new(m: u32, d: u32, internal_set: Vec<VertexTuple>) -> Result<Self> {
        check_ambient(m, d)?;
        let mut internal_set = internal_set;
        internal_set.sort();
        internal_set.dedup();
        check_members(&internal_set, m, d)?;
        if let Some(tuple) = supporting_defect(&internal_set, m, d) {
            return Err(Error::NotOddTriangulation {
                defect: OddDefect::NotSupporting { tuple },
            });
        }
        if let Some((a, b, missing)) = bridging_defect(&internal_set) {
            return Err(Error::NotOddTriangulation {
                defect: OddDefect::NotBridging { a, b, missing },
            });
        }
        Ok(OddTriangulation { m, d, internal_set })
    }

    pub(crate) fn from_parts_unchecked(m: u32, d: u32, internal_set: Vec<VertexTuple>) -> Self {
        debug_assert!(internal_set.windows(2).all(|w| w[0] < w[1]));
        OddTriangulation { m, d, internal_set }
    }

    /// The lower triangulation: every internal tuple is present.
    pub fn lower(m: u32, d: u32) -> Result<Self> {
        Self::new(m, d, internal_tuples_odd(m, d))
    }

    /// The upper triangulation: no internal tuples at all.
    pub fn upper(m: u32, d: u32) -> Result<Self> {
        Self::new(m, d, Vec::new())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn delta(&self) -> u32 {
        2 * self.d + 1
    }

    pub fn internal_set(&self) -> &[VertexTuple] {
        &self.internal_set
    }

    pub fn contains(&self, t: &VertexTuple) -> bool {
        self.internal_set.binary_search(t).is_ok()
    }

    /// All increasing bistellar flips: removals of a single tuple that leave
    /// the set supporting and bridging. Empty exactly on the upper
    /// triangulation.
    pub fn increasing_flips(&self) -> Vec<(VertexTuple, OddTriangulation)> {
        let mut out = Vec::new();
        for (i, a) in self.internal_set.iter().enumerate() {
            let mut rest = self.internal_set.clone();
            rest.remove(i);
            if supporting_defect(&rest, self.m, self.d).is_none()
                && bridging_defect(&rest).is_none()
            {
                out.push((
                    a.clone(),
                    OddTriangulation::from_parts_unchecked(self.m, self.d, rest),
                ));
            }
        }
        out
    }

    /// Second-order comparison: reverse inclusion of internal sets.
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
        Ok(other
            .internal_set
            .iter()
            .all(|t| self.internal_set.binary_search(t).is_ok()))
    }

    /// Reconstructs the `(d+1)`-simplices and the top `(2d+1)`-simplices.
    ///
    /// A `(d+2)`-tuple spans a `(d+1)`-simplex when each of its `(d+1)`-faces
    /// is either a member or not internal, and no member crosses it
    /// transversely; a `(2d+2)`-tuple spans a top cell when all its
    /// `(d+2)`-subtuples span `(d+1)`-simplices.
    pub fn reconstruct_complex(&self) -> (Vec<VertexTuple>, Vec<VertexTuple>) {
        let (m, d) = (self.m, self.d);
        let mid_size = (d + 2) as usize;
        let mut mids = Vec::new();
        'mid: for comb in (1..=m).combinations(mid_size) {
            let g = VertexTuple::from_sorted_unchecked(comb);
            for f in g.subtuples(mid_size - 1) {
                if f.is_internal_odd(m) && !self.contains(&f) {
                    continue 'mid;
                }
            }
            if self.internal_set.iter().any(|a| intertwines_off(a, &g)) {
                continue 'mid;
            }
            mids.push(g);
        }
        let mid_set: HashSet<&VertexTuple> = mids.iter().collect();
        let top_size = (2 * d + 2) as usize;
        let mut tops = Vec::new();
        'top: for comb in (1..=m).combinations(top_size) {
            let s = VertexTuple::from_sorted_unchecked(comb);
            for g in s.subtuples(mid_size) {
                if !mid_set.contains(&g) {
                    continue 'top;
                }
            }
            tops.push(s);
        }
        (mids, tops)
    }

    /// Canonical label, e.g. `24|25|35`; the upper triangulation prints `()`.
    pub fn canonical_label(&self) -> String {
        if self.internal_set.is_empty() {
            "()".to_string()
        } else {
            self.internal_set.iter().join("|")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "d": self.d,
            "kind": "odd",
            "internal": self.internal_set.iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::NotTriangulation {
            reason: format!("malformed JSON: {what}"),
        };
        if v.get("kind").and_then(|k| k.as_str()) != Some("odd") {
            return Err(bad("kind must be \"odd\""));
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
            .get("internal")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("internal"))?;
        let mut set = Vec::with_capacity(arr.len());
        for t in arr {
            let entries: Vec<u32> = t
                .as_array()
                .ok_or_else(|| bad("tuple"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as u32).ok_or_else(|| bad("entry")))
                .collect::<Result<_>>()?;
            set.push(VertexTuple::new(entries, m)?);
        }
        Self::new(m, d, set)
    }
}

/// Contraction of the first vertex onto the second: keeps the tuples with
/// first entry above 2 and relabels `v -> v - 1`, landing in the internal
/// tuple set of `C(m-1, 2d+1)`.
pub fn contract(x: &[VertexTuple], _m: u32, _d: u32) -> Vec<VertexTuple> {
    let mut out: Vec<VertexTuple> = x
        .iter()
        .filter(|t| t.first() != Some(2))
        .map(|t| VertexTuple::from_sorted_unchecked(t.entries().iter().map(|&v| v - 1).collect()))
        .collect();
    out.sort();
    out
}

/// Link at the first two vertices: strips the leading 2 from the tuples that
/// start with it. Labels are kept, so the output lives over `[3, m]` inside
/// the internal tuple set of the `(2d-1)`-dimensional polytope on those
/// vertices (relabel by `v -> v - 2` to move it to `C(m-2, 2d-1)`).
pub fn delete12(x: &[VertexTuple], _m: u32, d: u32) -> Vec<VertexTuple> {
    debug_assert!(d >= 1, "delete12 needs d >= 1");
    let mut out: Vec<VertexTuple> = x
        .iter()
        .filter(|t| t.first() == Some(2))
        .map(|t| VertexTuple::from_sorted_unchecked(t.entries()[1..].to_vec()))
        .collect();
    out.sort();
    out
}

/// Cone: adjoins `v` to every tuple, failing on a duplicate vertex.
pub fn star(v: u32, x: &[VertexTuple]) -> Result<Vec<VertexTuple>> {
    let mut out = Vec::with_capacity(x.len());
    for t in x {
        if t.contains(v) {
            return Err(Error::DuplicateVertex { v });
        }
        let mut entries = t.entries().to_vec();
        let pos = entries.partition_point(|&e| e < v);
        entries.insert(pos, v);
        out.push(VertexTuple::from_sorted_unchecked(entries));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::{lower_triangulation, upper_triangulation};

    fn vt(entries: &[u32]) -> VertexTuple {
        VertexTuple::new(entries.to_vec(), 64).unwrap()
    }

    fn vts(tuples: &[&[u32]]) -> Vec<VertexTuple> {
        tuples.iter().map(|t| vt(t)).collect()
    }

    #[test]
    fn supporting_examples() {
        assert!(is_supporting(&vts(&[&[2, 4], &[2, 5], &[3, 5]]), 6, 1).unwrap());
        assert!(!is_supporting(&vts(&[&[2, 5]]), 6, 1).unwrap());
        assert!(is_supporting(&[], 6, 1).unwrap());
        assert!(matches!(
            is_supporting(&vts(&[&[1, 4]]), 6, 1),
            Err(Error::NotOddTriangulation { .. })
        ));
    }

    #[test]
    fn bridging_examples() {
        assert!(!is_bridging(&vts(&[&[2, 4], &[3, 5]]), 6, 1).unwrap());
        assert!(is_bridging(&vts(&[&[2, 4], &[2, 5], &[3, 5]]), 6, 1).unwrap());
        assert!(is_bridging(&vts(&[&[2, 4]]), 6, 1).unwrap());
        assert!(is_bridging(&[], 6, 1).unwrap());
    }

    #[test]
    fn validation_of_all_subsets_for_c63() {
        // Exactly six of the eight subsets of {24, 25, 35} describe
        // triangulations.
        let universe = internal_tuples_odd(6, 1);
        assert_eq!(universe.len(), 3);
        let mut accepted = Vec::new();
        for bits in 0..8u32 {
            let x: Vec<VertexTuple> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect();
            if let Ok(t) = OddTriangulation::new(6, 1, x) {
                accepted.push(t.internal_set().to_vec());
            }
        }
        let want: Vec<Vec<VertexTuple>> = vec![
            vts(&[]),
            vts(&[&[2, 4]]),
            vts(&[&[2, 5], &[3, 5]]),
            vts(&[&[3, 5]]),
            vts(&[&[2, 4], &[2, 5]]),
            vts(&[&[2, 4], &[2, 5], &[3, 5]]),
        ];
        assert_eq!(accepted.len(), 6);
        for w in &want {
            assert!(accepted.contains(w), "missing {w:?}");
        }
        // The two rejects report the right defect.
        assert!(matches!(
            OddTriangulation::new(6, 1, vts(&[&[2, 5]])),
            Err(Error::NotOddTriangulation {
                defect: OddDefect::NotSupporting { .. }
            })
        ));
        match OddTriangulation::new(6, 1, vts(&[&[2, 4], &[3, 5]])) {
            Err(Error::NotOddTriangulation {
                defect: OddDefect::NotBridging { missing, .. },
            }) => assert_eq!(missing, vt(&[2, 5])),
            other => panic!("expected bridging defect, got {other:?}"),
        }
    }

    #[test]
    fn lower_is_full_and_upper_is_empty() {
        for (m, d) in [(6, 1), (7, 1), (8, 1), (9, 1), (8, 2)] {
            let lower = OddTriangulation::lower(m, d).unwrap();
            assert_eq!(lower.internal_set(), internal_tuples_odd(m, d));
            assert!(OddTriangulation::upper(m, d).is_ok());
        }
    }

    #[test]
    fn flip_examples() {
        let t = OddTriangulation::new(6, 1, vts(&[&[2, 4], &[2, 5], &[3, 5]])).unwrap();
        let removed: Vec<VertexTuple> = t.increasing_flips().into_iter().map(|(a, _)| a).collect();
        assert_eq!(removed, vts(&[&[2, 4], &[3, 5]]));

        let t1 = OddTriangulation::new(6, 1, vts(&[&[2, 4], &[2, 5]])).unwrap();
        let removed: Vec<VertexTuple> = t1.increasing_flips().into_iter().map(|(a, _)| a).collect();
        assert_eq!(removed, vts(&[&[2, 5]]));

        assert!(OddTriangulation::upper(6, 1)
            .unwrap()
            .increasing_flips()
            .is_empty());
    }

    #[test]
    fn leq2_examples() {
        let tl = OddTriangulation::new(6, 1, vts(&[&[2, 4], &[2, 5], &[3, 5]])).unwrap();
        let t1 = OddTriangulation::new(6, 1, vts(&[&[2, 4], &[2, 5]])).unwrap();
        let t2 = OddTriangulation::new(6, 1, vts(&[&[2, 4]])).unwrap();
        let tu = OddTriangulation::upper(6, 1).unwrap();
        assert!(tl.leq2(&t1).unwrap());
        assert!(t1.leq2(&t2).unwrap());
        assert!(t2.leq2(&tu).unwrap());
        assert!(tl.leq2(&tl).unwrap());
        let t2p = OddTriangulation::new(6, 1, vts(&[&[3, 5]])).unwrap();
        assert!(!t1.leq2(&t2p).unwrap());
        assert!(!t2p.leq2(&t1).unwrap());
    }

    #[test]
    fn reconstruction_matches_boundary_triangulations() {
        let lower = OddTriangulation::lower(6, 1).unwrap();
        let (_, mut tops) = lower.reconstruct_complex();
        tops.sort();
        let mut want = lower_triangulation(6, 3).unwrap();
        want.sort();
        assert_eq!(tops, want);

        let upper = OddTriangulation::upper(6, 1).unwrap();
        let (_, mut tops) = upper.reconstruct_complex();
        tops.sort();
        let mut want = upper_triangulation(6, 3).unwrap();
        want.sort();
        assert_eq!(tops, want);

        // The chain with two internal 1-simplices has five top cells.
        let t1 = OddTriangulation::new(6, 1, vts(&[&[2, 4], &[2, 5]])).unwrap();
        assert_eq!(t1.reconstruct_complex().1.len(), 5);
    }

    #[test]
    fn face_counting_in_reconstruction() {
        // Internal d-simplices are faces of at least d+2 top cells, checked
        // over every triangulation of C(7,3) and the bottoms elsewhere.
        let universe = internal_tuples_odd(7, 1);
        for bits in 0u64..(1 << universe.len()) {
            let x: Vec<VertexTuple> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect();
            let Ok(t) = OddTriangulation::new(7, 1, x) else {
                continue;
            };
            let (_, tops) = t.reconstruct_complex();
            for a in t.internal_set() {
                let count = tops.iter().filter(|s| a.is_subset_of(s)).count();
                assert!(count >= 3, "tuple={a} in {}", t.canonical_label());
            }
        }
        for (m, d) in [(6, 1), (8, 2)] {
            let t = OddTriangulation::lower(m, d).unwrap();
            let (_, tops) = t.reconstruct_complex();
            for a in t.internal_set() {
                let count = tops.iter().filter(|s| a.is_subset_of(s)).count();
                assert!(count >= (d + 2) as usize, "m={m} d={d} tuple={a}");
            }
        }
    }

    #[test]
    fn contract_delete_star_examples() {
        let x = vts(&[&[2, 4], &[2, 5], &[3, 5]]);
        // Only 35 survives the first-entry filter; relabeled it becomes 24.
        assert_eq!(contract(&x, 6, 1), vts(&[&[2, 4]]));
        assert_eq!(delete12(&vts(&[&[2, 4, 6]]), 8, 2), vts(&[&[4, 6]]));
        assert_eq!(star(1, &vts(&[&[3, 5]])).unwrap(), vts(&[&[1, 3, 5]]));
        assert!(matches!(
            star(3, &vts(&[&[3, 5]])),
            Err(Error::DuplicateVertex { v: 3 })
        ));
    }

    #[test]
    fn contract_and_delete_preserve_validity() {
        for (m, d) in [(6u32, 1u32), (7, 1), (8, 1), (9, 1), (8, 2)] {
            let universe = internal_tuples_odd(m, d);
            assert!(universe.len() <= 20);
            for bits in 0u64..(1 << universe.len()) {
                let x: Vec<VertexTuple> = universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, t)| t.clone())
                    .collect();
                if OddTriangulation::new(m, d, x.clone()).is_err() {
                    continue;
                }
                let contracted = contract(&x, m, d);
                assert!(
                    OddTriangulation::new(m - 1, d, contracted).is_ok(),
                    "contract of {x:?} at ({m},{d})"
                );
                if d >= 1 {
                    let deleted: Vec<VertexTuple> = delete12(&x, m, d)
                        .iter()
                        .map(|t| {
                            VertexTuple::from_sorted_unchecked(
                                t.entries().iter().map(|&v| v - 2).collect(),
                            )
                        })
                        .collect();
                    assert!(
                        OddTriangulation::new(m - 2, d - 1, deleted).is_ok(),
                        "delete12 of {x:?} at ({m},{d})"
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_zero_accepts_arbitrary_subsets() {
        // In C(m, 1) the triangulations are the subsets of interior vertices.
        let universe = internal_tuples_odd(5, 0);
        assert_eq!(universe, vts(&[&[2], &[3], &[4]]));
        for bits in 0..8u32 {
            let x: Vec<VertexTuple> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect();
            assert!(OddTriangulation::new(5, 0, x).is_ok());
        }
    }

    #[test]
    fn json_round_trip() {
        let t = OddTriangulation::new(6, 1, vts(&[&[2, 4], &[2, 5]])).unwrap();
        let v = t.to_json();
        assert_eq!(v["kind"], "odd");
        assert_eq!(OddTriangulation::from_json(&v).unwrap(), t);
    }
}
