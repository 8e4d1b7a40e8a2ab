//! Tuple arithmetic shared by everything else: sortedness, intertwining,
//! separation, facet classification via Gale's Evenness Criterion, circuits,
//! and the canonical lower/upper triangulations.
//!
//! Vertices are 1-based labels in `[m]` with `m <= 64`, so every tuple also
//! carries an `m`-bit mask for fast subset and intersection tests.

use crate::error::{Error, Result};
use itertools::Itertools;

pub const MAX_VERTICES: u32 = 64;

/// A sorted tuple of distinct vertex labels: the universal simplex encoding.
/// A `(k+1)`-tuple stands for a `k`-dimensional simplex on those vertices.
///
/// Equality, ordering and hashing are on the entry sequence alone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexTuple {
    entries: Vec<u32>,
    mask: u64,
}

impl VertexTuple {
    /// Builds a tuple, checking that entries are strictly increasing and lie
    /// in `1..=m`.
    pub fn new(entries: Vec<u32>, m: u32) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m });
        }
        for w in entries.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotStrictlyIncreasing { entries });
            }
        }
        if let (Some(&first), Some(&last)) = (entries.first(), entries.last()) {
            if first < 1 || last > m {
                let v = if first < 1 { first } else { last };
                return Err(Error::VertexOutOfRange { v, m });
            }
        }
        Ok(Self::from_sorted_unchecked(entries))
    }

    /// Internal fast path; `entries` must be strictly increasing in `1..=64`.
    pub(crate) fn from_sorted_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(entries.first().is_none_or(|&v| v >= 1));
        debug_assert!(entries.last().is_none_or(|&v| v <= 64));
        let mask = entries.iter().fold(0u64, |acc, &v| acc | 1u64 << (v - 1));
        Self { entries, mask }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.entries.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.entries.last().copied()
    }

    /// Bit `v-1` is set for each entry `v`.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, v: u32) -> bool {
        (1..=64).contains(&v) && self.mask & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &VertexTuple) -> bool {
        self.mask & !other.mask == 0
    }

    /// Separated: consecutive entries differ by at least 2.
    pub fn is_separated(&self) -> bool {
        self.entries.windows(2).all(|w| w[1] >= w[0] + 2)
    }

    /// Separated, and also separated across the cyclic wrap-around in `[m]`.
    pub fn is_cyclically_separated(&self, m: u32) -> bool {
        self.is_separated()
            && match (self.first(), self.last()) {
                (Some(first), Some(last)) => last + 2 <= first + m,
                _ => true,
            }
    }

    /// Separated with neither endpoint of `[m]` among the entries; these are
    /// exactly the internal `d`-simplices of the odd-dimensional polytope.
    pub fn is_internal_odd(&self, m: u32) -> bool {
        self.is_separated()
            && match (self.first(), self.last()) {
                (Some(first), Some(last)) => first != 1 && last != m,
                _ => true,
            }
    }

    pub fn classify(&self, m: u32) -> TupleClass {
        TupleClass {
            separated: self.is_separated(),
            cyclically_separated: self.is_cyclically_separated(m),
            internal_odd: self.is_internal_odd(m),
        }
    }

    /// Applies the vertex reversal `v -> m + 1 - v` and re-sorts.
    pub fn reverse(&self, m: u32) -> VertexTuple {
        let entries = self.entries.iter().rev().map(|&v| m + 1 - v).collect();
        VertexTuple::from_sorted_unchecked(entries)
    }

    /// All `k`-element subtuples, in lexicographic order.
    pub fn subtuples(&self, k: usize) -> Vec<VertexTuple> {
        self.entries
            .iter()
            .copied()
            .combinations(k)
            .map(VertexTuple::from_sorted_unchecked)
            .collect()
    }
}

impl std::fmt::Display for VertexTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.last().is_none_or(|v| v <= 9) {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.entries.iter().join(","))
        }
    }
}

/// Membership of a tuple in the three separation classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleClass {
    pub separated: bool,
    pub cyclically_separated: bool,
    pub internal_odd: bool,
}

/// Facet classification of a vertex tuple under Gale's Evenness Criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetKind {
    Lower,
    Upper,
    NotFacet,
}

/// A circuit of `C(m, delta)`: a minimal intertwining pair of simplices whose
/// convex hulls cross. `positive` has `floor(delta/2) + 1` entries and
/// intertwines `negative`, which has `ceil(delta/2) + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    pub positive: VertexTuple,
    pub negative: VertexTuple,
    pub delta: u32,
}

/// Whether `a` intertwines `b`.
///
/// For equal sizes this is the strict interleaving
/// `a0 < b0 < a1 < b1 < ... < ad < bd`; when `a` is one shorter than `b` it is
/// `b0 < a0 < b1 < ... < a_{d-1} < b_d`. Any other size combination is an
/// arity error. The relation is antisymmetric, not symmetric.
pub fn intertwines(a: &VertexTuple, b: &VertexTuple) -> Result<bool> {
    if a.len() == b.len() {
        Ok(intertwines_eq(a, b))
    } else if a.len() + 1 == b.len() {
        Ok(intertwines_off(a, b))
    } else {
        Err(Error::InvalidArity {
            expected: "|A| = |B| or |A| = |B| - 1".into(),
            got: format!("|A| = {}, |B| = {}", a.len(), b.len()),
        })
    }
}

/// Equal-size interleaving `a0 < b0 < a1 < ... < ad < bd`; sizes must match.
pub(crate) fn intertwines_eq(a: &VertexTuple, b: &VertexTuple) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let (xs, ys) = (a.entries(), b.entries());
    for i in 0..xs.len() {
        if xs[i] >= ys[i] {
            return false;
        }
        if i + 1 < xs.len() && ys[i] >= xs[i + 1] {
            return false;
        }
    }
    !xs.is_empty()
}

/// Offset interleaving `b0 < a0 < b1 < ... < a_{d-1} < b_d`; `|a| + 1 = |b|`.
pub(crate) fn intertwines_off(a: &VertexTuple, b: &VertexTuple) -> bool {
    debug_assert_eq!(a.len() + 1, b.len());
    let (xs, ys) = (a.entries(), b.entries());
    for i in 0..xs.len() {
        if ys[i] >= xs[i] || xs[i] >= ys[i + 1] {
            return false;
        }
    }
    true
}

/// Classifies a `delta`-tuple `f` as a lower facet, upper facet, or non-facet
/// of `C(m, delta)`: `f` is a lower facet exactly when every vertex outside it
/// has an even number of entries of `f` above it, and an upper facet when
/// every such count is odd.
pub fn facet_kind(f: &VertexTuple, m: u32, delta: u32) -> Result<FacetKind> {
    if f.len() != delta as usize {
        return Err(Error::InvalidArity {
            expected: format!("|F| = delta = {delta}"),
            got: format!("|F| = {}", f.len()),
        });
    }
    if m > MAX_VERTICES {
        return Err(Error::TooManyVertices { m });
    }
    if let Some(last) = f.last() {
        if last > m {
            return Err(Error::VertexOutOfRange { v: last, m });
        }
    }
    let mut all_even = true;
    let mut all_odd = true;
    for v in 1..=m {
        if f.contains(v) {
            continue;
        }
        let above = f.entries().iter().filter(|&&x| x > v).count();
        if above % 2 == 0 {
            all_odd = false;
        } else {
            all_even = false;
        }
        if !all_even && !all_odd {
            return Ok(FacetKind::NotFacet);
        }
    }
    if all_even {
        Ok(FacetKind::Lower)
    } else {
        Ok(FacetKind::Upper)
    }
}

fn boundary_triangulation(m: u32, delta: u32, kind: FacetKind) -> Result<Vec<VertexTuple>> {
    if m <= delta {
        return Err(Error::DegeneratePolytope { m, delta });
    }
    if m > MAX_VERTICES {
        return Err(Error::TooManyVertices { m });
    }
    if m == delta + 1 {
        // A simplex triangulates itself.
        return Ok(vec![VertexTuple::from_sorted_unchecked((1..=m).collect())]);
    }
    let k = (delta + 1) as usize;
    let mut out = Vec::new();
    for comb in (1..=m).combinations(k) {
        let f = VertexTuple::from_sorted_unchecked(comb);
        if facet_kind(&f, m, delta + 1)? == kind {
            out.push(f);
        }
    }
    Ok(out)
}

/// The cells of the lower triangulation of `C(m, delta)`: the `(delta+1)`-sets
/// spanning lower facets of `C(m, delta+1)`.
pub fn lower_triangulation(m: u32, delta: u32) -> Result<Vec<VertexTuple>> {
    boundary_triangulation(m, delta, FacetKind::Lower)
}

/// The cells of the upper triangulation of `C(m, delta)`.
pub fn upper_triangulation(m: u32, delta: u32) -> Result<Vec<VertexTuple>> {
    boundary_triangulation(m, delta, FacetKind::Upper)
}

/// All circuits of `C(m, delta)`, lexicographically sorted, one orientation
/// per pair. Every `(delta+2)`-subset of `[m]` carries exactly one circuit:
/// its alternating positions split it into the two intertwining halves.
pub fn circuits(m: u32, delta: u32) -> Result<Vec<Circuit>> {
    if m > MAX_VERTICES {
        return Err(Error::TooManyVertices { m });
    }
    if m < delta + 2 {
        return Ok(Vec::new());
    }
    let k = (delta + 2) as usize;
    let mut out = Vec::new();
    for comb in (1..=m).combinations(k) {
        let evens: Vec<u32> = comb.iter().copied().step_by(2).collect();
        let odds: Vec<u32> = comb.iter().copied().skip(1).step_by(2).collect();
        let (positive, negative) = if delta.is_multiple_of(2) {
            // a0 < b0 < a1 < ... : positions alternate starting with `positive`.
            (evens, odds)
        } else {
            // b0 < a0 < b1 < ... : `negative` brackets `positive`.
            (odds, evens)
        };
        out.push(Circuit {
            positive: VertexTuple::from_sorted_unchecked(positive),
            negative: VertexTuple::from_sorted_unchecked(negative),
            delta,
        });
    }
    out.sort();
    Ok(out)
}

fn gap_tuples(m: u32, size: usize, min_first: u32, max_last_slack: u32) -> Vec<VertexTuple> {
    // Separated tuples in lex order with first >= min_first and
    // last <= m - max_last_slack.
    let mut out = Vec::new();
    if size == 0 {
        out.push(VertexTuple::from_sorted_unchecked(Vec::new()));
        return out;
    }
    if m > MAX_VERTICES || m < max_last_slack {
        return out;
    }
    let max_last = m - max_last_slack;
    let mut stack: Vec<u32> = Vec::with_capacity(size);
    fn rec(
        stack: &mut Vec<u32>,
        size: usize,
        min_first: u32,
        max_last: u32,
        out: &mut Vec<VertexTuple>,
    ) {
        if stack.len() == size {
            out.push(VertexTuple::from_sorted_unchecked(stack.clone()));
            return;
        }
        let lo = match stack.last() {
            Some(&prev) => prev + 2,
            None => min_first,
        };
        // Leave room: the remaining entries each need a gap of 2.
        let remaining = (size - stack.len() - 1) as u32;
        if max_last < 2 * remaining {
            return;
        }
        let hi = max_last - 2 * remaining;
        for v in lo..=hi {
            stack.push(v);
            rec(stack, size, min_first, max_last, out);
            stack.pop();
        }
    }
    rec(&mut stack, size, min_first, max_last, &mut out);
    out
}

/// All separated `(d+1)`-tuples in `[m]`, in lexicographic order.
pub fn separated_tuples(m: u32, d: u32) -> Vec<VertexTuple> {
    gap_tuples(m, (d + 1) as usize, 1, 0)
}

/// The separated `(d+1)`-tuples encoding internal `d`-simplices of
/// `C(m, 2d)`: separated also across the cyclic wrap-around.
pub fn internal_tuples_even(m: u32, d: u32) -> Vec<VertexTuple> {
    separated_tuples(m, d)
        .into_iter()
        .filter(|t| t.is_cyclically_separated(m))
        .collect()
}

/// The separated `(d+1)`-tuples encoding internal `d`-simplices of
/// `C(m, 2d+1)`: separated and avoiding both endpoints of `[m]`.
pub fn internal_tuples_odd(m: u32, d: u32) -> Vec<VertexTuple> {
    if m < 2 {
        return Vec::new();
    }
    gap_tuples(m, (d + 1) as usize, 2, 1)
}
