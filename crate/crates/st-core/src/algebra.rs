//! The combinatorial dictionary to the higher Auslander algebras of type A:
//! quiver presentations, module labels with the intertwining criterion for
//! `Ext`-nonvanishing, maximal chains of tilting modules, and maximal green
//! sequences. Everything is tuple combinatorics; no field or matrix appears.

use crate::error::{Error, Result};
use crate::even::EvenTriangulation;
use crate::odd::OddTriangulation;
use crate::poset::{self, EnumerateOptions};
use crate::tuple::{intertwines_eq, separated_tuples, VertexTuple};
use std::collections::HashMap;

/// The quiver of the higher Auslander algebra: vertices are the separated
/// `d`-tuples in `[n+2d-2]`, arrows increment one entry, and compositions of
/// two arrows commute where the intermediate detour vertex exists and vanish
/// where it does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub n: u32,
    pub d: u32,
    pub vertices: Vec<VertexTuple>,
    /// Arrow `(s, t)`: vertex `s` maps to vertex `t = s + 1_i`.
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<QuiverRelation>,
}

/// A length-two path identity. `second = Some(path)` identifies the two
/// compositions; `second = None` declares the first path zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRelation {
    pub first: [usize; 3],
    pub second: Option<[usize; 3]>,
}

fn bumped(a: &VertexTuple, positions: &[usize]) -> VertexTuple {
    let mut entries = a.entries().to_vec();
    for &i in positions {
        entries[i] += 1;
    }
    VertexTuple::from_sorted_unchecked(entries)
}

/// Builds the quiver presentation of the higher Auslander algebra with
/// parameters `(n, d)`, in deterministic order.
pub fn build_quiver(n: u32, d: u32) -> Result<QuiverPresentation> {
    if n < 1 || d < 1 {
        return Err(Error::Incompatible(format!(
            "quiver needs n >= 1 and d >= 1, got ({n},{d})"
        )));
    }
    let m = n + 2 * d - 2;
    let vertices = separated_tuples(m, d - 1);
    let index: HashMap<&VertexTuple, usize> =
        vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for (s, a) in vertices.iter().enumerate() {
        for i in 0..d as usize {
            let via_i = bumped(a, &[i]);
            let Some(&vi) = index.get(&via_i) else {
                continue;
            };
            arrows.push((s, vi));
            for j in 0..d as usize {
                if i == j {
                    continue;
                }
                let end = bumped(a, &[i, j]);
                let Some(&e) = index.get(&end) else { continue };
                match index.get(&bumped(a, &[j])) {
                    Some(&vj) => {
                        if i < j {
                            relations.push(QuiverRelation {
                                first: [s, vi, e],
                                second: Some([s, vj, e]),
                            });
                        }
                    }
                    None => relations.push(QuiverRelation {
                        first: [s, vi, e],
                        second: None,
                    }),
                }
            }
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    relations.sort_by_key(|r| (r.first, r.second));
    Ok(QuiverPresentation {
        n,
        d,
        vertices,
        arrows,
        relations,
    })
}

impl QuiverPresentation {
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "digraph quiver {{");
        let _ = writeln!(s, "  rankdir=LR;");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{v}\"];");
        }
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "  {a} -> {b};");
        }
        for r in &self.relations {
            if r.second.is_none() {
                let _ = writeln!(
                    s,
                    "  {} -> {} [style=dashed, arrowhead=none];",
                    r.first[0], r.first[2]
                );
            }
        }
        let _ = writeln!(s, "}}");
        s
    }
}

/// An indecomposable summand of the canonical cluster-tilting module,
/// labelled by a separated `(d+1)`-tuple in `[n+2d]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleLabel {
    pub tuple: VertexTuple,
    pub n: u32,
    pub d: u32,
}

impl ModuleLabel {
    pub fn new(tuple: VertexTuple, n: u32, d: u32) -> Result<Self> {
        let m = n + 2 * d;
        if tuple.len() != (d + 1) as usize || tuple.last().unwrap_or(0) > m || !tuple.is_separated()
        {
            return Err(Error::Incompatible(format!(
                "{tuple} is not a separated {}-tuple in [{m}]",
                d + 1
            )));
        }
        Ok(ModuleLabel { tuple, n, d })
    }

    pub fn is_projective(&self) -> bool {
        self.tuple.first() == Some(1)
    }

    pub fn is_injective(&self) -> bool {
        self.tuple.last() == Some(self.n + 2 * self.d)
    }
}

/// All module labels for the algebra with parameters `(n, d)`.
pub fn module_labels(n: u32, d: u32) -> Vec<ModuleLabel> {
    separated_tuples(n + 2 * d, d)
        .into_iter()
        .map(|tuple| ModuleLabel { tuple, n, d })
        .collect()
}

/// `Ext^d(M_B, M_A)` is nonzero exactly when `A` intertwines `B`.
pub fn ext_nonzero(a: &ModuleLabel, b: &ModuleLabel) -> Result<bool> {
    if a.n != b.n || a.d != b.d {
        return Err(Error::Incompatible(format!(
            "labels for different algebras: ({},{}) vs ({},{})",
            a.n, a.d, b.n, b.d
        )));
    }
    Ok(intertwines_eq(&a.tuple, &b.tuple))
}

/// Left mutations of a tilting module, which are exactly the increasing
/// bistellar flips of the corresponding triangulation.
pub fn left_mutations(t: &EvenTriangulation) -> Vec<EvenTriangulation> {
    t.increasing_flips().into_iter().map(|f| f.result).collect()
}

/// Which algebraic frame a chain is read in. The same `C(m, 2d)` flip chain
/// is a chain of tilting modules for parameter `n = m - 2d` or a chain of
/// cluster-tilting objects for parameter `n = m - 2d - 1`; in the cluster
/// frame only cyclically separated tuples name summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Tilting,
    Cluster,
}

impl Frame {
    pub fn as_str(self) -> &'static str {
        match self {
            Frame::Tilting => "tilting",
            Frame::Cluster => "cluster",
        }
    }

    fn ambient_m(self, n: u32, d: u32) -> u32 {
        match self {
            Frame::Tilting => n + 2 * d,
            Frame::Cluster => n + 2 * d + 1,
        }
    }
}

/// A maximal chain from the projectives (lower triangulation) to the
/// injectives or shifted projectives (upper triangulation), each consecutive
/// pair a left mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltingChain {
    n: u32,
    d: u32,
    frame: Frame,
    steps: Vec<EvenTriangulation>,
}

impl TiltingChain {
    /// Validates a maximal chain: first step the lower triangulation, last
    /// the upper, and every consecutive pair an exchange of one tuple for one
    /// it intertwines.
    pub fn from_steps(n: u32, d: u32, frame: Frame, steps: Vec<EvenTriangulation>) -> Result<Self> {
        let m = frame.ambient_m(n, d);
        if steps.is_empty() {
            return Err(Error::Incompatible("empty chain".into()));
        }
        for s in &steps {
            if s.m() != m || s.d() != d {
                return Err(Error::Incompatible(format!(
                    "chain step over C({},{}) does not match C({m},{})",
                    s.m(),
                    s.delta(),
                    2 * d
                )));
            }
        }
        if steps.first() != Some(&EvenTriangulation::lower(m, d)?) {
            return Err(Error::Incompatible(
                "chain does not start at the projectives".into(),
            ));
        }
        if steps.last() != Some(&EvenTriangulation::upper(m, d)?) {
            return Err(Error::Incompatible(
                "chain does not end at the injectives".into(),
            ));
        }
        for w in steps.windows(2) {
            let removed: Vec<&VertexTuple> =
                w[0].e_set().iter().filter(|t| !w[1].contains(t)).collect();
            let added: Vec<&VertexTuple> =
                w[1].e_set().iter().filter(|t| !w[0].contains(t)).collect();
            if removed.len() != 1 || added.len() != 1 || !intertwines_eq(removed[0], added[0]) {
                return Err(Error::Incompatible(format!(
                    "steps {} and {} are not a left mutation",
                    w[0].canonical_label(),
                    w[1].canonical_label()
                )));
            }
        }
        Ok(TiltingChain { n, d, frame, steps })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn ambient_m(&self) -> u32 {
        self.frame.ambient_m(self.n, self.d)
    }

    pub fn steps(&self) -> &[EvenTriangulation] {
        &self.steps
    }

    pub fn mutation_count(&self) -> usize {
        self.steps.len() - 1
    }

    /// Whether a tuple names a summand in this chain's frame.
    fn in_frame(&self, t: &VertexTuple) -> bool {
        match self.frame {
            Frame::Tilting => true,
            Frame::Cluster => t.is_cyclically_separated(self.ambient_m()),
        }
    }

    /// The steps with only the tuples naming summands in this frame.
    pub fn steps_in_frame(&self) -> Vec<Vec<VertexTuple>> {
        self.steps
            .iter()
            .map(|s| {
                s.e_set()
                    .iter()
                    .filter(|t| self.in_frame(t))
                    .cloned()
                    .collect()
            })
            .collect()
    }

    /// The summand set of the whole chain, sorted.
    pub fn sigma(&self) -> Vec<VertexTuple> {
        let mut out: Vec<VertexTuple> = self
            .steps
            .iter()
            .flat_map(|s| s.e_set().iter())
            .filter(|t| self.in_frame(t))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Rereads a cluster chain as a tilting chain for the next parameter.
    pub fn as_tilting_frame(&self) -> TiltingChain {
        match self.frame {
            Frame::Tilting => self.clone(),
            Frame::Cluster => TiltingChain {
                n: self.n + 1,
                d: self.d,
                frame: Frame::Tilting,
                steps: self.steps.clone(),
            },
        }
    }

    /// Rereads a tilting chain as a cluster chain for the previous parameter.
    pub fn as_cluster_frame(&self) -> Result<TiltingChain> {
        match self.frame {
            Frame::Cluster => Ok(self.clone()),
            Frame::Tilting => {
                if self.n < 2 {
                    return Err(Error::Incompatible(
                        "cluster frame needs n >= 1, so the tilting parameter must be >= 2".into(),
                    ));
                }
                Ok(TiltingChain {
                    n: self.n - 1,
                    d: self.d,
                    frame: Frame::Cluster,
                    steps: self.steps.clone(),
                })
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "frame": self.frame.as_str(),
            "steps": self
                .steps_in_frame()
                .iter()
                .map(|s| s.iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "sigma": self.sigma().iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// The representative maximal chain of an odd-dimensional triangulation.
///
/// The top cells are ordered by the precedence relation in which one cell
/// comes before another when their shared face lies in the upper facets of
/// the first and the lower facets of the second; on a simplex, a facet is
/// upper exactly when the omitted vertex sits at an even position. Walking
/// the lexicographically smallest linear extension from the lower
/// triangulation and exchanging the even-position subtuple of each cell for
/// its odd-position subtuple yields the chain.
pub fn chain_from_odd(t: &OddTriangulation, frame: Frame) -> Result<TiltingChain> {
    let (m, d) = (t.m(), t.d());
    let n = match frame {
        Frame::Tilting => m - 2 * d,
        Frame::Cluster => {
            if m < 2 * d + 2 {
                return Err(Error::Incompatible("ambient polytope too small".into()));
            }
            m - 2 * d - 1
        }
    };
    if n < 1 {
        return Err(Error::Incompatible(format!(
            "no algebra parameter for C({m},{}) in the {} frame",
            2 * d + 1,
            frame.as_str()
        )));
    }
    let (_, cells) = t.reconstruct_complex();
    let k = cells.len();

    // Precedence digraph on top cells.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let common = cells[i].mask() & cells[j].mask();
            if common.count_ones() as usize != cells[i].len() - 1 {
                continue;
            }
            let xi = cells[i]
                .entries()
                .iter()
                .position(|&v| common & (1u64 << (v - 1)) == 0);
            let yj = cells[j]
                .entries()
                .iter()
                .position(|&v| common & (1u64 << (v - 1)) == 0);
            let (Some(xi), Some(yj)) = (xi, yj) else {
                continue;
            };
            // Shared face: upper facet of cell i, lower facet of cell j.
            if xi % 2 == 0 && yj % 2 == 1 {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
    }

    // Lexicographically smallest linear extension; cells are already sorted.
    let mut ready: std::collections::BTreeSet<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() != k {
        return Err(Error::Internal(
            "cell precedence relation has a cycle".into(),
        ));
    }

    let mut steps = vec![EvenTriangulation::lower(m, d)?];
    for &ci in &order {
        let s = cells[ci].entries();
        let removed = VertexTuple::from_sorted_unchecked(s.iter().copied().step_by(2).collect());
        let added =
            VertexTuple::from_sorted_unchecked(s.iter().copied().skip(1).step_by(2).collect());
        let current = steps.last().unwrap();
        if !current.contains(&removed) || current.contains(&added) {
            return Err(Error::Internal(format!(
                "cell {} is not an exchange at step {}",
                cells[ci],
                steps.len() - 1
            )));
        }
        debug_assert!(intertwines_eq(&removed, &added));
        let mut e_set: Vec<VertexTuple> = current
            .e_set()
            .iter()
            .filter(|&t| t != &removed)
            .cloned()
            .collect();
        let pos = e_set.binary_search(&added).unwrap_err();
        e_set.insert(pos, added);
        steps.push(EvenTriangulation::new(m, d, e_set)?);
    }
    if steps.last() != Some(&EvenTriangulation::upper(m, d)?) {
        return Err(Error::Internal("chain did not reach the injectives".into()));
    }
    TiltingChain::from_steps(n, d, frame, steps)
}

/// Enumerates the triangulations of `C(n+2d+1, 2d+1)` together with one
/// maximal green sequence per equivalence class, in the cluster frame.
pub fn green_sequences(
    n: u32,
    d: u32,
    opts: EnumerateOptions,
) -> Result<Vec<(OddTriangulation, TiltingChain)>> {
    if n < 1 || d < 1 {
        return Err(Error::Incompatible(format!(
            "green sequences need n >= 1 and d >= 1, got ({n},{d})"
        )));
    }
    let m = n + 2 * d + 1;
    let p = poset::enumerate(m, 2 * d + 1, opts)?;
    p.elements()
        .iter()
        .map(|t| {
            let odd = t.as_odd().expect("odd poset").clone();
            let chain = chain_from_odd(&odd, Frame::Cluster)?;
            Ok((odd, chain))
        })
        .collect()
}

/// Whether `c2` is an increasing elementary polygonal deformation of `c1`:
/// the chains share a prefix and a suffix, and the differing middles form an
/// oriented polygon with `d+2` covers on the `c1` side and `d+1` on the `c2`
/// side, meeting only at the shared endpoints.
pub fn polygonal_deformation(c1: &TiltingChain, c2: &TiltingChain) -> Result<bool> {
    if c1.n != c2.n || c1.d != c2.d || c1.frame != c2.frame {
        return Err(Error::Incompatible(
            "chains for different algebras or frames".into(),
        ));
    }
    let d = c1.d as usize;
    let (s1, s2) = (&c1.steps, &c2.steps);
    let (len1, len2) = (s1.len(), s2.len());
    let mut cp = 0;
    while cp < len1 && cp < len2 && s1[cp] == s2[cp] {
        cp += 1;
    }
    if cp == 0 {
        return Ok(false);
    }
    let mut cs = 0;
    while cs < len1 - cp && cs < len2 - cp && s1[len1 - 1 - cs] == s2[len2 - 1 - cs] {
        cs += 1;
    }
    if cs == 0 {
        return Ok(false);
    }
    // Covers along each middle, between shared node cp-1 and shared node len-cs.
    let covers1 = len1 - cp - cs + 1;
    let covers2 = len2 - cp - cs + 1;
    if covers1 != d + 2 || covers2 != d + 1 {
        return Ok(false);
    }
    let interior1 = &s1[cp..len1 - cs];
    let interior2 = &s2[cp..len2 - cs];
    Ok(interior1.iter().all(|x| !interior2.contains(x)))
}
