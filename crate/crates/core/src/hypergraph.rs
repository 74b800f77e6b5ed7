//! Uniform hypergraphs on vertex sets `{0..n-1}` with bit-set edges.
//!
//! Everything downstream (solvers, criticality checks, the extremal search)
//! operates on these values. Vertices live in a fixed window of 128 labels so
//! that a vertex set is a single `u128` and the solver inner loops stay
//! branch-free.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Hard cap on the number of vertices. Desk-scale targets stay below 20; the
/// cap exists so every vertex set fits in one `u128`.
pub const MAX_VERTICES: u32 = 128;

/// Cap on edge counts produced by combinatorial expansion (complement,
/// clique-family generation). Keeps `C(n,r)` blowups from exhausting memory.
pub const MAX_GENERATED_EDGES: u64 = 1 << 24;

pub(crate) type Mask = u128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("uniformity r={0} is too small (need r >= 2)")]
    UniformityTooSmall(u32),
    #[error("vertex count n={0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(u32),
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("edge {{{}}} has {got} vertices, expected r={expected}", fmt_vertices(.vertices))]
    WrongEdgeSize {
        vertices: Vec<u32>,
        expected: u32,
        got: u32,
    },
    #[error("duplicate edge {{{}}}", fmt_vertices(.vertices))]
    DuplicateEdge { vertices: Vec<u32> },
    #[error("{{{}}} is not an edge of the hypergraph", fmt_vertices(.vertices))]
    NotAnEdge { vertices: Vec<u32> },
    #[error("operation would create {count} edges, above the cap {MAX_GENERATED_EDGES}")]
    TooManyEdges { count: u128 },
}

fn fmt_vertices(vs: &[u32]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    parts.join(",")
}

/// Iterates the set bits of a mask in ascending order.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub(crate) Mask);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Lexicographic order of two masks viewed as ascending vertex sequences.
///
/// This is the order used for stored edge lists and serialized output; it is
/// NOT the numeric order of the masks (that would be colexicographic).
#[inline]
pub(crate) fn cmp_lex(a: Mask, b: Mask) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    BitIter(a).cmp(BitIter(b))
}

/// A subset of the vertices `{0..n-1}` of a host hypergraph.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: u32,
    bits: Mask,
}

impl VertexSet {
    pub fn empty(n: u32) -> Self {
        VertexSet { n, bits: 0 }
    }

    pub fn full(n: u32) -> Self {
        VertexSet {
            n,
            bits: full_mask(n),
        }
    }

    pub fn singleton(n: u32, v: u32) -> Result<Self, HypergraphError> {
        Self::from_vertices(n, &[v])
    }

    pub fn from_vertices(n: u32, vertices: &[u32]) -> Result<Self, HypergraphError> {
        if n > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let mut bits: Mask = 0;
        for &v in vertices {
            if v >= n {
                return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet { n, bits })
    }

    pub(crate) fn from_bits(n: u32, bits: Mask) -> Self {
        debug_assert_eq!(bits & !full_mask(n), 0);
        VertexSet { n, bits }
    }

    pub(crate) fn bits(&self) -> Mask {
        self.bits
    }

    /// Number of vertices in the host, not in the set.
    pub fn host_size(&self) -> u32 {
        self.n
    }

    pub fn card(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.n && self.bits >> v & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        BitIter(self.bits)
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    /// Complement within the host `{0..n-1}`.
    pub fn complement(&self) -> VertexSet {
        VertexSet {
            n: self.n,
            bits: !self.bits & full_mask(self.n),
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", fmt_vertices(&self.vertices()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet({}; n={})", self, self.n)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_lex(self.bits, other.bits).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[inline]
pub(crate) fn full_mask(n: u32) -> Mask {
    debug_assert!(n <= MAX_VERTICES);
    if n == 128 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Order-preserving vertex relabeling produced by deletions and restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    old_to_new: Vec<Option<u32>>,
}

impl Relabeling {
    pub(crate) fn from_kept(old_n: u32, kept: Mask) -> Self {
        let mut old_to_new = Vec::with_capacity(old_n as usize);
        let mut next = 0;
        for v in 0..old_n {
            if kept >> v & 1 == 1 {
                old_to_new.push(Some(next));
                next += 1;
            } else {
                old_to_new.push(None);
            }
        }
        Relabeling { old_to_new }
    }

    pub fn map_vertex(&self, old: u32) -> Option<u32> {
        self.old_to_new.get(old as usize).copied().flatten()
    }

    pub fn old_size(&self) -> u32 {
        self.old_to_new.len() as u32
    }

    pub fn new_size(&self) -> u32 {
        self.old_to_new.iter().filter(|m| m.is_some()).count() as u32
    }

    pub(crate) fn map_mask(&self, bits: Mask) -> Mask {
        let mut out = 0;
        for v in BitIter(bits) {
            if let Some(w) = self.map_vertex(v) {
                out |= 1 << w;
            }
        }
        out
    }
}

/// An r-uniform hypergraph on vertex set `{0..n-1}`.
///
/// Edges are held as bit masks, deduplicated and sorted in lexicographic
/// order of their ascending vertex sequences, so iteration order and
/// serialization are deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    r: u32,
    n: u32,
    edges: Vec<Mask>,
}

impl Hypergraph {
    pub fn new(
        r: u32,
        n: u32,
        edges: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, HypergraphError> {
        let masks: Vec<Mask> = edges.into_iter().map(|e| e.bits).collect();
        Self::from_masks(r, n, masks)
    }

    pub fn from_edge_lists(
        r: u32,
        n: u32,
        edges: &[Vec<u32>],
    ) -> Result<Self, HypergraphError> {
        let mut masks = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut bits: Mask = 0;
            for &v in edge {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
                bits |= 1 << v;
            }
            if bits.count_ones() as usize != edge.len() || edge.len() != r as usize {
                return Err(HypergraphError::WrongEdgeSize {
                    vertices: edge.clone(),
                    expected: r,
                    got: edge.len() as u32,
                });
            }
            masks.push(bits);
        }
        Self::from_masks(r, n, masks)
    }

    pub(crate) fn from_masks(r: u32, n: u32, mut edges: Vec<Mask>) -> Result<Self, HypergraphError> {
        if r < 2 {
            return Err(HypergraphError::UniformityTooSmall(r));
        }
        if n > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let canvas = full_mask(n);
        for &e in &edges {
            if e & !canvas != 0 {
                let vertex = BitIter(e & !canvas).next().unwrap();
                return Err(HypergraphError::VertexOutOfRange { vertex, n });
            }
            if e.count_ones() != r {
                return Err(HypergraphError::WrongEdgeSize {
                    vertices: BitIter(e).collect(),
                    expected: r,
                    got: e.count_ones(),
                });
            }
        }
        edges.sort_by(|&a, &b| cmp_lex(a, b));
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::DuplicateEdge {
                    vertices: BitIter(w[0]).collect(),
                });
            }
        }
        Ok(Hypergraph { r, n, edges })
    }

    pub fn edgeless(r: u32, n: u32) -> Result<Self, HypergraphError> {
        Self::from_masks(r, n, Vec::new())
    }

    /// The complete r-uniform hypergraph: every r-subset of `{0..n-1}`.
    pub fn complete(r: u32, n: u32) -> Result<Self, HypergraphError> {
        if r < 2 {
            return Err(HypergraphError::UniformityTooSmall(r));
        }
        if n > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let count = binomial(n as u64, r as u64);
        if count > MAX_GENERATED_EDGES as u128 {
            return Err(HypergraphError::TooManyEdges { count });
        }
        let mut edges = Vec::with_capacity(count as usize);
        if r <= n {
            for_each_subset(n, r, |mask| edges.push(mask));
        }
        Self::from_masks(r, n, edges)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges.iter().map(|&e| VertexSet::from_bits(self.n, e))
    }

    pub fn edge(&self, index: usize) -> VertexSet {
        VertexSet::from_bits(self.n, self.edges[index])
    }

    pub fn contains_edge(&self, e: &VertexSet) -> bool {
        self.edges
            .binary_search_by(|&m| cmp_lex(m, e.bits))
            .is_ok()
    }

    pub(crate) fn edge_masks(&self) -> &[Mask] {
        &self.edges
    }

    /// The complement hypergraph: same vertices, edge set flipped within all
    /// `C(n,r)` r-subsets.
    pub fn complement(&self) -> Result<Self, HypergraphError> {
        let total = binomial(self.n as u64, self.r as u64);
        let missing = total - self.edges.len() as u128;
        if missing > MAX_GENERATED_EDGES as u128 {
            return Err(HypergraphError::TooManyEdges { count: missing });
        }
        let mut edges = Vec::with_capacity(missing as usize);
        if self.r <= self.n {
            // Both streams are in lexicographic order; skip matches in one pass.
            let mut present = self.edges.iter().copied().peekable();
            for_each_subset(self.n, self.r, |mask| {
                if present.peek() == Some(&mask) {
                    present.next();
                } else {
                    edges.push(mask);
                }
            });
        }
        Ok(Hypergraph {
            r: self.r,
            n: self.n,
            edges,
        })
    }

    /// The partial hypergraph `H - e`: one edge removed, vertex set kept.
    pub fn delete_edge(&self, e: &VertexSet) -> Result<Self, HypergraphError> {
        match self.edges.binary_search_by(|&m| cmp_lex(m, e.bits)) {
            Ok(pos) => {
                let mut edges = self.edges.clone();
                edges.remove(pos);
                Ok(Hypergraph {
                    r: self.r,
                    n: self.n,
                    edges,
                })
            }
            Err(_) => Err(HypergraphError::NotAnEdge {
                vertices: e.vertices(),
            }),
        }
    }

    /// Removes vertex `v` and every edge containing it; remaining vertices are
    /// shifted down to `{0..n-2}`. The relabeling map is returned alongside.
    pub fn delete_vertex(&self, v: u32) -> Result<(Self, Relabeling), HypergraphError> {
        if v >= self.n {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let kept = full_mask(self.n) & !(1 << v);
        let relabel = Relabeling::from_kept(self.n, kept);
        let edges: Vec<Mask> = self
            .edges
            .iter()
            .filter(|&&e| e >> v & 1 == 0)
            .map(|&e| relabel.map_mask(e))
            .collect();
        let h = Hypergraph::from_masks(self.r, self.n - 1, edges)?;
        Ok((h, relabel))
    }

    /// The subhypergraph spanned by a subset of edges: vertex set is the union
    /// of the chosen edges, relabeled order-preservingly.
    pub fn spanned_subhypergraph(
        &self,
        chosen: &[VertexSet],
    ) -> Result<(Self, Relabeling), HypergraphError> {
        let mut support: Mask = 0;
        for e in chosen {
            if !self.contains_edge(e) {
                return Err(HypergraphError::NotAnEdge {
                    vertices: e.vertices(),
                });
            }
            support |= e.bits;
        }
        let relabel = Relabeling::from_kept(self.n, support);
        let edges: Vec<Mask> = chosen.iter().map(|e| relabel.map_mask(e.bits)).collect();
        let h = Hypergraph::from_masks(self.r, support.count_ones(), edges)?;
        Ok((h, relabel))
    }

    /// Vertices that belong to no edge.
    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet::from_bits(self.n, full_mask(self.n) & !self.support_mask())
    }

    pub(crate) fn support_mask(&self) -> Mask {
        self.edges.iter().fold(0, |acc, &e| acc | e)
    }

    /// Applies a permutation (`perm[old] = new`) to all vertices.
    pub(crate) fn relabeled(&self, perm: &[u32]) -> Hypergraph {
        debug_assert_eq!(perm.len(), self.n as usize);
        let mut edges: Vec<Mask> = self
            .edges
            .iter()
            .map(|&e| {
                let mut out = 0;
                for v in BitIter(e) {
                    out |= 1 << perm[v as usize];
                }
                out
            })
            .collect();
        edges.sort_by(|&a, &b| cmp_lex(a, b));
        Hypergraph {
            r: self.r,
            n: self.n,
            edges,
        }
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(r={}, n={}, edges=[", self.r, self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Exact binomial coefficient, `None` on u128 overflow. Intermediate values
/// are kept fully reduced so every partial product is itself a binomial.
pub(crate) fn checked_binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let mut mul = (n - i) as u128;
        let mut div = (i + 1) as u128;
        let g = gcd_u128(acc, div);
        acc /= g;
        div /= g;
        let g = gcd_u128(mul, div);
        mul /= g;
        div /= g;
        debug_assert_eq!(div, 1, "product of consecutive integers divides evenly");
        acc = acc.checked_mul(mul)?;
    }
    Some(acc)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Binomial coefficient for in-range hypergraph parameters (n <= 128, where
/// every value fits in u128).
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    checked_binomial(n, k).expect("binomial overflow")
}

/// Calls `f` with every k-subset mask of `{0..n-1}` in lexicographic order of
/// the ascending vertex sequences.
pub(crate) fn for_each_subset(n: u32, k: u32, mut f: impl FnMut(Mask)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut idx: Vec<u32> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0, |acc, &v| acc | (1 << v));
        f(mask);
        // Advance to the next combination in lexicographic order.
        let mut i = k as i64 - 1;
        while i >= 0 && idx[i as usize] == n - k + i as u32 {
            i -= 1;
        }
        if i < 0 {
            return;
        }
        idx[i as usize] += 1;
        for j in (i as usize + 1)..k as usize {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
