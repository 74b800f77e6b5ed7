//! Exact computation of the transversal, independence, and clique numbers.
//!
//! The single optimized kernel is a branch-and-bound minimum hitting set over
//! bit-mask sets: pick an uncovered set with the fewest undecided vertices and
//! branch on those vertices in ascending order. The independence and clique
//! numbers are derived from it through the complement identities
//! (`alpha = n - tau`, `omega(H) = n - tau(complement)`), which keeps one
//! kernel hot and makes the identities themselves testable against the
//! independent oracles in [`oracle`].

use thiserror::Error;

use crate::hypergraph::{
    binomial, cmp_lex, full_mask, BitIter, Hypergraph, HypergraphError, Mask, VertexSet,
};

/// Default cap on enumerated optima; the number of minimum transversals can be
/// exponential (2^t for the disjoint matching family).
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Largest instance the exhaustive-scan oracle accepts.
pub const ORACLE_MAX_VERTICES: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("enumeration exceeded the cap of {cap} optima")]
    EnumerationCapExceeded { cap: usize },
    #[error("oracle refuses n={n} (exhaustive scan is limited to n <= {ORACLE_MAX_VERTICES})")]
    OracleTooLarge { n: u32 },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// An exact invariant value together with an optimal witness set, and
/// optionally the full list of optimal sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u32,
    pub witness: VertexSet,
    pub all_optima: Option<Vec<VertexSet>>,
}

impl SolveResult {
    fn new(value: u32, witness: VertexSet) -> Self {
        SolveResult {
            value,
            witness,
            all_optima: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Branch-and-bound kernel over mask sets
// ---------------------------------------------------------------------------

struct Kernel<'a> {
    sets: &'a [Mask],
    best_size: u32,
    best_set: Mask,
    found: bool,
}

impl<'a> Kernel<'a> {
    /// Greedy disjoint packing of uncovered sets; each packed set needs its
    /// own vertex, so the packing size lower-bounds the remaining cost.
    fn packing_bound(&self, chosen: Mask, banned: Mask) -> u32 {
        let mut used: Mask = 0;
        let mut count = 0;
        for &s in self.sets {
            if s & chosen != 0 {
                continue;
            }
            let avail = s & !banned;
            if avail & used == 0 {
                used |= avail;
                count += 1;
            }
        }
        count
    }

    fn recurse(&mut self, chosen: Mask, mut banned: Mask, size: u32) {
        // Locate the uncovered set with the fewest undecided vertices.
        let mut pick: Option<(u32, Mask)> = None;
        for &s in self.sets {
            if s & chosen != 0 {
                continue;
            }
            let avail = s & !banned;
            let width = avail.count_ones();
            if width == 0 {
                return; // this set can no longer be covered
            }
            match pick {
                Some((w, _)) if w <= width => {}
                _ => pick = Some((width, avail)),
            }
            if width == 1 {
                break;
            }
        }
        let Some((_, avail)) = pick else {
            // Everything covered.
            if size < self.best_size {
                self.best_size = size;
                self.best_set = chosen;
                self.found = true;
            }
            return;
        };
        if size + 1 >= self.best_size {
            return;
        }
        if size + self.packing_bound(chosen, banned) >= self.best_size {
            return;
        }
        for v in BitIter(avail) {
            self.recurse(chosen | 1 << v, banned, size + 1);
            banned |= 1 << v;
        }
    }
}

/// Deterministic greedy cover used to seed the incumbent: repeatedly take the
/// lowest-numbered vertex covering the most uncovered sets.
fn greedy_cover(n: u32, sets: &[Mask], forced: Mask, banned: Mask) -> Option<Mask> {
    let mut chosen = forced;
    loop {
        let mut best: Option<(u32, u32)> = None; // (count, vertex)
        let mut any_uncovered = false;
        for v in 0..n {
            if banned >> v & 1 == 1 || chosen >> v & 1 == 1 {
                continue;
            }
            let count = sets
                .iter()
                .filter(|&&s| s & chosen == 0 && s >> v & 1 == 1)
                .count() as u32;
            if count > 0 && best.map_or(true, |(c, _)| count > c) {
                best = Some((count, v));
            }
        }
        for &s in sets {
            if s & chosen == 0 {
                any_uncovered = true;
                break;
            }
        }
        if !any_uncovered {
            return Some(chosen);
        }
        match best {
            Some((_, v)) => chosen |= 1 << v,
            None => return None, // uncovered set with all vertices banned
        }
    }
}

/// Minimum hitting set over `sets` within the vertex window `0..n`, with
/// `forced` vertices pre-included and `banned` vertices unusable. Returns the
/// optimum and one witness, or `None` when no hitting set of size at most
/// `cutoff` exists (counting the forced vertices).
pub(crate) fn min_hitting_set(
    n: u32,
    sets: &[Mask],
    forced: Mask,
    banned: Mask,
    cutoff: Option<u32>,
) -> Option<(u32, Mask)> {
    debug_assert_eq!(forced & banned, 0);
    let limit = cutoff.map_or(n + 1, |c| c.min(n) + 1);
    let mut kernel = Kernel {
        sets,
        best_size: limit,
        best_set: 0,
        found: false,
    };
    if let Some(greedy) = greedy_cover(n, sets, forced, banned) {
        let size = greedy.count_ones();
        if size < kernel.best_size {
            kernel.best_size = size;
            kernel.best_set = greedy;
            kernel.found = true;
        }
    }
    kernel.recurse(forced, banned, forced.count_ones());
    if kernel.found {
        Some((kernel.best_size, kernel.best_set))
    } else {
        None
    }
}

pub(crate) fn tau_mask(h: &Hypergraph) -> (u32, Mask) {
    min_hitting_set(h.n(), h.edge_masks(), 0, 0, None)
        .expect("unconstrained hitting set always exists")
}

/// Transversal number with forced/banned vertices; `None` when infeasible
/// within the cutoff.
pub(crate) fn tau_constrained(
    h: &Hypergraph,
    forced: Mask,
    banned: Mask,
    cutoff: Option<u32>,
) -> Option<(u32, Mask)> {
    min_hitting_set(h.n(), h.edge_masks(), forced, banned, cutoff)
}

/// tau(H): minimum size of a vertex set meeting every edge.
pub fn transversal_number(h: &Hypergraph) -> SolveResult {
    let (value, mask) = tau_mask(h);
    SolveResult::new(value, VertexSet::from_bits(h.n(), mask))
}

/// alpha(H): maximum size of a vertex set containing no edge, derived as
/// `n - tau(H)` with the complementary witness.
pub fn independence_number(h: &Hypergraph) -> SolveResult {
    let (tau, mask) = tau_mask(h);
    let witness = VertexSet::from_bits(h.n(), full_mask(h.n()) & !mask);
    SolveResult::new(h.n() - tau, witness)
}

/// omega(H): maximum size of a vertex set all of whose r-subsets are edges,
/// derived as `alpha(complement(H))`. Sets smaller than r are vacuously
/// complete, so `omega >= min(n, r-1)` always holds.
pub fn clique_number(h: &Hypergraph) -> Result<SolveResult, SolveError> {
    Ok(independence_number(&h.complement()?))
}

// ---------------------------------------------------------------------------
// Enumeration of optima
// ---------------------------------------------------------------------------

struct Enumerator<'a> {
    sets: &'a [Mask],
    target: u32,
    cap: usize,
    out: Vec<Mask>,
    overflow: bool,
}

impl<'a> Enumerator<'a> {
    fn packing_bound(&self, chosen: Mask, banned: Mask) -> u32 {
        let mut used: Mask = 0;
        let mut count = 0;
        for &s in self.sets {
            if s & chosen != 0 {
                continue;
            }
            let avail = s & !banned;
            if avail & used == 0 {
                used |= avail;
                count += 1;
            }
        }
        count
    }

    fn recurse(&mut self, chosen: Mask, mut banned: Mask, size: u32) {
        if self.overflow {
            return;
        }
        let mut pick: Option<(u32, Mask)> = None;
        for &s in self.sets {
            if s & chosen != 0 {
                continue;
            }
            let avail = s & !banned;
            if avail == 0 {
                return;
            }
            let width = avail.count_ones();
            match pick {
                Some((w, _)) if w <= width => {}
                _ => pick = Some((width, avail)),
            }
            if width == 1 {
                break;
            }
        }
        let Some((_, avail)) = pick else {
            debug_assert_eq!(size, self.target, "covers below tau cannot exist");
            if self.out.len() == self.cap {
                self.overflow = true;
                return;
            }
            self.out.push(chosen);
            return;
        };
        if size + self.packing_bound(chosen, banned) > self.target {
            return;
        }
        for v in BitIter(avail) {
            self.recurse(chosen | 1 << v, banned, size + 1);
            banned |= 1 << v;
        }
    }
}

pub(crate) fn enumerate_min_covers(
    n: u32,
    sets: &[Mask],
    cap: usize,
) -> Result<(u32, Vec<Mask>), SolveError> {
    let (target, _) = min_hitting_set(n, sets, 0, 0, None).expect("always feasible");
    let mut enumerator = Enumerator {
        sets,
        target,
        cap,
        out: Vec::new(),
        overflow: false,
    };
    enumerator.recurse(0, 0, 0);
    if enumerator.overflow {
        return Err(SolveError::EnumerationCapExceeded { cap });
    }
    let mut out = enumerator.out;
    out.sort_by(|&a, &b| cmp_lex(a, b));
    Ok((target, out))
}

/// All transversals of size tau(H), canonically ordered.
pub fn enumerate_min_transversals(
    h: &Hypergraph,
    cap: usize,
) -> Result<Vec<VertexSet>, SolveError> {
    let (_, masks) = enumerate_min_covers(h.n(), h.edge_masks(), cap)?;
    Ok(masks
        .into_iter()
        .map(|m| VertexSet::from_bits(h.n(), m))
        .collect())
}

/// Like [`transversal_number`], with `all_optima` populated.
pub fn transversal_number_with_optima(
    h: &Hypergraph,
    cap: usize,
) -> Result<SolveResult, SolveError> {
    let (value, masks) = enumerate_min_covers(h.n(), h.edge_masks(), cap)?;
    let witness = VertexSet::from_bits(h.n(), masks[0]);
    Ok(SolveResult {
        value,
        witness,
        all_optima: Some(
            masks
                .into_iter()
                .map(|m| VertexSet::from_bits(h.n(), m))
                .collect(),
        ),
    })
}

/// All cliques of size omega(H), via the complement identity: maximum cliques
/// of H are exactly the complements of minimum transversals of the complement.
pub fn enumerate_max_cliques(h: &Hypergraph, cap: usize) -> Result<Vec<VertexSet>, SolveError> {
    let complement = h.complement()?;
    let (_, masks) = enumerate_min_covers(complement.n(), complement.edge_masks(), cap)?;
    let mut cliques: Vec<VertexSet> = masks
        .into_iter()
        .map(|m| VertexSet::from_bits(h.n(), full_mask(h.n()) & !m))
        .collect();
    cliques.sort();
    Ok(cliques)
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Independent reference algorithms, deliberately kept on different code
/// paths from the branch-and-bound kernel. These back the cross-checks in
/// `duality::gallai_check` and the regression tests.
pub mod oracle {
    use super::*;
    use crate::hypergraph::for_each_subset;

    /// tau by exhaustive subset scan in increasing size. Test/verification
    /// use only; refuses n > 20.
    pub fn brute_tau(h: &Hypergraph) -> Result<u32, SolveError> {
        if h.n() > ORACLE_MAX_VERTICES {
            return Err(SolveError::OracleTooLarge { n: h.n() });
        }
        let sets = h.edge_masks();
        if sets.is_empty() {
            return Ok(0);
        }
        for k in 1..=h.n() {
            let mut found = false;
            for_each_subset(h.n(), k, |m| {
                if !found && sets.iter().all(|&s| s & m != 0) {
                    found = true;
                }
            });
            if found {
                return Ok(k);
            }
        }
        unreachable!("the full vertex set is a transversal");
    }

    /// alpha by direct maximization: while some edge lies inside the candidate
    /// set, branch on which of its vertices to discard.
    pub fn direct_alpha(h: &Hypergraph) -> SolveResult {
        fn recurse(sets: &[Mask], candidate: Mask, best: &mut (u32, Mask)) {
            if candidate.count_ones() <= best.0 {
                return;
            }
            match sets.iter().find(|&&s| s & candidate == s) {
                None => *best = (candidate.count_ones(), candidate),
                Some(&inside) => {
                    for v in BitIter(inside) {
                        recurse(sets, candidate & !(1 << v), best);
                    }
                }
            }
        }
        let mut best = (0, 0);
        if h.edge_masks().is_empty() {
            best = (h.n(), full_mask(h.n()));
        } else {
            recurse(h.edge_masks(), full_mask(h.n()), &mut best);
        }
        SolveResult::new(best.0, VertexSet::from_bits(h.n(), best.1))
    }

    /// omega by direct growth: extend a clique vertex by vertex, requiring
    /// every r-subset of the grown set that touches the new vertex to be an
    /// edge.
    pub fn direct_omega(h: &Hypergraph) -> SolveResult {
        let r = h.r();
        let n = h.n();
        let edges = h.edge_masks();

        let is_edge = |m: Mask| edges.binary_search_by(|&e| cmp_lex(e, m)).is_ok();
        // v is compatible with clique c iff every (r-1)-subset of c, together
        // with v, is an edge. Below size r-1 everything is vacuously complete.
        let compatible = |c: Mask, v: u32| -> bool {
            if c.count_ones() < r - 1 {
                return true;
            }
            let members: Vec<u32> = BitIter(c).collect();
            let mut ok = true;
            for_each_subset(members.len() as u32, r - 1, |idx_mask| {
                if ok {
                    let mut m: Mask = 1 << v;
                    for i in BitIter(idx_mask) {
                        m |= 1 << members[i as usize];
                    }
                    if !is_edge(m) {
                        ok = false;
                    }
                }
            });
            ok
        };

        fn recurse(
            n: u32,
            start: u32,
            clique: Mask,
            best: &mut (u32, Mask),
            compatible: &dyn Fn(Mask, u32) -> bool,
        ) {
            let size = clique.count_ones();
            if size > best.0 {
                *best = (size, clique);
            }
            if size + (n - start.min(n)) <= best.0 {
                return;
            }
            for v in start..n {
                if compatible(clique, v) {
                    recurse(n, v + 1, clique | 1 << v, best, compatible);
                }
            }
        }

        // Any min(n, r-1) vertices form a vacuous clique.
        let floor = n.min(r - 1);
        let mut best = (floor, full_mask(floor));
        recurse(n, 0, 0, &mut best, &compatible);
        SolveResult::new(best.0, VertexSet::from_bits(n, best.1))
    }

    /// Number of r-subsets of `{0..n-1}`; used by tests.
    pub fn total_edges(n: u32, r: u32) -> u128 {
        binomial(n as u64, r as u64)
    }
}
