//! Isomorph-rejecting search for the maximum order of an r-uniform
//! tau-critical hypergraph with transversal number t.
//!
//! The search grows hypergraphs one edge at a time (new vertices take the
//! next consecutive labels), visiting each isomorphism class exactly once:
//! a child is accepted only when deleting its canonical last edge and
//! restricting to the spanned vertices reproduces the parent it was grown
//! from, and children of one parent are deduplicated by canonical code. Every
//! class therefore has a unique generating parent and no global visited set
//! is needed, which lets exhaustive runs fan out across threads and merge.
//!
//! Pruning is sound for the target family:
//!   - tau(partial) <= t, since tau never decreases when edges are added;
//!   - for every edge e there must exist a set of at most t-1 vertices,
//!     disjoint from e, covering all other edges. In a final tau-critical
//!     hypergraph with tau = t the witness for tau(H-e) = t-1 is such a set,
//!     and restricting it to a partial edge subset keeps it one, so no edge
//!     subset of a target is ever discarded.
//!
//! Both conditions only tighten as edges are added. The vertex canvas is
//! capped by the proven general upper bound, so exhaustive runs genuinely
//! certify the maximum order.
//!
//! A candidate with tau = t that passes the per-edge condition is exactly a
//! tau-critical hit: the condition gives tau(H-e) <= t-1, and deletion can
//! lower tau by at most one.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, canonical_relabeling, canonicalize, CanonicalCode};
use crate::extremal::bounds::{bounds, BoundsError};
use crate::extremal::certificate::{certificate_for, ExtremalCertificate};
use crate::hypergraph::{full_mask, BitIter, Hypergraph, Mask, MAX_VERTICES};
use crate::solve::min_hitting_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Visit the entire admissible space; the result is the exact maximum.
    Exhaustive,
    /// Stop after the node budget; the result is a lower-bound certificate.
    Budgeted,
}

impl SearchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Budgeted => "budgeted",
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("exhaustive mode is not feasible at r={r}, t={t} (supported: r=2 with t<=5, r=3 with t<=2); use budgeted mode")]
    ExhaustiveInfeasible { r: u32, t: u32 },
    #[error("node budget of {budget} exhausted before the exhaustive run completed")]
    BudgetExhausted { budget: u64, partial: SearchRecord },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("search needs r >= 2 and t >= 1, got r={r}, t={t}")]
    OutOfDomain { r: u32, t: u32 },
}

/// Outcome counters and the best certificate parameters of one search run.
#[derive(Clone, Debug)]
pub struct SearchRecord {
    pub r: u32,
    pub t: u32,
    pub mode: SearchMode,
    /// Vertex canvas: the proven upper bound on the order, capped at 128.
    pub canvas: u32,
    pub best_order: Option<u32>,
    pub best_code: Option<CanonicalCode>,
    /// True only when the entire admissible space up to the canvas was
    /// visited, i.e. `best_order` is the exact maximum.
    pub exhaustive: bool,
    /// Candidate extensions evaluated (the budgeted unit).
    pub nodes_explored: u64,
    /// Isomorphism classes expanded.
    pub classes_expanded: u64,
    /// Candidates rejected by the canonical-parent test or duplicate codes.
    pub isomorph_rejections: u64,
    /// tau-critical classes with tau = t encountered.
    pub hits: u64,
}

/// Search record plus every tau-critical class found, as certificates over
/// canonical representatives, largest order first.
pub struct SearchOutput {
    pub record: SearchRecord,
    pub certificates: Vec<ExtremalCertificate>,
}

struct Ctx {
    r: u32,
    t: u32,
    canvas: u32,
    budget: u64,
    parallel: bool,
    nodes: AtomicU64,
    rejections: AtomicU64,
    classes: AtomicU64,
    stop: AtomicBool,
}

#[derive(Default)]
struct Outcome {
    /// (order, code) of the best hit, max order with min-code tie-break.
    best: Option<(u32, CanonicalCode)>,
    hits: Vec<(CanonicalCode, Hypergraph)>,
}

impl Outcome {
    fn absorb(&mut self, other: Outcome) {
        self.best = match (self.best.take(), other.best) {
            (None, b) => b,
            (a, None) => a,
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        };
        self.hits.extend(other.hits);
    }

    fn hit(code: CanonicalCode, h: Hypergraph) -> Outcome {
        Outcome {
            best: Some((h.n(), code.clone())),
            hits: vec![(code, h)],
        }
    }
}

/// tau(h) if it is at most `t`, else `None`.
fn tau_at_most(h: &Hypergraph, t: u32) -> Option<u32> {
    min_hitting_set(h.n(), h.edge_masks(), 0, 0, Some(t)).map(|(v, _)| v)
}

/// The per-edge extensibility condition: some set of at most t-1 vertices,
/// disjoint from `edge`, covers every other edge.
fn edge_condition(h: &Hypergraph, t: u32) -> bool {
    let masks = h.edge_masks();
    let mut others: Vec<Mask> = Vec::with_capacity(masks.len() - 1);
    for i in 0..masks.len() {
        others.clear();
        others.extend(masks.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &m)| m));
        if min_hitting_set(h.n(), &others, 0, masks[i], t.checked_sub(1)).is_none() {
            return false;
        }
    }
    true
}

/// All extension edges of `parent`: r-subsets over the current vertices plus
/// up to r new consecutive labels (all new labels must be used), minus
/// existing edges.
fn extension_edges(parent: &Hypergraph, r: u32, canvas: u32) -> Vec<(u32, Mask)> {
    let n0 = parent.n();
    let mut out = Vec::new();
    let max_new = r.min(canvas.saturating_sub(n0));
    for new in 0..=max_new {
        let new_bits: Mask = (full_mask(n0 + new) ^ full_mask(n0)) as Mask;
        let old_needed = r - new;
        if old_needed > n0 {
            continue;
        }
        crate::hypergraph::for_each_subset(n0, old_needed, |old_bits| {
            let e = old_bits | new_bits;
            out.push((n0 + new, e));
        });
    }
    out
}

/// The canonical deletion edge: the edge whose relabeled tuple sorts last in
/// the canonical code, pulled back to the hypergraph's own labels.
fn canonical_last_edge(h: &Hypergraph) -> (CanonicalCode, Mask) {
    let (code, label) = canonical_relabeling(h);
    let last = h
        .edge_masks()
        .iter()
        .copied()
        .max_by_key(|&e| {
            let mut tuple: Vec<u8> = BitIter(e).map(|v| label[v as usize] as u8).collect();
            tuple.sort_unstable();
            tuple.reverse(); // compare by max label first, then the rest
            tuple
        })
        .expect("nonempty edge set");
    (code, last)
}

fn expand(ctx: &Ctx, parent: &Hypergraph, parent_code: &CanonicalCode) -> Outcome {
    ctx.classes.fetch_add(1, Ordering::Relaxed);
    let mut outcome = Outcome::default();
    let mut accepted: Vec<(CanonicalCode, Hypergraph, u32)> = Vec::new();
    let mut seen: HashSet<CanonicalCode> = HashSet::new();

    for (n_child, edge) in extension_edges(parent, ctx.r, ctx.canvas) {
        if ctx.stop.load(Ordering::Relaxed) {
            break;
        }
        let nodes = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > ctx.budget {
            ctx.stop.store(true, Ordering::Relaxed);
            break;
        }
        if parent.n() == n_child && parent.edge_masks().contains(&edge) {
            continue;
        }
        let mut masks = parent.edge_masks().to_vec();
        masks.push(edge);
        let child = Hypergraph::from_masks(ctx.r, n_child, masks).expect("edge is in range");

        let Some(tau) = tau_at_most(&child, ctx.t) else {
            continue;
        };
        if !edge_condition(&child, ctx.t) {
            continue;
        }

        // Canonical-parent acceptance: deleting the canonical last edge and
        // restricting to the spanned vertices must reproduce the parent.
        let (child_code, last_edge) = canonical_last_edge(&child);
        let remaining: Vec<Mask> = child
            .edge_masks()
            .iter()
            .copied()
            .filter(|&e| e != last_edge)
            .collect();
        let support = remaining.iter().fold(0 as Mask, |acc, &e| acc | e);
        let relabel = crate::hypergraph::Relabeling::from_kept(child.n(), support);
        let reduced: Vec<Mask> = remaining.iter().map(|&e| relabel.map_mask(e)).collect();
        let reduced = Hypergraph::from_masks(ctx.r, support.count_ones(), reduced)
            .expect("restriction preserves validity");
        let is_canonical_child = canonical_form(&reduced) == *parent_code;
        if !is_canonical_child || !seen.insert(child_code.clone()) {
            ctx.rejections.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        accepted.push((child_code, child, tau));
    }

    // Deterministic order: larger orders first (drives budgeted runs toward
    // growth), then canonical code.
    accepted.sort_by(|a, b| b.1.n().cmp(&a.1.n()).then_with(|| a.0.cmp(&b.0)));

    for (code, child, tau) in &accepted {
        if *tau == ctx.t {
            // tau = t plus the per-edge condition is exactly tau-criticality.
            outcome.absorb(Outcome::hit(code.clone(), child.clone()));
        }
    }

    let children = if ctx.stop.load(Ordering::Relaxed) {
        Vec::new()
    } else {
        accepted
    };
    if ctx.parallel {
        let merged = children
            .par_iter()
            .map(|(code, child, _)| expand(ctx, child, code))
            .reduce(Outcome::default, |mut a, b| {
                a.absorb(b);
                a
            });
        outcome.absorb(merged);
    } else {
        for (code, child, _) in &children {
            if ctx.stop.load(Ordering::Relaxed) {
                break;
            }
            outcome.absorb(expand(ctx, child, code));
        }
    }
    outcome
}

/// Whether an exhaustive run is permitted at these parameters.
pub fn exhaustive_feasible(r: u32, t: u32) -> bool {
    (r == 2 && t <= 5) || (r == 3 && t <= 2)
}

/// Searches for the maximum order of an r-uniform tau-critical hypergraph
/// with transversal number t.
///
/// * Exhaustive mode visits every admissible isomorphism class on at most
///   `canvas` vertices and proves the maximum; it may run on multiple threads
///   (`parallel`), with schedule-independent results. Running out of budget
///   is an explicit error, never a silent downgrade.
/// * Budgeted mode runs a deterministic sequential depth-first search and
///   reports the best certificate found within the budget.
pub fn search_v_max(
    r: u32,
    t: u32,
    mode: SearchMode,
    budget: u64,
    parallel: bool,
) -> Result<SearchOutput, SearchError> {
    if r < 2 || t < 1 {
        return Err(SearchError::OutOfDomain { r, t });
    }
    if mode == SearchMode::Exhaustive && !exhaustive_feasible(r, t) {
        return Err(SearchError::ExhaustiveInfeasible { r, t });
    }
    let table = bounds(r, t as u64)?;
    let canvas = table.upper_gylt.min(MAX_VERTICES as u128) as u32;

    let ctx = Ctx {
        r,
        t,
        canvas,
        budget,
        parallel: parallel && mode == SearchMode::Exhaustive,
        nodes: AtomicU64::new(0),
        rejections: AtomicU64::new(0),
        classes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };

    // Seed: the unique one-edge class.
    let seed = Hypergraph::from_masks(r, r, vec![full_mask(r)]).expect("seed is valid");
    let seed_code = canonical_form(&seed);
    let mut outcome = Outcome::default();
    if t == 1 {
        // A single edge is tau-critical with tau = 1; with two or more edges
        // some deletion keeps tau at 1, so the seed is the only hit.
        outcome.absorb(Outcome::hit(seed_code.clone(), seed.clone()));
    }
    outcome.absorb(expand(&ctx, &seed, &seed_code));

    let stopped = ctx.stop.load(Ordering::Relaxed);
    let mut record = SearchRecord {
        r,
        t,
        mode,
        canvas,
        best_order: outcome.best.as_ref().map(|(n, _)| *n),
        best_code: outcome.best.as_ref().map(|(_, c)| c.clone()),
        exhaustive: mode == SearchMode::Exhaustive && !stopped,
        nodes_explored: ctx.nodes.load(Ordering::Relaxed).min(budget),
        classes_expanded: ctx.classes.load(Ordering::Relaxed),
        isomorph_rejections: ctx.rejections.load(Ordering::Relaxed),
        hits: outcome.hits.len() as u64,
    };
    if mode == SearchMode::Exhaustive && stopped {
        return Err(SearchError::BudgetExhausted {
            budget,
            partial: record,
        });
    }

    let mut hits = outcome.hits;
    hits.sort_by(|a, b| b.1.n().cmp(&a.1.n()).then_with(|| a.0.cmp(&b.0)));
    let certificates: Vec<ExtremalCertificate> = hits
        .iter()
        .map(|(_, h)| {
            certificate_for(&canonicalize(h), t).expect("hits are tau-critical by construction")
        })
        .collect();
    record.hits = certificates.len() as u64;
    Ok(SearchOutput {
        record,
        certificates,
    })
}
