//! Clique families, generated hypergraphs, and negative arrow-relation
//! witnesses, plus the maximum-clique intersection bounds (the graph lemma
//! and its open hypergraph generalization).
//!
//! A family transversal hits every member set N_i; a hypergraph transversal
//! hits every edge. The two are distinct operations on distinct objects and
//! are deliberately kept apart — conflating them is the natural mistake in
//! this area.

use std::collections::HashSet;

use thiserror::Error;

use crate::hypergraph::{
    checked_binomial, cmp_lex, full_mask, BitIter, Hypergraph, HypergraphError, Mask,
    VertexSet, MAX_GENERATED_EDGES,
};
use crate::solve::{enumerate_max_cliques, min_hitting_set, SolveError, SolveResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrowError {
    #[error("a clique family needs at least one member set")]
    EmptyFamily,
    #[error("family parameters must satisfy 2 <= r <= k, got r={r}, k={k}")]
    BadParameters { r: u32, k: u32 },
    #[error("member set {index} has {got} elements, below the declared minimum k={k}")]
    SetTooSmall { index: usize, got: u32, k: u32 },
    #[error("the union of the member sets must cover 0..n-1, vertex {missing} is uncovered")]
    UnionNotContiguous { missing: u32 },
    #[error("this check applies to graphs (r=2) only, got r={0}; use the general form")]
    NotAGraph(u32),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A family K = {N_1, ..., N_l} of vertex sets, each of size at least k,
/// whose union is `{0..n-1}`. Generates an r-uniform hypergraph in which
/// every N_i is a clique.
///
/// The classical setting asks 3 <= r; r = 2 is admitted here so the graph
/// lemma lives in the same machinery, and reports flag the relaxation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueFamily {
    r: u32,
    k: u32,
    n: u32,
    sets: Vec<Mask>,
}

impl CliqueFamily {
    pub fn new(r: u32, k: u32, sets: Vec<VertexSet>) -> Result<Self, ArrowError> {
        if sets.is_empty() {
            return Err(ArrowError::EmptyFamily);
        }
        if r < 2 || k < r {
            return Err(ArrowError::BadParameters { r, k });
        }
        let n = sets[0].host_size();
        let mut union: Mask = 0;
        let mut masks = Vec::with_capacity(sets.len());
        for (index, set) in sets.iter().enumerate() {
            debug_assert_eq!(set.host_size(), n, "family sets share one host");
            if set.card() < k {
                return Err(ArrowError::SetTooSmall {
                    index,
                    got: set.card(),
                    k,
                });
            }
            union |= set.bits();
            masks.push(set.bits());
        }
        if union != full_mask(n) {
            let missing = BitIter(!union & full_mask(n)).next().unwrap();
            return Err(ArrowError::UnionNotContiguous { missing });
        }
        Ok(CliqueFamily { r, k, n, sets: masks })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Size of the union of the member sets.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.sets.iter().map(|&m| VertexSet::from_bits(self.n, m))
    }

    /// The generated r-uniform hypergraph: R is an edge iff R is an r-subset
    /// of some member set. Every member set is a clique of the result.
    pub fn generate(&self) -> Result<Hypergraph, ArrowError> {
        let mut budget: u128 = 0;
        for &s in &self.sets {
            budget += checked_binomial(s.count_ones() as u64, self.r as u64)
                .expect("set sizes are at most 128");
            if budget > MAX_GENERATED_EDGES as u128 {
                return Err(ArrowError::Hypergraph(HypergraphError::TooManyEdges {
                    count: budget,
                }));
            }
        }
        let mut edges: HashSet<Mask> = HashSet::new();
        for &s in &self.sets {
            let members: Vec<u32> = BitIter(s).collect();
            subsets_of(&members, self.r as usize, &mut |mask| {
                edges.insert(mask);
            });
        }
        let mut edges: Vec<Mask> = edges.into_iter().collect();
        edges.sort_by(|&a, &b| cmp_lex(a, b));
        Ok(Hypergraph::from_masks(self.r, self.n, edges)?)
    }

    /// Minimum size of a set meeting every member N_i (the family transversal,
    /// not the edge transversal of the generated hypergraph).
    pub fn transversal_number(&self) -> SolveResult {
        let (value, mask) =
            min_hitting_set(self.n, &self.sets, 0, 0, None).expect("family sets are nonempty");
        SolveResult {
            value,
            witness: VertexSet::from_bits(self.n, mask),
            all_optima: None,
        }
    }
}

fn subsets_of(members: &[u32], r: usize, f: &mut impl FnMut(Mask)) {
    fn recurse(members: &[u32], r: usize, start: usize, acc: Mask, f: &mut impl FnMut(Mask)) {
        if r == 0 {
            f(acc);
            return;
        }
        for i in start..=members.len().saturating_sub(r) {
            recurse(members, r - 1, i + 1, acc | 1 << members[i], f);
        }
    }
    if r <= members.len() {
        recurse(members, r, 0, 0, f);
    }
}

/// The claim parameters of a negative arrow relation `(n,k,t)^r -/-> u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArrowClaim {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub u: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClause {
    pub name: &'static str,
    pub detail: String,
    pub pass: bool,
}

/// Clause-by-clause verification that a family witnesses `(n,k,t)^r -/-> u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowReport {
    pub r: u32,
    pub claim: ArrowClaim,
    pub clauses: Vec<ArrowClause>,
    pub pass: bool,
    /// True when the family uses r = 2, outside the classical 3 <= r range.
    pub relaxed_r: bool,
}

/// Verifies every clause of the negative arrow claim: member sets have at
/// least k elements, the union has n vertices, the family has no t-element
/// transversal, and the generated hypergraph contains no u-clique. Failures
/// are report content, not errors.
pub fn verify_negative_arrow(
    family: &CliqueFamily,
    claim: ArrowClaim,
) -> Result<ArrowReport, ArrowError> {
    let mut clauses = Vec::new();

    let min_size = family.sets().map(|s| s.card()).min().unwrap_or(0);
    clauses.push(ArrowClause {
        name: "set-sizes",
        detail: format!("smallest member set has {min_size} elements, need >= {}", claim.k),
        pass: min_size >= claim.k,
    });

    clauses.push(ArrowClause {
        name: "order",
        detail: format!("union of the family has {} vertices, claimed n={}", family.n(), claim.n),
        pass: family.n() == claim.n,
    });

    let family_tau = family.transversal_number();
    clauses.push(ArrowClause {
        name: "no-t-transversal",
        detail: format!(
            "family transversal number is {}, need > t={}",
            family_tau.value, claim.t
        ),
        pass: family_tau.value > claim.t,
    });

    let generated = family.generate()?;
    let omega = crate::solve::clique_number(&generated)?;
    clauses.push(ArrowClause {
        name: "no-u-clique",
        detail: format!(
            "generated hypergraph has clique number {}, need < u={}",
            omega.value, claim.u
        ),
        pass: omega.value < claim.u,
    });

    let pass = clauses.iter().all(|c| c.pass);
    Ok(ArrowReport {
        r: family.r(),
        claim,
        clauses,
        pass,
        relaxed_r: family.r() == 2,
    })
}

/// Intersection of all maximum cliques of `h`.
pub fn max_clique_intersection(h: &Hypergraph, cap: usize) -> Result<VertexSet, ArrowError> {
    let cliques = enumerate_max_cliques(h, cap)?;
    let mut intersection = VertexSet::full(h.n());
    for c in &cliques {
        intersection = intersection.intersection(c);
    }
    Ok(intersection)
}

/// Result of the graph lemma check: in a graph on n vertices with maximum
/// clique size k, the maximum cliques intersect in at least 2k - n vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueIntersectionReport {
    pub r: u32,
    pub n: u32,
    pub k: u32,
    pub intersection: VertexSet,
    pub intersection_size: u32,
    /// Right side of the inequality; negative values make it vacuous. `None`
    /// means the bound underflows any representable value (it holds trivially).
    pub lower_bound: Option<i128>,
    pub holds: bool,
}

/// Graphs only: checks `|intersection of maximum cliques| >= 2k - n`.
pub fn hajnal_folkman_check(
    h: &Hypergraph,
    cap: usize,
) -> Result<CliqueIntersectionReport, ArrowError> {
    if h.r() != 2 {
        return Err(ArrowError::NotAGraph(h.r()));
    }
    let cliques = enumerate_max_cliques(h, cap)?;
    let k = cliques.first().map_or(0, |c| c.card());
    let mut intersection = VertexSet::full(h.n());
    for c in &cliques {
        intersection = intersection.intersection(c);
    }
    let bound = 2 * k as i128 - h.n() as i128;
    Ok(CliqueIntersectionReport {
        r: 2,
        n: h.n(),
        k,
        intersection_size: intersection.card(),
        holds: intersection.card() as i128 >= bound,
        intersection,
        lower_bound: Some(bound),
    })
}

/// General-r form of the clique-intersection inequality:
/// `|intersection| >= n - [C(m+r-2, r-1) + (m+r-2)]` with m = n - omega.
///
/// For r = 2 this reduces exactly to the graph lemma. For r >= 3 the
/// inequality is open; a violation is a first-class finding reported in the
/// result, never an error.
pub fn problem2_check(h: &Hypergraph, cap: usize) -> Result<CliqueIntersectionReport, ArrowError> {
    let cliques = enumerate_max_cliques(h, cap)?;
    let k = cliques.first().map_or(0, |c| c.card());
    let mut intersection = VertexSet::full(h.n());
    for c in &cliques {
        intersection = intersection.intersection(c);
    }
    let m = (h.n() - k) as u64;
    let r = h.r() as u64;
    let bracket = checked_binomial(m + r - 2, r - 1)
        .and_then(|b| b.checked_add((m + r - 2) as u128));
    let lower_bound = bracket.and_then(|b| {
        if b > i128::MAX as u128 {
            None
        } else {
            Some(h.n() as i128 - b as i128)
        }
    });
    let holds = match lower_bound {
        Some(bound) => intersection.card() as i128 >= bound,
        None => true, // the right side is below any representable value
    };
    Ok(CliqueIntersectionReport {
        r: h.r(),
        n: h.n(),
        k,
        intersection_size: intersection.card(),
        holds,
        intersection,
        lower_bound,
    })
}
