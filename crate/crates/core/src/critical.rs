//! Criticality and witness diagnostics.
//!
//! A hypergraph is tau-critical when it has no isolated vertex and deleting
//! any single edge lowers the transversal number; it is vertex-critical when
//! every vertex lies in some minimum transversal. A hypergraph is an
//! (n,k)-witness when its maximum cliques (k = omega) have no common vertex.
//! The reports here recompute every claim with the exact solvers.

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError, VertexSet};
use crate::solve::{
    enumerate_max_cliques, tau_constrained, tau_mask, SolveError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalityError {
    #[error("input is not tau-critical: {reason}")]
    NotTauCritical { reason: String },
    #[error("input has no edges")]
    NoEdges,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Per-edge deletion outcome inside a [`CriticalityReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDrop {
    pub edge: VertexSet,
    /// tau(H - e); criticality needs this to equal tau(H) - 1.
    pub tau_without: u32,
}

/// Per-vertex membership pattern across minimum transversals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexUse {
    pub vertex: u32,
    pub in_some_minimum: bool,
    pub out_of_some_minimum: bool,
}

/// Diagnostics certifying or refuting tau-criticality and vertex-criticality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub tau: u32,
    pub per_edge: Vec<EdgeDrop>,
    pub per_vertex: Vec<VertexUse>,
    pub isolated: VertexSet,
    pub is_tau_critical: bool,
    pub is_vertex_critical: bool,
}

impl CriticalityReport {
    /// First edge whose deletion fails to lower tau, if any.
    pub fn non_dropping_edge(&self) -> Option<&EdgeDrop> {
        self.per_edge.iter().find(|d| d.tau_without != self.tau.saturating_sub(1))
    }
}

/// Full criticality diagnostics: tau, every per-edge drop, every per-vertex
/// membership, and both verdicts.
pub fn criticality(h: &Hypergraph) -> CriticalityReport {
    let (tau, _) = tau_mask(h);
    let per_edge: Vec<EdgeDrop> = h
        .edges()
        .map(|edge| {
            let partial = h.delete_edge(&edge).expect("iterating actual edges");
            EdgeDrop {
                edge,
                tau_without: tau_mask(&partial).0,
            }
        })
        .collect();
    let per_vertex: Vec<VertexUse> = (0..h.n())
        .map(|vertex| {
            // Some minimum transversal contains v iff tau(H - v) = tau - 1.
            let (deleted, _) = h.delete_vertex(vertex).expect("vertex in range");
            let in_some_minimum = tau > 0 && tau_mask(&deleted).0 == tau - 1;
            // Some minimum transversal avoids v iff banning v leaves tau intact.
            let out_of_some_minimum = tau_constrained(h, 0, 1 << vertex, Some(tau)).is_some();
            VertexUse {
                vertex,
                in_some_minimum,
                out_of_some_minimum,
            }
        })
        .collect();
    let isolated = h.isolated_vertices();
    // The biconditional is literal: the empty hypergraph (n = 0) satisfies
    // both clauses vacuously.
    let is_tau_critical = isolated.is_empty()
        && per_edge
            .iter()
            .all(|d| tau > 0 && d.tau_without == tau - 1);
    let is_vertex_critical = per_vertex.iter().all(|u| u.in_some_minimum);
    CriticalityReport {
        tau,
        per_edge,
        per_vertex,
        isolated,
        is_tau_critical,
        is_vertex_critical,
    }
}

pub fn is_tau_critical(h: &Hypergraph) -> bool {
    if !h.isolated_vertices().is_empty() {
        return false;
    }
    let (tau, _) = tau_mask(h);
    h.edges().all(|edge| {
        let partial = h.delete_edge(&edge).expect("iterating actual edges");
        tau > 0 && tau_mask(&partial).0 == tau - 1
    })
}

pub fn is_vertex_critical(h: &Hypergraph) -> bool {
    let (tau, _) = tau_mask(h);
    if tau == 0 {
        return h.n() == 0;
    }
    (0..h.n()).all(|v| {
        let (deleted, _) = h.delete_vertex(v).expect("vertex in range");
        tau_mask(&deleted).0 == tau - 1
    })
}

/// Witnessing transversals for one vertex: one containing it, one avoiding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexTransversals {
    pub vertex: u32,
    pub containing: VertexSet,
    pub avoiding: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation2Report {
    pub tau: u32,
    pub per_vertex: Vec<VertexTransversals>,
}

/// For a tau-critical hypergraph, exhibits for every vertex both a minimum
/// transversal containing it and one avoiding it. Rejects non-critical input;
/// a missing witness after that would contradict the criticality just
/// verified, so it is reported as an internal error.
pub fn check_observation2(h: &Hypergraph) -> Result<Observation2Report, CriticalityError> {
    let report = criticality(h);
    if !report.is_tau_critical {
        return Err(CriticalityError::NotTauCritical {
            reason: describe_non_criticality(&report),
        });
    }
    let tau = report.tau;
    let per_vertex = (0..h.n())
        .map(|vertex| {
            let bit = 1u128 << vertex;
            let containing = tau_constrained(h, bit, 0, Some(tau))
                .map(|(_, m)| VertexSet::from_bits(h.n(), m))
                .ok_or_else(|| CriticalityError::NotTauCritical {
                    reason: format!("no minimum transversal contains vertex {vertex}"),
                })?;
            let avoiding = tau_constrained(h, 0, bit, Some(tau))
                .map(|(_, m)| VertexSet::from_bits(h.n(), m))
                .ok_or_else(|| CriticalityError::NotTauCritical {
                    reason: format!("no minimum transversal avoids vertex {vertex}"),
                })?;
            Ok(VertexTransversals {
                vertex,
                containing,
                avoiding,
            })
        })
        .collect::<Result<Vec<_>, CriticalityError>>()?;
    Ok(Observation2Report { tau, per_vertex })
}

pub(crate) fn describe_non_criticality(report: &CriticalityReport) -> String {
    if !report.isolated.is_empty() {
        return format!("isolated vertices {}", report.isolated);
    }
    if report.tau == 0 {
        return "no edges".to_string();
    }
    match report.non_dropping_edge() {
        Some(d) => format!(
            "deleting edge {} leaves tau at {} (expected {})",
            d.edge,
            d.tau_without,
            report.tau - 1
        ),
        None => "criticality holds".to_string(),
    }
}

/// Greedily deletes edges whose removal preserves tau (lexicographically
/// first removable edge each pass), then restricts to the spanned vertices.
/// The result is tau-critical with the same tau as the input.
pub fn extract_tau_critical(h: &Hypergraph) -> Result<Hypergraph, CriticalityError> {
    if h.edge_count() == 0 {
        return Err(CriticalityError::NoEdges);
    }
    let (tau, _) = tau_mask(h);
    let mut current = h.clone();
    'pass: loop {
        for edge in current.edges().collect::<Vec<_>>() {
            let candidate = current.delete_edge(&edge).expect("iterating actual edges");
            if tau_mask(&candidate).0 == tau {
                current = candidate;
                continue 'pass;
            }
        }
        break;
    }
    let edges: Vec<VertexSet> = current.edges().collect();
    let (spanned, _) = current.spanned_subhypergraph(&edges)?;
    Ok(spanned)
}

/// Witness diagnostics: the maximum-clique family, its intersection and
/// union. `is_witness` holds iff the intersection is empty; coverage of all
/// vertices by the family is exposed but deliberately not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub k: u32,
    pub cliques: Vec<VertexSet>,
    pub intersection: VertexSet,
    pub union: VertexSet,
    pub is_witness: bool,
}

pub fn witness_report(h: &Hypergraph, cap: usize) -> Result<WitnessReport, CriticalityError> {
    let cliques = enumerate_max_cliques(h, cap)?;
    let k = cliques.first().map_or(0, |c| c.card());
    let mut intersection = VertexSet::full(h.n());
    let mut union = VertexSet::empty(h.n());
    for c in &cliques {
        intersection = intersection.intersection(c);
        union = union.union(c);
    }
    Ok(WitnessReport {
        k,
        is_witness: intersection.is_empty(),
        cliques,
        intersection,
        union,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::oracle;

    fn h(r: u32, n: u32, edges: &[&[u32]]) -> Hypergraph {
        let lists: Vec<Vec<u32>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::from_edge_lists(r, n, &lists).unwrap()
    }

    fn cycle(n: u32) -> Hypergraph {
        let edges: Vec<Vec<u32>> = (0..n).map(|i| {
            let mut e = vec![i, (i + 1) % n];
            e.sort();
            e
        }).collect();
        Hypergraph::from_edge_lists(2, n, &edges).unwrap()
    }

    #[test]
    fn disjoint_edges_are_tau_critical() {
        for t in 1..4u32 {
            let edges: Vec<Vec<u32>> = (0..t).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
            let g = Hypergraph::from_edge_lists(3, 3 * t, &edges).unwrap();
            let report = criticality(&g);
            assert!(report.is_tau_critical);
            assert_eq!(report.tau, t);
        }
    }

    #[test]
    fn path_is_not_tau_critical() {
        // Brute force on both partial graphs: tau stays 1 after one deletion.
        let path = h(2, 3, &[&[0, 1], &[1, 2]]);
        assert_eq!(oracle::brute_tau(&path).unwrap(), 1);
        let without = path
            .delete_edge(&VertexSet::from_vertices(3, &[0, 1]).unwrap())
            .unwrap();
        assert_eq!(oracle::brute_tau(&without).unwrap(), 1);

        let report = criticality(&path);
        assert!(!report.is_tau_critical);
        let bad = report.non_dropping_edge().unwrap();
        assert_eq!(bad.tau_without, 1);
    }

    #[test]
    fn complete_graph_is_tau_critical() {
        let k4 = Hypergraph::complete(2, 4).unwrap();
        let report = criticality(&k4);
        assert_eq!(report.tau, 3);
        assert!(report.is_tau_critical);
        for d in &report.per_edge {
            assert_eq!(d.tau_without, 2);
        }
    }

    #[test]
    fn vertex_criticality_examples() {
        assert!(is_vertex_critical(&h(2, 4, &[&[0, 1], &[2, 3]])));
        // Isolated vertex 2 is in no minimum transversal.
        assert!(!is_vertex_critical(&h(2, 3, &[&[0, 1]])));
        assert!(is_vertex_critical(&cycle(5)));
    }

    #[test]
    fn vertex_criticality_matches_enumeration() {
        // The delete-vertex criterion agrees with scanning all minimum
        // transversals for coverage.
        for g in [
            cycle(5),
            cycle(4),
            h(2, 3, &[&[0, 1], &[1, 2]]),
            h(2, 4, &[&[0, 1], &[2, 3]]),
            h(3, 5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]),
            Hypergraph::complete(2, 4).unwrap(),
        ] {
            let all = crate::solve::enumerate_min_transversals(&g, 10_000).unwrap();
            let by_enum = (0..g.n()).all(|v| all.iter().any(|t| t.contains(v)));
            assert_eq!(is_vertex_critical(&g), by_enum, "mismatch on {g:?}");
        }
    }

    #[test]
    fn tau_critical_implies_vertex_critical() {
        for g in [
            h(2, 4, &[&[0, 1], &[2, 3]]),
            Hypergraph::complete(2, 4).unwrap(),
            cycle(5),
            h(3, 6, &[&[0, 1, 2], &[3, 4, 5]]),
        ] {
            let report = criticality(&g);
            assert!(report.is_tau_critical);
            assert!(report.is_vertex_critical);
        }
    }

    #[test]
    fn observation2_on_two_disjoint_edges() {
        let g = h(2, 4, &[&[0, 1], &[2, 3]]);
        let report = check_observation2(&g).unwrap();
        assert_eq!(report.tau, 2);
        let v0 = &report.per_vertex[0];
        assert!(v0.containing.contains(0));
        assert!(!v0.avoiding.contains(0));
    }

    #[test]
    fn observation2_on_k4_and_cycle() {
        for g in [Hypergraph::complete(2, 4).unwrap(), cycle(5)] {
            let report = check_observation2(&g).unwrap();
            for v in &report.per_vertex {
                assert!(v.containing.contains(v.vertex));
                assert!(!v.avoiding.contains(v.vertex));
                assert_eq!(v.containing.card(), report.tau);
                assert_eq!(v.avoiding.card(), report.tau);
            }
        }
    }

    #[test]
    fn observation2_rejects_non_critical() {
        let path = h(2, 3, &[&[0, 1], &[1, 2]]);
        assert!(matches!(
            check_observation2(&path),
            Err(CriticalityError::NotTauCritical { .. })
        ));
    }

    #[test]
    fn extraction_fixes_nothing_on_critical_input() {
        let g = h(2, 4, &[&[0, 1], &[2, 3]]);
        let out = extract_tau_critical(&g).unwrap();
        assert_eq!(out, g);
    }

    #[test]
    fn extraction_on_path() {
        // Brute-force tau at each step: the path keeps tau=1 after deleting
        // one edge, so extraction ends at a single edge.
        let path = h(2, 3, &[&[0, 1], &[1, 2]]);
        let out = extract_tau_critical(&path).unwrap();
        assert_eq!(out.edge_count(), 1);
        assert_eq!(out.n(), 2);
        assert_eq!(oracle::brute_tau(&out).unwrap(), 1);
        assert!(is_tau_critical(&out));
    }

    #[test]
    fn extraction_on_k4_plus_pendant() {
        let mut edges: Vec<Vec<u32>> = vec![];
        for a in 0..4u32 {
            for b in (a + 1)..4 {
                edges.push(vec![a, b]);
            }
        }
        edges.push(vec![0, 4]);
        let g = Hypergraph::from_edge_lists(2, 5, &edges).unwrap();
        assert_eq!(tau_mask(&g).0, 3);
        let out = extract_tau_critical(&g).unwrap();
        assert!(is_tau_critical(&out));
        assert_eq!(tau_mask(&out).0, 3);
    }

    #[test]
    fn witness_examples() {
        // The 4-cycle is the complement of a perfect matching on 4 vertices:
        // omega=2, the four edges are the maximum cliques, no common vertex.
        let c4 = h(2, 4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let report = witness_report(&c4, 1000).unwrap();
        assert_eq!(report.k, 2);
        assert_eq!(report.cliques.len(), 4);
        assert!(report.is_witness);
        assert_eq!(report.union.card(), 4);

        let k4 = Hypergraph::complete(2, 4).unwrap();
        let report = witness_report(&k4, 1000).unwrap();
        assert_eq!(report.k, 4);
        assert!(!report.is_witness);
        assert_eq!(report.intersection.card(), 4);
    }

    #[test]
    fn extraction_spans_vertex_critical_inputs() {
        // On a vertex-critical hypergraph, every tau-preserving extraction
        // spans all vertices. C4 and C6 are vertex-critical but not
        // tau-critical, so extraction genuinely deletes edges here.
        for n in [4u32, 6] {
            let g = cycle(n);
            assert!(is_vertex_critical(&g));
            assert!(!is_tau_critical(&g));
            let out = extract_tau_critical(&g).unwrap();
            assert_eq!(out.n(), n, "extraction must span all of V");
            assert!(is_tau_critical(&out));
            assert_eq!(tau_mask(&out).0, tau_mask(&g).0);
        }
        // And a non-vertex-critical control: the path loses its endpoints.
        let path = h(2, 3, &[&[0, 1], &[1, 2]]);
        assert!(!is_vertex_critical(&path));
        assert!(extract_tau_critical(&path).unwrap().n() < 3);
    }

    #[test]
    fn graph_witnesses_need_at_least_2k_vertices() {
        // Witness graphs satisfy n >= 2*omega.
        for t in 2..=4u32 {
            let edges: Vec<Vec<u32>> = (0..t).map(|i| vec![2 * i, 2 * i + 1]).collect();
            let matching = Hypergraph::from_edge_lists(2, 2 * t, &edges).unwrap();
            let witness = matching.complement().unwrap();
            let report = witness_report(&witness, 10_000).unwrap();
            assert!(report.is_witness);
            assert!(witness.n() >= 2 * report.k);
        }
        let c4 = h(2, 4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let report = witness_report(&c4, 10_000).unwrap();
        assert!(report.is_witness && c4.n() >= 2 * report.k);
    }

    #[test]
    fn small_graphs_with_omega_3_are_never_witnesses() {
        // On 2k-1 = 5 vertices with omega = 3 the maximum cliques must share
        // a vertex, so no witness exists (Hajnal-Folkman consequence).
        let candidates = [
            h(2, 5, &[&[0, 1], &[0, 2], &[1, 2], &[2, 3], &[3, 4]]),
            h(2, 5, &[&[0, 1], &[0, 2], &[1, 2], &[1, 3], &[2, 3], &[3, 4]]),
            h(2, 5, &[&[0, 1], &[0, 2], &[1, 2], &[2, 3], &[2, 4], &[3, 4]]),
        ];
        for g in candidates {
            let report = witness_report(&g, 1000).unwrap();
            assert_eq!(report.k, 3);
            assert!(!report.is_witness);
        }
    }
}
