//! Executable complementarity: the Gallai-type identities and both directions
//! of the witness/criticality equivalence.
//!
//! Every transform here re-verifies its claims with the exact solvers instead
//! of trusting the construction; at desk scale the recomputation is free and
//! the checks double as a mechanized test of the underlying identities.

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalCode};
use crate::critical::{
    criticality, describe_non_criticality, extract_tau_critical, witness_report, CriticalityError,
};
use crate::hypergraph::{Hypergraph, HypergraphError};
use crate::solve::{oracle, tau_mask, SolveError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("precondition failed: input is not a witness hypergraph ({clause})")]
    NotAWitness { clause: String },
    #[error("precondition failed: input is not tau-critical ({clause})")]
    NotTauCritical { clause: String },
    #[error("internal inconsistency: {0} — this indicates a solver bug")]
    Inconsistent(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Criticality(#[from] CriticalityError),
}

/// The five quantities of the complementarity identities, each computed on
/// its own route: tau by branch-and-bound on H and on the complement, alpha
/// and omega by the direct oracle searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiReport {
    pub n: u32,
    pub alpha: u32,
    pub tau: u32,
    pub omega: u32,
    pub alpha_complement: u32,
    pub tau_complement: u32,
    pub omega_complement: u32,
    /// n = alpha(H) + tau(H)
    pub identity_alpha: bool,
    /// n = omega(complement) + tau(H)
    pub identity_omega_complement: bool,
    /// n = omega(H) + tau(complement)
    pub identity_omega: bool,
}

impl GallaiReport {
    pub fn all_hold(&self) -> bool {
        self.identity_alpha && self.identity_omega_complement && self.identity_omega
    }
}

/// Checks `n = alpha(H) + tau(H) = omega(complement) + tau(H)
/// = omega(H) + tau(complement)` with independently computed sides.
pub fn gallai_check(h: &Hypergraph) -> Result<GallaiReport, DualityError> {
    let complement = h.complement()?;
    let n = h.n();
    let tau = tau_mask(h).0;
    let tau_complement = tau_mask(&complement).0;
    let alpha = oracle::direct_alpha(h).value;
    let alpha_complement = oracle::direct_alpha(&complement).value;
    let omega = oracle::direct_omega(h).value;
    let omega_complement = oracle::direct_omega(&complement).value;
    let report = GallaiReport {
        n,
        alpha,
        tau,
        omega,
        alpha_complement,
        tau_complement,
        omega_complement,
        identity_alpha: n == alpha + tau,
        identity_omega_complement: n == omega_complement + tau,
        identity_omega: n == omega + tau_complement,
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    WitnessToCritical,
    CriticalToWitness,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::WitnessToCritical => "witness-to-critical",
            Direction::CriticalToWitness => "critical-to-witness",
        }
    }
}

/// Transcript of one equivalence direction: parameters, the intermediate
/// complement, the output hypergraph, and the re-verified claims.
#[derive(Clone, Debug)]
pub struct EquivalenceTrace {
    pub direction: Direction,
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub complement: Hypergraph,
    pub output: Hypergraph,
    pub transcript: Vec<(String, String)>,
}

/// From a witness hypergraph (omega = k, maximum cliques share no vertex) to
/// a spanning tau-critical hypergraph with tau = n - k: complement, confirm
/// vertex-criticality, extract a tau-critical partial hypergraph.
pub fn witness_to_critical(h: &Hypergraph, cap: usize) -> Result<EquivalenceTrace, DualityError> {
    let witness = witness_report(h, cap)?;
    if !witness.is_witness {
        return Err(DualityError::NotAWitness {
            clause: format!(
                "maximum cliques share the vertices {}",
                witness.intersection
            ),
        });
    }
    let n = h.n();
    let k = witness.k;
    let t = n - k;
    let mut transcript = vec![
        ("omega".to_string(), k.to_string()),
        ("max_cliques".to_string(), witness.cliques.len().to_string()),
        ("clique_intersection".to_string(), witness.intersection.to_string()),
    ];

    let complement = h.complement()?;
    let tau_hat = tau_mask(&complement).0;
    if tau_hat != t {
        return Err(DualityError::Inconsistent(format!(
            "tau(complement) = {tau_hat}, expected n - k = {t}"
        )));
    }
    transcript.push(("tau_complement".to_string(), tau_hat.to_string()));

    let complement_report = criticality(&complement);
    if !complement_report.is_vertex_critical {
        return Err(DualityError::Inconsistent(
            "complement of a witness must be vertex-critical".to_string(),
        ));
    }
    transcript.push(("complement_vertex_critical".to_string(), "true".to_string()));

    transcript.push((
        "extraction_order".to_string(),
        "lexicographic-first-removable".to_string(),
    ));
    let output = extract_tau_critical(&complement)?;
    if output.n() != n {
        return Err(DualityError::Inconsistent(format!(
            "extracted tau-critical partial hypergraph spans {} vertices, expected {n}",
            output.n()
        )));
    }
    let out_report = criticality(&output);
    if !out_report.is_tau_critical || out_report.tau != t {
        return Err(DualityError::Inconsistent(format!(
            "extraction produced tau = {}, tau-critical = {}",
            out_report.tau, out_report.is_tau_critical
        )));
    }
    transcript.push(("output_spans".to_string(), output.n().to_string()));
    transcript.push(("output_tau".to_string(), out_report.tau.to_string()));
    transcript.push(("output_tau_critical".to_string(), "true".to_string()));

    Ok(EquivalenceTrace {
        direction: Direction::WitnessToCritical,
        n,
        k,
        t,
        complement,
        output,
        transcript,
    })
}

/// From a tau-critical hypergraph with tau = t to an (n, n-t)-witness: the
/// complement, whose maximum cliques have empty intersection and cover V.
pub fn critical_to_witness(h: &Hypergraph, cap: usize) -> Result<EquivalenceTrace, DualityError> {
    let report = criticality(h);
    if !report.is_tau_critical {
        return Err(DualityError::NotTauCritical {
            clause: describe_non_criticality(&report),
        });
    }
    let n = h.n();
    let t = report.tau;
    let k = n - t;
    let mut transcript = vec![("tau".to_string(), t.to_string())];

    let output = h.complement()?;
    let witness = witness_report(&output, cap)?;
    if witness.k != k {
        return Err(DualityError::Inconsistent(format!(
            "omega(complement) = {}, expected n - t = {k}",
            witness.k
        )));
    }
    if !witness.is_witness {
        return Err(DualityError::Inconsistent(format!(
            "maximum cliques of the complement share {}",
            witness.intersection
        )));
    }
    if witness.union.card() != n {
        return Err(DualityError::Inconsistent(format!(
            "maximum cliques of the complement cover only {}",
            witness.union
        )));
    }
    transcript.push(("omega_complement".to_string(), witness.k.to_string()));
    transcript.push(("max_cliques".to_string(), witness.cliques.len().to_string()));
    transcript.push(("clique_intersection".to_string(), witness.intersection.to_string()));
    transcript.push(("clique_union_covers".to_string(), "true".to_string()));

    Ok(EquivalenceTrace {
        direction: Direction::CriticalToWitness,
        n,
        k,
        t,
        complement: output.clone(),
        output,
        transcript,
    })
}

/// Outcome of composing both directions starting from a tau-critical input.
#[derive(Clone, Debug)]
pub struct RoundTripReport {
    pub to_witness: EquivalenceTrace,
    pub back_to_critical: EquivalenceTrace,
    pub parameters_preserved: bool,
    pub input_code: CanonicalCode,
    pub output_code: CanonicalCode,
    /// Whether the round trip reproduced the input up to isomorphism. The
    /// equivalence only guarantees parameter equality, so this is data, not a
    /// requirement.
    pub canonically_equal: bool,
}

pub fn round_trip_check(h: &Hypergraph, cap: usize) -> Result<RoundTripReport, DualityError> {
    let to_witness = critical_to_witness(h, cap)?;
    let back_to_critical = witness_to_critical(&to_witness.output, cap)?;
    let parameters_preserved =
        back_to_critical.output.n() == h.n() && back_to_critical.t == to_witness.t;
    let input_code = canonical_form(h);
    let output_code = canonical_form(&back_to_critical.output);
    let canonically_equal = input_code == output_code;
    Ok(RoundTripReport {
        to_witness,
        back_to_critical,
        parameters_preserved,
        input_code,
        output_code,
        canonically_equal,
    })
}

/// Serializes a trace transcript as `key: value` lines.
pub fn transcript_lines(trace: &EquivalenceTrace) -> String {
    let mut out = String::new();
    out.push_str(&format!("direction: {}\n", trace.direction.as_str()));
    out.push_str(&format!("n: {}\nk: {}\nt: {}\n", trace.n, trace.k, trace.t));
    for (key, value) in &trace.transcript {
        out.push_str(&format!("{key}: {value}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

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
    fn gallai_on_k5() {
        let report = gallai_check(&Hypergraph::complete(2, 5).unwrap()).unwrap();
        assert_eq!(report.alpha, 1);
        assert_eq!(report.tau, 4);
        assert_eq!(report.omega, 5);
        assert_eq!(report.tau_complement, 0);
        assert_eq!(report.omega_complement, 1);
        assert!(report.all_hold());
    }

    #[test]
    fn gallai_on_edgeless() {
        let report = gallai_check(&Hypergraph::edgeless(3, 5).unwrap()).unwrap();
        assert_eq!(report.alpha, 5);
        assert_eq!(report.tau, 0);
        assert_eq!(report.omega_complement, 5);
        assert!(report.all_hold());
    }

    #[test]
    fn gallai_on_mixed_instances() {
        for g in [
            cycle(5),
            cycle(6),
            h(3, 6, &[&[0, 1, 2], &[1, 2, 3], &[2, 4, 5]]),
            h(3, 6, &[&[0, 1, 2], &[3, 4, 5]]),
            h(4, 7, &[&[0, 1, 2, 3], &[2, 3, 4, 5], &[0, 4, 5, 6]]),
        ] {
            let report = gallai_check(&g).unwrap();
            assert!(report.all_hold(), "identities fail on {g:?}");
            assert_eq!(report.alpha, report.omega_complement);
            assert_eq!(report.alpha_complement, report.omega);
        }
    }

    #[test]
    fn witness_to_critical_on_four_cycle() {
        // The 4-cycle is a (4,2)-witness; its complement is the perfect
        // matching, already tau-critical with tau = 2 and spanning.
        let c4 = cycle(4);
        let trace = witness_to_critical(&c4, 1000).unwrap();
        assert_eq!((trace.n, trace.k, trace.t), (4, 2, 2));
        assert_eq!(trace.output.edge_count(), 2);
        assert_eq!(trace.output.n(), 4);
        let matching = h(2, 4, &[&[0, 2], &[1, 3]]);
        assert_eq!(trace.complement, matching);
        assert_eq!(trace.output, matching);
    }

    #[test]
    fn witness_to_critical_on_matching_complement() {
        let matching = h(2, 6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let witness = matching.complement().unwrap();
        let trace = witness_to_critical(&witness, 1000).unwrap();
        assert_eq!((trace.n, trace.k, trace.t), (6, 3, 3));
        assert_eq!(trace.output, matching);
    }

    #[test]
    fn witness_to_critical_rejects_non_witness() {
        let k4 = Hypergraph::complete(2, 4).unwrap();
        assert!(matches!(
            witness_to_critical(&k4, 1000),
            Err(DualityError::NotAWitness { .. })
        ));
    }

    #[test]
    fn critical_to_witness_on_matching() {
        let matching = h(2, 4, &[&[0, 1], &[2, 3]]);
        let trace = critical_to_witness(&matching, 1000).unwrap();
        assert_eq!((trace.n, trace.k, trace.t), (4, 2, 2));
        // The complement of the matching is the 4-cycle.
        assert_eq!(trace.output.edge_count(), 4);
    }

    #[test]
    fn critical_to_witness_on_single_triple() {
        // t = 1: the complement is edgeless, omega = 2 = n - 1 vacuously,
        // and the 2-cliques (all pairs) have empty intersection.
        let g = h(3, 3, &[&[0, 1, 2]]);
        let trace = critical_to_witness(&g, 1000).unwrap();
        assert_eq!((trace.n, trace.k, trace.t), (3, 2, 1));
        assert_eq!(trace.output.edge_count(), 0);
    }

    #[test]
    fn critical_to_witness_on_five_cycle() {
        let trace = critical_to_witness(&cycle(5), 1000).unwrap();
        assert_eq!((trace.n, trace.k, trace.t), (5, 2, 3));
        // The complement of C5 is another 5-cycle; its edges are the cliques.
        assert_eq!(trace.output.edge_count(), 5);
    }

    #[test]
    fn critical_to_witness_rejects_non_critical() {
        let path = h(2, 3, &[&[0, 1], &[1, 2]]);
        assert!(matches!(
            critical_to_witness(&path, 1000),
            Err(DualityError::NotTauCritical { .. })
        ));
    }

    #[test]
    fn round_trip_on_matchings_is_identity() {
        for t in 1..4u32 {
            let edges: Vec<Vec<u32>> = (0..t).map(|i| vec![2 * i, 2 * i + 1]).collect();
            let matching = Hypergraph::from_edge_lists(2, 2 * t, &edges).unwrap();
            let report = round_trip_check(&matching, 10_000).unwrap();
            assert!(report.parameters_preserved);
            assert!(report.canonically_equal);
        }
    }

    #[test]
    fn round_trip_preserves_parameters() {
        for g in [cycle(5), Hypergraph::complete(2, 4).unwrap()] {
            let report = round_trip_check(&g, 10_000).unwrap();
            assert!(report.parameters_preserved);
        }
    }
}
