//! Verifiable certificates: a hypergraph plus claimed parameters (r, t, n)
//! and a transcript of per-edge tau drops. Verification recomputes everything
//! from the hypergraph alone and accepts only if every claim and every
//! transcript line is reproduced.
//!
//! Certificate text: a hypergraph block, a blank line, then
//! `claim r=<r> t=<t> n=<n>` followed by `edge <v,..,v> tau_drop <d>` lines.
//!
//! The store is an append-only directory of certificate files keyed by
//! canonical code, so independent runs accumulate and never clobber.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalCode};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::solve::tau_mask;
use crate::text::{self, ParseError};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: expected `claim r=<r> t=<t> n=<n>`, found `{found}`")]
    MalformedClaim { line: usize, found: String },
    #[error("line {line}: malformed transcript line `{found}`")]
    MalformedTranscript { line: usize, found: String },
    #[error("missing claim line after the hypergraph block")]
    MissingClaim,
    #[error("cannot build a certificate: {reason}")]
    NotCertifiable { reason: String },
    #[error("store error at {path}: {source}")]
    Store {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// A hypergraph with claimed parameters and the per-edge drop transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalCertificate {
    pub hypergraph: Hypergraph,
    pub r: u32,
    pub t: u32,
    pub n: u32,
    /// `(edge, tau(H) - tau(H - e))` for every edge, in lexicographic order.
    pub transcript: Vec<(VertexSet, u32)>,
    pub canonical: CanonicalCode,
}

/// Builds a certificate for a tau-critical hypergraph with tau = t,
/// recomputing the transcript. Fails if the input does not qualify.
pub fn certificate_for(h: &Hypergraph, t: u32) -> Result<ExtremalCertificate, CertificateError> {
    let not = |reason: String| CertificateError::NotCertifiable { reason };
    if !h.isolated_vertices().is_empty() {
        return Err(not(format!("isolated vertices {}", h.isolated_vertices())));
    }
    let tau = tau_mask(h).0;
    if tau != t {
        return Err(not(format!("tau is {tau}, claimed {t}")));
    }
    let mut transcript = Vec::with_capacity(h.edge_count());
    for edge in h.edges() {
        let partial = h.delete_edge(&edge).expect("iterating actual edges");
        let drop = tau - tau_mask(&partial).0;
        if drop != 1 {
            return Err(not(format!(
                "deleting edge {edge} drops tau by {drop}, not 1"
            )));
        }
        transcript.push((edge, drop));
    }
    Ok(ExtremalCertificate {
        r: h.r(),
        t,
        n: h.n(),
        canonical: canonical_form(h),
        hypergraph: h.clone(),
        transcript,
    })
}

pub fn serialize_certificate(cert: &ExtremalCertificate) -> String {
    let mut out = text::serialize(&cert.hypergraph);
    out.push('\n');
    out.push_str(&format!("claim r={} t={} n={}\n", cert.r, cert.t, cert.n));
    for (edge, drop) in &cert.transcript {
        let vs: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("edge {} tau_drop {}\n", vs.join(","), drop));
    }
    out
}

pub fn parse_certificate(input: &str) -> Result<ExtremalCertificate, CertificateError> {
    let mut lines = text::Lines::new(input);
    let hypergraph = text::parse_block(&mut lines)?.ok_or(ParseError::Empty)?;

    // Claim line.
    let (claim_line, claim_text) = loop {
        let Some(raw) = lines.next_line() else {
            return Err(CertificateError::MissingClaim);
        };
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        break (lines.line, t);
    };
    let malformed_claim = || CertificateError::MalformedClaim {
        line: claim_line,
        found: claim_text.to_string(),
    };
    let mut tokens = claim_text.split_whitespace();
    if tokens.next() != Some("claim") {
        return Err(malformed_claim());
    }
    let parse_kv = |token: Option<&str>, key: &str| -> Option<u32> {
        token?.strip_prefix(key)?.strip_prefix('=')?.parse().ok()
    };
    let (r, t, n) = match (
        parse_kv(tokens.next(), "r"),
        parse_kv(tokens.next(), "t"),
        parse_kv(tokens.next(), "n"),
        tokens.next(),
    ) {
        (Some(r), Some(t), Some(n), None) => (r, t, n),
        _ => return Err(malformed_claim()),
    };

    // Transcript lines until end of input.
    let mut transcript = Vec::new();
    while let Some(raw) = lines.next_line() {
        let line_text = raw.trim();
        if line_text.is_empty() || line_text.starts_with('#') {
            continue;
        }
        let line = lines.line;
        let malformed = || CertificateError::MalformedTranscript {
            line,
            found: line_text.to_string(),
        };
        let mut tokens = line_text.split_whitespace();
        if tokens.next() != Some("edge") {
            return Err(malformed());
        }
        let vertices: Vec<u32> = tokens
            .next()
            .ok_or_else(malformed)?
            .split(',')
            .map(|s| s.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed())?;
        if tokens.next() != Some("tau_drop") {
            return Err(malformed());
        }
        let drop: u32 = tokens
            .next()
            .ok_or_else(malformed)?
            .parse()
            .map_err(|_| malformed())?;
        if tokens.next().is_some() {
            return Err(malformed());
        }
        let edge = VertexSet::from_vertices(hypergraph.n(), &vertices).map_err(|source| {
            CertificateError::Parse(ParseError::Invalid { line, source })
        })?;
        transcript.push((edge, drop));
    }

    Ok(ExtremalCertificate {
        canonical: canonical_form(&hypergraph),
        hypergraph,
        r,
        t,
        n,
        transcript,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationClause {
    pub name: &'static str,
    pub detail: String,
    pub pass: bool,
}

/// Outcome of re-deriving a certificate from its hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub clauses: Vec<VerificationClause>,
    pub accepted: bool,
}

impl VerificationReport {
    /// Name of the first failing clause, when rejected.
    pub fn first_failure(&self) -> Option<&VerificationClause> {
        self.clauses.iter().find(|c| !c.pass)
    }
}

/// Recomputes tau, every per-edge drop, and the no-isolated-vertex condition
/// from scratch; transcript lines must match the recomputation exactly.
pub fn verify_certificate(cert: &ExtremalCertificate) -> VerificationReport {
    let h = &cert.hypergraph;
    let mut clauses = Vec::new();

    clauses.push(VerificationClause {
        name: "uniformity",
        detail: format!("hypergraph has r={}, claim says r={}", h.r(), cert.r),
        pass: h.r() == cert.r,
    });
    clauses.push(VerificationClause {
        name: "order",
        detail: format!("hypergraph has n={}, claim says n={}", h.n(), cert.n),
        pass: h.n() == cert.n,
    });
    let isolated = h.isolated_vertices();
    clauses.push(VerificationClause {
        name: "no-isolated-vertex",
        detail: if isolated.is_empty() {
            "every vertex lies in an edge".to_string()
        } else {
            format!("isolated vertices {isolated}")
        },
        pass: isolated.is_empty(),
    });

    let tau = tau_mask(h).0;
    clauses.push(VerificationClause {
        name: "transversal-number",
        detail: format!("recomputed tau={tau}, claim says t={}", cert.t),
        pass: tau == cert.t,
    });

    let mut drops: Vec<(VertexSet, u32)> = Vec::with_capacity(h.edge_count());
    let mut criticality_pass = true;
    let mut criticality_detail = "every edge deletion lowers tau by one".to_string();
    for edge in h.edges() {
        let partial = h.delete_edge(&edge).expect("iterating actual edges");
        let drop = tau - tau_mask(&partial).0;
        if drop != 1 && criticality_pass {
            criticality_pass = false;
            criticality_detail = format!("deleting edge {edge} drops tau by {drop}, not 1");
        }
        drops.push((edge, drop));
    }
    clauses.push(VerificationClause {
        name: "edge-criticality",
        detail: criticality_detail,
        pass: criticality_pass,
    });

    let mut transcript_pass = true;
    let mut transcript_detail = "every transcript line reproduced".to_string();
    for (edge, stated) in &cert.transcript {
        match drops.iter().find(|(e, _)| e == edge) {
            Some((_, recomputed)) if recomputed == stated => {}
            Some((_, recomputed)) => {
                if transcript_pass {
                    transcript_pass = false;
                    transcript_detail = format!(
                        "transcript says edge {edge} drops tau by {stated}, recomputed {recomputed}"
                    );
                }
            }
            None => {
                if transcript_pass {
                    transcript_pass = false;
                    transcript_detail = format!("transcript references non-edge {edge}");
                }
            }
        }
    }
    clauses.push(VerificationClause {
        name: "transcript",
        detail: transcript_detail,
        pass: transcript_pass,
    });

    let accepted = clauses.iter().all(|c| c.pass);
    VerificationReport { clauses, accepted }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100_0000_01b3);
    }
    hash
}

/// File name for a certificate, keyed by canonical code.
pub fn store_file_name(cert: &ExtremalCertificate) -> String {
    format!(
        "r{}_t{}_n{}_{:016x}.cert",
        cert.r,
        cert.t,
        cert.n,
        fnv1a64(cert.canonical.as_bytes())
    )
}

/// Writes a certificate into the store directory unless a file with its key
/// already exists. Returns the path either way.
pub fn store_certificate(
    dir: &Path,
    cert: &ExtremalCertificate,
) -> Result<PathBuf, CertificateError> {
    let wrap = |source: std::io::Error, path: PathBuf| CertificateError::Store { path, source };
    fs::create_dir_all(dir).map_err(|e| wrap(e, dir.to_path_buf()))?;
    let path = dir.join(store_file_name(cert));
    if !path.exists() {
        fs::write(&path, serialize_certificate(cert)).map_err(|e| wrap(e, path.clone()))?;
    }
    Ok(path)
}

/// One certificate file as found in a store scan.
pub struct StoreEntry {
    pub path: PathBuf,
    pub certificate: Result<ExtremalCertificate, CertificateError>,
    /// Set only when the certificate parsed and re-verified cleanly.
    pub verified: bool,
}

/// Reads every `*.cert` file in the directory, parsing and re-verifying each.
pub fn scan_store(dir: &Path) -> Result<Vec<StoreEntry>, CertificateError> {
    let wrap = |source: std::io::Error, path: PathBuf| CertificateError::Store { path, source };
    let mut entries = Vec::new();
    if !dir.exists() {
        return Ok(entries);
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| wrap(e, dir.to_path_buf()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "cert"))
        .collect();
    paths.sort();
    for path in paths {
        let contents = fs::read_to_string(&path).map_err(|e| wrap(e, path.clone()))?;
        let certificate = parse_certificate(&contents);
        let verified = certificate
            .as_ref()
            .map(|c| verify_certificate(c).accepted)
            .unwrap_or(false);
        entries.push(StoreEntry {
            path,
            certificate,
            verified,
        });
    }
    Ok(entries)
}

/// Largest order among verified certificates with the given parameters.
pub fn best_verified_order(dir: &Path, r: u32, t: u32) -> Result<Option<u32>, CertificateError> {
    let best = scan_store(dir)?
        .into_iter()
        .filter(|e| e.verified)
        .filter_map(|e| e.certificate.ok())
        .filter(|c| c.r == r && c.t == t)
        .map(|c| c.n)
        .max();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn matching(t: u32) -> Hypergraph {
        let edges: Vec<Vec<u32>> = (0..t).map(|i| vec![2 * i, 2 * i + 1]).collect();
        Hypergraph::from_edge_lists(2, 2 * t, &edges).unwrap()
    }

    #[test]
    fn matching_certificate_round_trips_and_verifies() {
        let cert = certificate_for(&matching(2), 2).unwrap();
        let text = serialize_certificate(&cert);
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(parsed, cert);
        let report = verify_certificate(&parsed);
        assert!(report.accepted, "{:?}", report.first_failure());
    }

    #[test]
    fn five_cycle_certificate_is_feasible_but_not_extremal() {
        // Certificates attest tau-criticality at the claimed t, not
        // extremality: the 5-cycle with t=3 verifies even though larger
        // orders exist at t=3.
        let edges: Vec<Vec<u32>> = (0..5).map(|i| {
            let mut e = vec![i, (i + 1) % 5];
            e.sort();
            e
        }).collect();
        let c5 = Hypergraph::from_edge_lists(2, 5, &edges).unwrap();
        let cert = certificate_for(&c5, 3).unwrap();
        assert!(verify_certificate(&cert).accepted);
    }

    #[test]
    fn deleting_an_edge_breaks_the_certificate() {
        let cert = certificate_for(&matching(2), 2).unwrap();
        let mutated = ExtremalCertificate {
            hypergraph: cert
                .hypergraph
                .delete_edge(&cert.hypergraph.edge(0))
                .unwrap(),
            ..cert
        };
        let report = verify_certificate(&mutated);
        assert!(!report.accepted);
        // Dropping an edge of a matching isolates both endpoints.
        assert_eq!(report.first_failure().unwrap().name, "no-isolated-vertex");
    }

    #[test]
    fn claim_perturbations_are_rejected() {
        let cert = certificate_for(&matching(2), 2).unwrap();
        let wrong_t = ExtremalCertificate { t: 3, ..cert.clone() };
        assert_eq!(
            verify_certificate(&wrong_t).first_failure().unwrap().name,
            "transversal-number"
        );
        let wrong_n = ExtremalCertificate { n: 5, ..cert.clone() };
        assert_eq!(
            verify_certificate(&wrong_n).first_failure().unwrap().name,
            "order"
        );
        let wrong_r = ExtremalCertificate { r: 3, ..cert };
        assert_eq!(
            verify_certificate(&wrong_r).first_failure().unwrap().name,
            "uniformity"
        );
    }

    #[test]
    fn transcript_divergence_is_rejected() {
        let mut cert = certificate_for(&matching(2), 2).unwrap();
        cert.transcript[0].1 = 2;
        let report = verify_certificate(&cert);
        assert!(!report.accepted);
        assert_eq!(report.first_failure().unwrap().name, "transcript");
    }

    #[test]
    fn non_critical_inputs_are_not_certifiable() {
        let path = Hypergraph::from_edge_lists(2, 3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(
            certificate_for(&path, 1),
            Err(CertificateError::NotCertifiable { .. })
        ));
        assert!(matches!(
            certificate_for(&matching(2), 3),
            Err(CertificateError::NotCertifiable { .. })
        ));
    }

    #[test]
    fn store_round_trip() {
        let dir = std::env::temp_dir().join(format!("taucrit-store-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let c2 = certificate_for(&matching(2), 2).unwrap();
        let c3 = certificate_for(&matching(3), 3).unwrap();
        store_certificate(&dir, &c2).unwrap();
        store_certificate(&dir, &c2).unwrap(); // append-only: second write is a no-op
        store_certificate(&dir, &c3).unwrap();
        let entries = scan_store(&dir).unwrap();
        assert_eq!(entries.len(), 2);
        assert!(entries.iter().all(|e| e.verified));
        assert_eq!(best_verified_order(&dir, 2, 3).unwrap(), Some(6));
        assert_eq!(best_verified_order(&dir, 2, 2).unwrap(), Some(4));
        assert_eq!(best_verified_order(&dir, 3, 2).unwrap(), None);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
