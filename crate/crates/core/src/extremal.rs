//! Bound formulas, the extremal search for the maximum order of tau-critical
//! hypergraphs, and verifiable certificates.

mod bounds;
mod certificate;
mod search;

pub use bounds::{
    bounds, gap_report, BoundsError, BoundsTable, GapReport, GapStatus, R3Bounds, Rational,
};
pub use certificate::{
    best_verified_order, certificate_for, parse_certificate, scan_store, serialize_certificate,
    store_certificate, store_file_name, verify_certificate, CertificateError, ExtremalCertificate,
    StoreEntry, VerificationClause, VerificationReport,
};
pub use search::{
    exhaustive_feasible, search_v_max, SearchError, SearchMode, SearchOutput, SearchRecord,
};
