#!/usr/bin/env python3
"""Smoke test for the taucrit_py extension module.

Builds are plain cdylibs, so the script locates the compiled library under
target/, copies it next to a temp dir as an importable module, and runs a
quick pass over the main types and operations.

Usage:
    cargo build --release -p taucrit-py
    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path


def locate_extension(repo_root: Path) -> Path:
    candidates = [
        repo_root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libtaucrit_py.so", "libtaucrit_py.dylib", "taucrit_py.dll")
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit(
        "taucrit_py extension not found; run `cargo build --release -p taucrit-py` first"
    )


def import_module(repo_root: Path):
    source = locate_extension(repo_root)
    staging = Path(tempfile.mkdtemp(prefix="taucrit-py-"))
    suffix = ".pyd" if source.suffix == ".dll" else ".so"
    shutil.copy2(source, staging / f"taucrit_py{suffix}")
    sys.path.insert(0, str(staging))
    import taucrit_py

    return taucrit_py


def main() -> None:
    repo_root = Path(__file__).resolve().parent.parent
    tc = import_module(repo_root)

    # Parse / serialize round trip on the 5-cycle.
    c5 = tc.Hypergraph.parse("r=2 n=5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    assert c5.r == 2 and c5.n == 5 and c5.edge_count == 5
    assert tc.Hypergraph.parse(c5.serialize()) == c5

    # Exact invariants.
    assert c5.tau() == 3
    assert c5.alpha() == 2
    assert c5.omega() == 2
    assert len(c5.min_transversals()) == 5
    assert c5.gallai_check()["all_hold"]

    # Complement is an involution.
    assert c5.complement().complement() == c5

    # Criticality and the equivalence round trip on the perfect matching.
    m2 = tc.Hypergraph(2, 4, [[0, 1], [2, 3]])
    assert m2.is_tau_critical() and m2.is_vertex_critical()
    witness, trace = m2.to_witness()
    assert trace["t"] == 2 and trace["k"] == 2
    assert witness.witness_report()["is_witness"]
    back, _ = witness.to_critical()
    assert back == m2

    # Canonical forms identify isomorphs.
    path_a = tc.Hypergraph(2, 3, [[0, 1], [1, 2]])
    path_b = tc.Hypergraph(2, 3, [[0, 2], [0, 1]])
    assert path_a.canonical_hex() == path_b.canonical_hex()
    assert path_a.is_isomorphic_to(path_b)

    # Bound formulas.
    row = tc.bounds(3, 2)
    assert row["lower_gylt"] == 6
    assert row["conjecture3"] == 6
    assert row["tuza_upper3"] == "6"
    assert row["gylt_upper3"] == 10
    assert row["sp_upper3"] == 38

    # A small exhaustive search with certificates, verified end to end.
    record = tc.search_v_max(2, 2)
    assert record["best_order"] == 4 and record["exhaustive"]
    for cert_text in record["certificates"]:
        assert tc.verify_certificate(cert_text)["accepted"]

    # Mutated certificates are rejected.
    cert = m2.certificate(2)
    assert tc.verify_certificate(cert)["accepted"]
    tampered = cert.replace("claim r=2 t=2", "claim r=2 t=3")
    report = tc.verify_certificate(tampered)
    assert not report["accepted"]
    assert report["first_failure"] == "transversal-number"

    # Clique intersection checks.
    k5_minus_edge = tc.Hypergraph(
        2, 5, [[a, b] for a in range(5) for b in range(a + 1, 5) if (a, b) != (0, 1)]
    )
    hf = tc.hajnal_folkman_check(k5_minus_edge)
    assert hf["k"] == 4 and hf["intersection_size"] == 3 and hf["holds"]
    p2 = tc.problem2_check(k5_minus_edge)
    assert p2["holds"] and p2["lower_bound"] == hf["lower_bound"]

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
