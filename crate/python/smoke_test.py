"""Smoke test for the becurv extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
or `pip install --no-build-isolation ./crates/python`.
"""

import json
import math

import becurv


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    k2 = becurv.Graph.complete(2)
    assert (k2.n, k2.edge_count) == (2, 1)
    for m, want in [(2.0, 1.0), (5.0, 1.6), ("inf", 2.0), (math.inf, 2.0)]:
        kappa, _, _ = becurv.curvature(k2, m)
        assert close(kappa, want, 1e-12), (m, kappa)

    q3 = becurv.Graph.hypercube(3)
    lam = becurv.spectrum(q3)
    assert close(lam[0], 0.0) and close(lam[1], 2.0 / 3.0), lam
    kappa, argmin, per_vertex = becurv.curvature(q3, "inf")
    assert close(kappa, 2.0 / 3.0) and len(per_vertex) == 8
    assert close(becurv.oracle_kappa(q3, 0, "inf"), kappa, 1e-6)

    g = becurv.Graph.from_edge_list("a b 2\nb c 0.5\nc a\nc d 1.5\n")
    assert g.labels == ["a", "b", "c", "d"]
    assert becurv.Graph.from_edge_list(g.to_edge_list()).edges == g.edges
    for x in range(g.n):
        assert close(becurv.oracle_kappa(g, x, 2.0), becurv.vertex_kappa(g, x, 2.0), 1e-6)

    report = json.loads(becurv.verify(g, [2.0, "inf"], alpha=[3.0, 5.0], samples=100))
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    assert not failed, failed

    try:
        becurv.Graph.from_edge_list("a a\n")
    except ValueError as e:
        assert "self-loop" in str(e)
    else:
        raise AssertionError("self-loop accepted")
    try:
        becurv.curvature(k2, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("m = 1 accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
