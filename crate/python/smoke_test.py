"""Smoke test for the `tilde` extension module.

Build and run from the repo root:

    cargo build -p tilde-py --release --features extension-module
    cp target/release/libtilde.so python/tilde.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import tilde  # noqa: E402


def main():
    c5 = tilde.Graph.cycle(5)
    assert (c5.n, c5.m, c5.min_degree()) == (5, 5, 2)
    assert tilde.alpha_tilde(c5)[0] == 3
    assert not tilde.condition_holds(c5)
    assert tilde.spectrum(c5).verdict == "not-applicable"

    k44 = tilde.Graph.complete_bipartite(4, 4)
    cert = tilde.spectrum(k44)
    assert cert.verdict == "bipartite-exception", cert
    assert cert.lengths == [4, 6, 8]
    cert.verify(k44)

    k7 = tilde.Graph.complete(7)
    cert = tilde.spectrum(k7)
    assert cert.lengths == list(range(3, 8))
    cert.verify(k7)
    assert sorted(tilde.oracle_spectrum(k7)) == cert.lengths

    # Tamper with a cycle and expect the verifier to name its length.
    doc = json.loads(cert.to_json())
    entry = next(c for c in doc["cycles"] if c["length"] == 5)
    entry["cycle"][2] = entry["cycle"][0]
    bad = tilde.Certificate.from_json(json.dumps(doc))
    try:
        bad.verify(k7)
    except ValueError as e:
        assert "length 5" in str(e), e
    else:
        raise AssertionError("tampered certificate verified")

    # A conditioned random graph with b >= 3 exercises the engine route.
    seed = 0
    while True:
        g = tilde.Graph.gnp(12, 0.75, seed)
        seed += 1
        if not tilde.condition_holds(g):
            continue
        k, a, b = tilde.alpha_tilde(g)
        if b >= 3 and tilde.oracle_spectrum(g).keys() != {4, 6, 8, 10, 12}:
            break
    tc = tilde.find_initial_tilde(g)
    tc.verify(g)
    short, long_ = tc.cycles()
    assert len(long_) == len(short) + 1 == len(tc) + 1
    if len(tc) + 1 < g.n:
        nxt, improvements = tilde.extend(g, tc)
        nxt.verify(g)
        assert len(nxt) in (len(tc) + 1, len(tc) + 2)
    cert = tilde.spectrum(g)
    assert cert.verdict == "pancyclic", cert
    assert cert.lengths == sorted(tilde.oracle_spectrum(g)) == list(range(3, g.n + 1))
    cert.verify(g)

    same = tilde.Graph.from_edge_list(g.to_edge_list())
    assert same.edges() == g.edges()

    try:
        tilde.Graph(3, [(0, 7)])
    except ValueError:
        pass
    else:
        raise AssertionError("bad edge accepted")

    print("smoke test: ok")


if __name__ == "__main__":
    main()
