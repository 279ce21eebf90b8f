import itertools
from math import comb, cos, pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specmono.graphs import (
    Graph,
    HypothesisError,
    bipartite_minus_matching,
    complete_bipartite,
    cycle,
    diameter,
    double,
    edge_edit_distance,
    expand_multiset,
    generate_graph,
    hamming_halfcube,
    hamming_spectrum_analytic,
    internal_edges,
    krawtchouk,
    mixing_bound_check,
    mixing_scan,
    spectral_summary,
    two_coloring,
)


def character_spectrum(k):
    """Eigenvalues of the half-cube as brute-force character sums."""
    gens = [g for g in range(1, 2**k) if bin(g).count("1") <= k // 2]
    return sorted(
        (sum((-1) ** bin(g & y).count("1") for g in gens) for y in range(2**k)), reverse=True
    )


def test_families_basic():
    g = complete_bipartite(3, 3)
    assert g.m == 9 and set(g.degrees()) == {3}
    h = hamming_halfcube(3)
    assert h.n == 8 and h.m == 12 and set(h.degrees()) == {3}
    d = double(cycle(5))
    assert d.n == 10 and set(d.degrees()) == {5}
    m = bipartite_minus_matching(4)
    assert m.m == 12 and (0, 4) not in m.edge_set() and (0, 5) in m.edge_set()
    assert generate_graph("cycle", 4) == cycle(4)
    with pytest.raises(ValueError):
        generate_graph("petersen")


def test_hamming_edges_match_definition():
    for k in (3, 4, 5):
        g = hamming_halfcube(k)
        expect = {(u, v) for u, v in itertools.combinations(range(2**k), 2)
                  if 1 <= bin(u ^ v).count("1") <= k // 2}
        assert g.edge_set() == expect


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(3, ((0, 3),))
    assert Graph(3, ((2, 0), (0, 2))).edges == ((0, 2),)


def test_double_preconditions():
    with pytest.raises(HypothesisError):
        double(Graph(3, ((0, 1),)))
    with pytest.raises(HypothesisError):
        double(complete_bipartite(2, 3))
    with pytest.raises(HypothesisError):
        double(Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))))


@pytest.mark.parametrize("base", [cycle(5), cycle(6), complete_bipartite(3, 3), hamming_halfcube(3),
                                  Graph(4, ((0, 1), (2, 3)))])
def test_double_spectrum(base):
    n = base.n
    dg = int(base.degrees()[0])
    lam = list(base.eigenvalues())
    lam.remove(max(lam))
    expect = sorted([n, 2 * dg - n] + [0] * (n - 1) + [2 * x for x in lam], reverse=True)
    assert np.allclose(double(base).eigenvalues(), expect, atol=1e-6)


def test_krawtchouk():
    assert krawtchouk(5, 2, 0) == 10
    assert krawtchouk(4, 1, 3) == -2
    for k in range(1, 8):
        for i in range(k + 1):
            assert krawtchouk(k, 0, i) == 1
            assert krawtchouk(k, 1, i) == k - 2 * i
        for s in range(k + 1):
            assert krawtchouk(k, s, 0) == comb(k, s)
    with pytest.raises(ValueError):
        krawtchouk(3, 4, 0)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_hamming_spectrum(k):
    analytic = hamming_spectrum_analytic(k)
    assert sum(v * m for v, m in analytic) == 0
    assert expand_multiset(analytic).tolist() == character_spectrum(k)
    assert np.allclose(hamming_halfcube(k).eigenvalues(), expand_multiset(analytic), atol=1e-6)
    lam2 = analytic[1][0]
    deg = analytic[0][0]
    assert lam2 / deg <= 2 / sqrt(k - 1)


def test_hamming_spectrum_k3_and_errors():
    assert hamming_spectrum_analytic(3) == [(3, 1), (1, 3), (-1, 3), (-3, 1)]
    nontrivial = [abs(v) for v, _ in hamming_spectrum_analytic(5)[1:]]
    assert max(nontrivial) <= comb(4, 2)
    with pytest.raises(ValueError):
        hamming_spectrum_analytic(4)


def test_spectral_summary_examples():
    s = spectral_summary(complete_bipartite(3, 3))
    assert np.allclose(s.eigenvalues, [3, 0, 0, 0, 0, -3], atol=1e-12) and s.diameter == 2
    assert s.is_regular and s.degree == 3 and s.delta == 0.5
    s = spectral_summary(cycle(5))
    c = 2 * cos(2 * pi / 5)
    assert np.allclose(s.eigenvalues, [2, c, c, -2 * cos(pi / 5), -2 * cos(pi / 5)], atol=1e-6)
    assert s.diameter == 2
    assert spectral_summary(Graph(4, ((0, 1), (2, 3)))).diameter == float("inf")
    assert not spectral_summary(Graph(3, ((0, 1),))).is_regular


def bfs_diameter(g):
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    best = 0
    for s in range(g.n):
        dist, frontier = {s: 0}, [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        if len(dist) < g.n:
            return float("inf")
        best = max(best, max(dist.values()))
    return best


def random_graphs(max_n=10):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                           .filter(lambda e: e[0] != e[1]), max_size=2 * n)
        .map(lambda es: Graph(n, tuple(es)))
    )


@settings(max_examples=80, deadline=None)
@given(random_graphs())
def test_graph_invariants(g):
    lam = g.eigenvalues()
    assert abs(lam.sum()) <= 1e-9
    assert (lam**2).sum() == pytest.approx(2 * g.m, abs=1e-8)
    assert diameter(g) == bfs_diameter(g)
    coloring = two_coloring(g)
    if coloring is not None:
        assert all(coloring[u] != coloring[v] for u, v in g.edges)
        assert np.allclose(lam, -lam[::-1], atol=1e-8)


def test_mixing_examples():
    g = complete_bipartite(3, 3)
    r = mixing_bound_check(g, [0, 1, 2])
    assert r.internal_edges == 0 and r.bound == pytest.approx(2.25) and r.ok
    r = mixing_bound_check(g, [0, 3])
    assert r.internal_edges == 1 and r.bound == pytest.approx(1.0) and r.ok
    with pytest.raises(HypothesisError):
        mixing_bound_check(cycle(5), [0])
    with pytest.raises(ValueError):
        mixing_bound_check(g, [])


HALF_REGULAR = [complete_bipartite(m, m) for m in (2, 3, 5, 7)] + [
    double(cycle(5)), double(cycle(6)), double(hamming_halfcube(3)), cycle(4)
]
REGULAR = [bipartite_minus_matching(m) for m in (2, 3, 4, 5)]


@pytest.mark.parametrize("g", HALF_REGULAR + REGULAR, ids=lambda g: f"n{g.n}m{g.m}")
def test_mixing_scan_matches_enumeration(g):
    scan = mixing_scan(g, strict=g not in REGULAR)
    assert scan.subsets == 2**g.n - 1
    lam2 = float(g.eigenvalues()[1])
    worst, viol = -np.inf, 0
    for r in range(1, g.n + 1):
        for u in itertools.combinations(range(g.n), r):
            slack = internal_edges(g, u) - (r * r / 4 + lam2 * r / 2)
            viol += slack > 1e-8
            worst = max(worst, slack)
    assert scan.violations == viol == 0
    assert scan.worst_slack == pytest.approx(worst, abs=1e-12)
    w = scan.worst_subset
    assert internal_edges(g, w) - (len(w) ** 2 / 4 + lam2 * len(w) / 2) == pytest.approx(worst, abs=1e-12)


def test_mixing_strictness():
    g = bipartite_minus_matching(3)
    with pytest.raises(HypothesisError):
        mixing_scan(g)
    assert mixing_bound_check(g, [0, 1], strict=False).ok
    with pytest.raises(HypothesisError):
        mixing_scan(Graph(3, ((0, 1),)), strict=False)


def test_mixing_bound_fails_below_n4():
    # lambda_2 = -1 for a single edge, so singletons already break the bound
    assert mixing_scan(complete_bipartite(1, 1)).violations == 3


def test_mixing_scan_counts_violations():
    # inflating lambda_2 downward via a negative tolerance exposes tight subsets
    g = complete_bipartite(2, 2)
    assert mixing_scan(g, tol=-10.0).violations == 15


def test_edit_distance():
    g = complete_bipartite(3, 3)
    assert edge_edit_distance(g, g) == 0
    assert edge_edit_distance(g, Graph(6, g.edges[1:])) == 1
    c4 = Graph(4, ((0, 2), (2, 1), (1, 3), (3, 0)))
    assert edge_edit_distance(complete_bipartite(2, 2), c4) == 0
    with pytest.raises(ValueError):
        edge_edit_distance(g, cycle(5))
