from math import ceil, cos, pi

import numpy as np
import pytest

from specmono.certificates import (
    DualCertificate,
    margin_bound_value,
    margin_certificate,
    report,
    sphericity_certificate,
    sphericity_dimension_bound,
    sphericity_lower_bound,
    verify_dual_feasibility,
)
from specmono.embeddings import hamming_embedding, verify_spherical
from specmono.graphs import (
    Graph,
    HypothesisError,
    bipartite_minus_matching,
    complete_bipartite,
    cycle,
    double,
    hamming_halfcube,
)

K5 = Graph(5, tuple((i, j) for i in range(5) for j in range(i + 1, 5)))
MARGIN_GRAPHS = [cycle(5), cycle(7), hamming_halfcube(5), hamming_halfcube(7), double(cycle(5)),
                 cycle(9)]


def test_margin_cycle5():
    c = margin_certificate(cycle(5))
    lam2 = 2 * cos(2 * pi / 5)
    assert c.beta == pytest.approx(1 / lam2) == pytest.approx(1.618034, abs=1e-6)
    assert c.alpha == pytest.approx(0.4472, abs=1e-4)
    assert c.feasible and c.beta >= c.alpha >= 0
    mb = margin_bound_value(c)
    # hand evaluation: tr A = 5(1+alpha), 10 edge entries |alpha-beta|, 10 non-edge entries alpha
    hand = 5 * (1 + c.alpha) / (10 * abs(c.alpha - c.beta) + 10 * c.alpha)
    assert mb.ratio == pytest.approx(hand, rel=1e-12)
    assert mb.ratio == pytest.approx(0.4472, abs=1e-3)
    assert mb.closed_form == pytest.approx(2.036, abs=1e-3)


def test_margin_hypothesis():
    with pytest.raises(HypothesisError, match="λ2 > 2/n violated"):
        margin_certificate(complete_bipartite(3, 3))
    with pytest.raises(HypothesisError):
        margin_certificate(Graph(3, ((0, 1),)))


@pytest.mark.parametrize("g", MARGIN_GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_margin_properties(g):
    c = margin_certificate(g)
    assert c.feasible and c.beta >= c.alpha >= 0
    mb = margin_bound_value(c)
    assert 0 < mb.ratio <= mb.closed_form
    # spectrum of A: 0 at the Perron vector, 1 - beta*lambda elsewhere
    lam = np.linalg.eigvalsh(g.adjacency().astype(float))[::-1]
    expect = sorted([0.0] + [1 - c.beta * x for x in lam[1:]])
    assert np.allclose(np.linalg.eigvalsh(c.A), expect, atol=1e-6)
    assert np.allclose(c.A.sum(axis=1), 0, atol=1e-9)


@pytest.mark.parametrize("k", [5, 7, 9])
def test_weak_duality_hamming(k):
    g = hamming_halfcube(k)
    margin = verify_spherical(hamming_embedding(k), g).margin
    assert margin == pytest.approx(1 / k)
    assert margin <= margin_bound_value(margin_certificate(g)).ratio + 1e-8


def test_sphericity_k33():
    c = sphericity_certificate(complete_bipartite(3, 3))
    assert c.alpha == pytest.approx(2)
    m = complete_bipartite(3, 3).adjacency()
    assert np.allclose(c.A, np.ones((6, 6)) - 2 * m, atol=1e-12)
    assert c.objective == pytest.approx(3)
    assert np.allclose(np.linalg.eigvalsh(c.A), [0, 0, 0, 0, 0, 6], atol=1e-9)
    r = c.residuals
    assert r.feasible and r.psd >= -1e-9 and r.rowsum <= 1e-9 and r.sign <= 1e-9


def test_sphericity_hypotheses():
    with pytest.raises(HypothesisError):
        sphericity_certificate(K5)
    with pytest.raises(HypothesisError):
        sphericity_certificate(Graph(4, ((0, 1), (2, 3))))
    with pytest.raises(HypothesisError):
        sphericity_certificate(Graph(3, ((0, 1),)))


@pytest.mark.parametrize("g", [complete_bipartite(m, m) for m in (3, 4, 7)] +
                         [hamming_halfcube(3), cycle(4), cycle(6), bipartite_minus_matching(4)],
                         ids=lambda g: f"n{g.n}m{g.m}")
def test_sphericity_spectrum_and_objective(g):
    c = sphericity_certificate(g)
    n, d = g.n, int(g.degrees()[0])
    lam = np.linalg.eigvalsh(g.adjacency().astype(float))[::-1]
    expect = sorted([0.0] + [c.alpha * d - n - c.alpha * x for x in lam[1:]])
    assert np.allclose(np.linalg.eigvalsh(c.A), expect, atol=1e-6)
    closed = 0.5 * n * n * c.lambda2 / (d - c.lambda2) + 0.5 * n
    assert c.objective == pytest.approx(closed, abs=1e-6)


def test_sphericity_bounds():
    assert sphericity_lower_bound(complete_bipartite(50, 50)).bound == 17
    assert sphericity_lower_bound(complete_bipartite(3, 3)).bound == 1
    assert sphericity_dimension_bound(100, 2, 50) == 17
    assert sphericity_dimension_bound(6, 2, 3) == 1
    b = sphericity_lower_bound(hamming_halfcube(5)).bound
    assert 1 <= b <= 32
    bounds = [sphericity_lower_bound(complete_bipartite(m, m)).bound for m in range(5, 51, 5)]
    assert bounds == sorted(bounds)
    assert bounds == [max(1, ceil(2 * m / 5) - 3) for m in range(5, 51, 5)]


def test_infeasible_certificate_is_reported():
    g = complete_bipartite(2, 2)
    a = np.ones((4, 4)) - 2 * g.adjacency()
    a[0, 2] = a[2, 0] = 0.5
    c = DualCertificate("sphericity", a, 2.0, None, 0.0, 4)
    r = verify_dual_feasibility(c, g)
    assert not r.feasible and "edge_sign" in r.violated and "rowsum" in r.violated
    a = -np.eye(4)
    r = verify_dual_feasibility(DualCertificate("margin", a, 0.0, 0.0, 0.0, 4), g)
    assert "psd" in r.violated and r.psd == pytest.approx(-1)
    with pytest.raises(HypothesisError):
        margin_bound_value(DualCertificate("margin", a, 0.0, 0.0, 0.0, 4, residuals=r))


def test_report_key_order():
    c = sphericity_certificate(complete_bipartite(3, 3))
    doc = report(c, bound=1, diam=2)
    assert list(doc) == ["kind", "n", "d", "lambda2", "alpha", "objective", "residuals", "bound", "diameter"]
    m = report(margin_certificate(cycle(5)))
    assert list(m) == ["kind", "n", "d", "lambda2", "alpha", "beta", "objective", "residuals"]
