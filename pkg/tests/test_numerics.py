import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specmono.numerics import (
    NotPSDError,
    as_symmetric,
    breve_transform,
    eig_sym,
    gram_factor,
    numerical_rank,
    psd_check,
    rank_lower_bound,
)


def random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2


def test_identity_and_ones():
    assert np.allclose(eig_sym(np.eye(3)).values, [1, 1, 1], atol=1e-12)
    assert np.allclose(eig_sym(np.ones((3, 3))).values, [3, 0, 0], atol=1e-12)


def test_k22_spectrum():
    a = np.array([[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]])
    assert np.allclose(eig_sym(a).values, [2, 0, 0, -2], atol=1e-12)


def test_empty_and_scalar():
    assert eig_sym(np.zeros((0, 0))).values.shape == (0,)
    assert eig_sym([[4.0]]).values.tolist() == [4.0]


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        eig_sym([[1.0, np.nan], [np.nan, 1.0]])
    with pytest.raises(ValueError):
        eig_sym([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        eig_sym(np.ones((2, 3)))


def test_upper_triangle_is_authoritative():
    a = np.array([[1.0, 2.0], [2.0 + 1e-14, 1.0]])
    s = as_symmetric(a)
    assert s[1, 0] == s[0, 1] == 2.0


@pytest.mark.parametrize("n", [2, 5, 13, 30])
def test_matches_lapack(n):
    m = random_symmetric(n, n)
    dec = eig_sym(m)
    ref = np.linalg.eigvalsh(m)[::-1]
    assert np.allclose(dec.values, ref, rtol=1e-9, atol=1e-9)
    assert dec.residual(m) < 1e-9
    assert np.allclose(dec.vectors.T @ dec.vectors, np.eye(n), atol=1e-10)


def test_sign_convention_and_order():
    m = random_symmetric(12, 7)
    dec = eig_sym(m)
    assert np.all(np.diff(dec.values) <= 0)
    lead = np.argmax(np.abs(dec.vectors), axis=0)
    assert np.all(dec.vectors[lead, np.arange(12)] > 0)


def test_deterministic():
    m = random_symmetric(20, 3)
    a, b = eig_sym(m), eig_sym(m.copy())
    assert a.values.tobytes() == b.values.tobytes()
    assert a.vectors.tobytes() == b.vectors.tobytes()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32 - 1))
def test_reconstruction(n, seed):
    m = random_symmetric(n, seed)
    assert np.abs(eig_sym(m).reconstruct() - m).max() <= 1e-8


def test_psd_check():
    ok, lam = psd_check(np.ones((3, 3)), 1e-9)
    assert ok and abs(lam) < 1e-12
    ok, lam = psd_check([[0, 1], [1, 0]], 1e-9)
    assert not ok and lam == pytest.approx(-1)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 15), st.integers(0, 2**32 - 1))
def test_identity_minus_small_rowsum_is_psd(n, seed):
    rng = np.random.default_rng(seed)
    e = rng.uniform(-1, 1, (n, n))
    e = (e + e.T) / 2
    np.fill_diagonal(e, 0)
    e *= 0.99 / max(np.abs(e).sum(axis=1).max(), 1e-12)
    assert psd_check(np.eye(n) - e).is_psd


def test_gram_factor_examples():
    e = gram_factor(np.eye(2))
    assert e.d == 2 and np.allclose(e.gram(), np.eye(2))
    e = gram_factor([[1, -0.1], [-0.1, 1]])
    assert e.squared_distances()[0, 1] == pytest.approx(2.2, abs=1e-12)
    e = gram_factor(np.ones((3, 3)))
    assert e.d == 1 and np.allclose(e.coords, e.coords[0])
    assert gram_factor(np.zeros((3, 3))).d == 1
    with pytest.raises(NotPSDError):
        gram_factor([[0, 1], [1, 0]])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_gram_factor_reproduces_distances(n, d, seed):
    pts = np.random.default_rng(seed).standard_normal((n, d))
    g = pts @ pts.T
    e = gram_factor(g)
    assert e.d <= min(n, d)
    diff = pts[:, None] - pts[None]
    assert np.abs(e.squared_distances() - (diff**2).sum(-1)).max() <= 1e-8 * max(1, np.abs(g).max())


def test_breve_examples():
    b = breve_transform(np.eye(3))
    assert np.allclose(b, 2 * np.eye(3) - 1)
    assert np.allclose(breve_transform(np.ones((3, 3))), np.ones((3, 3)))
    assert np.allclose(breve_transform(np.eye(2)), [[1, -1], [-1, 1]])


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_breve_is_one_minus_squared_distance_and_rank_slack(n, d, seed):
    pts = np.random.default_rng(seed).standard_normal((n, d))
    g = pts @ pts.T
    b = breve_transform(g)
    diff = pts[:, None] - pts[None]
    assert np.allclose(b, 1 - (diff**2).sum(-1), atol=1e-9)
    assert abs(numerical_rank(b) - numerical_rank(g)) <= 3


def test_rank_lower_bound_examples():
    assert rank_lower_bound(np.eye(4)) == pytest.approx(4)
    assert rank_lower_bound(np.ones((5, 5))) == pytest.approx(1)
    assert rank_lower_bound(np.diag([2.0, 1, 1])) == pytest.approx(16 / 6)
    with pytest.raises(ValueError):
        rank_lower_bound(np.zeros((2, 2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_rank_lower_bound_below_rank(n, r, seed):
    pts = np.random.default_rng(seed).standard_normal((n, r))
    x = pts @ pts.T
    assert rank_lower_bound(x) <= numerical_rank(x) + 1e-9
