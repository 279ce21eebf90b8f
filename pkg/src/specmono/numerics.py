"""Dense symmetric linear algebra.

Symmetric matrices are plain ``float64`` ndarrays; :func:`as_symmetric` validates
them and mirrors the upper triangle so that only ``m[i, j], i <= j`` matters.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend

RTOL = 1e-9
PSD_TOL = 1e-8
RANK_TOL = 1e-8
MAX_SWEEPS = 100


class NotPSDError(ValueError):
    pass


def as_symmetric(m, atol=1e-12):
    """Return ``m`` as a finite symmetric float64 matrix built from its upper triangle."""
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if not np.allclose(a, a.T, rtol=0.0, atol=atol * scale):
        raise ValueError("matrix is not symmetric")
    upper = np.triu(a)
    return upper + np.triu(a, 1).T


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues sorted descending; ``vectors[:, k]`` pairs with ``values[k]``."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def __len__(self):
        return len(self.values)

    def residual(self, m):
        """Largest ``||m v - lambda v||_inf / (1 + |lambda|)`` over all pairs."""
        r = np.asarray(m) @ self.vectors - self.vectors * self.values
        return float((np.abs(r).max(axis=0) / (1.0 + np.abs(self.values))).max(initial=0.0))

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.T


def _fix_signs(vectors):
    # largest |coordinate| positive; near-ties (1e-12 relative) go to the lowest index
    mags = np.abs(vectors)
    top = mags.max(axis=0, initial=0.0)
    lead = np.argmax(mags >= top * (1.0 - 1e-12), axis=0)
    signs = np.where(vectors[lead, np.arange(vectors.shape[1])] < 0, -1.0, 1.0)
    return vectors * signs


def eig_sym(m):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Deterministic: the rotation schedule is fixed, eigenvalue ties keep the
    solver's diagonal order, and each eigenvector is signed so that its
    largest-magnitude coordinate is positive.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    if n == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0)))
    pairs, offsets = _backend.round_robin(n)
    abs_tol = np.finfo(np.float64).eps * float(np.sqrt((a * a).sum()))
    diag, vt, sweeps = _backend.kernels.jacobi_eigh(a, pairs, offsets, abs_tol, MAX_SWEEPS)
    order = np.argsort(-diag, kind="stable")
    values = diag[order]
    vectors = _fix_signs(vt[order].T.copy())
    return EigenDecomposition(values, vectors, sweeps)


def eigvals_sym(m):
    return eig_sym(m).values


class PSDCheck(NamedTuple):
    is_psd: bool
    min_eigenvalue: float


def psd_check(m, tol=PSD_TOL):
    """``(lambda_min >= -tol, lambda_min)``."""
    values = eig_sym(m).values
    lam_min = float(values[-1]) if len(values) else 0.0
    return PSDCheck(lam_min >= -tol, lam_min)


@dataclass(frozen=True, eq=False)
class Embedding:
    """``n`` points in ``R^d`` as the rows of ``coords``."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.float64)
        if c.ndim != 2 or c.shape[1] < 1:
            raise ValueError(f"coordinates must be an n x d array with d >= 1, got {c.shape}")
        if not np.isfinite(c).all():
            raise ValueError("coordinates must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def n(self):
        return self.coords.shape[0]

    @property
    def d(self):
        return self.coords.shape[1]

    def squared_distances(self):
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        return (diff * diff).sum(axis=2)

    def max_distances(self):
        return np.abs(self.coords[:, None, :] - self.coords[None, :, :]).max(axis=2)

    def gram(self):
        return self.coords @ self.coords.T


def gram_factor(g, tol=PSD_TOL):
    """Rows ``v_i`` with ``<v_i, v_j> = g_ij``, one coordinate per eigenvalue above ``tol``.

    Eigenvalues in ``[-tol, tol]`` are dropped; anything below ``-tol`` raises
    :class:`NotPSDError`.
    """
    dec = eig_sym(g)
    n = len(dec)
    if n and dec.values[-1] < -tol:
        raise NotPSDError(f"matrix is not PSD: min eigenvalue {dec.values[-1]:.3e} < -{tol:g}")
    keep = dec.values > tol
    if not keep.any():
        return Embedding(np.zeros((n, 1)))
    return Embedding(dec.vectors[:, keep] * np.sqrt(dec.values[keep]))


def breve_transform(a):
    """``2A - C(A) - R(A) + J``: entry ``(i, j)`` is ``2 a_ij - a_ii - a_jj + 1``.

    For a Gram matrix this is ``1 - ||v_i - v_j||^2``.
    """
    a = as_symmetric(a)
    diag = a.diagonal()
    return 2.0 * a - diag[:, None] - diag[None, :] + 1.0


def rank_lower_bound(x):
    """``(tr X)^2 / sum_ij X_ij^2``, a lower bound on ``rank(X)``."""
    x = as_symmetric(x)
    frob2 = float((x * x).sum())
    if frob2 == 0.0:
        raise ValueError("rank bound undefined for the zero matrix")
    return float(np.trace(x)) ** 2 / frob2


def numerical_rank(x, rel_tol=RANK_TOL):
    """Number of eigenvalues with ``|lambda| > rel_tol * max |lambda|``."""
    values = np.abs(eig_sym(x).values)
    top = values.max(initial=0.0)
    if top == 0.0:
        return 0
    return int((values > rel_tol * top).sum())
