"""Explicit dual-feasible matrices for the margin and sphericity programs.

Both certificates are built from the adjacency matrix of a regular graph, so
their spectra follow from the graph spectrum; feasibility is still verified
numerically from the matrix itself.
"""
from dataclasses import dataclass, field
from math import ceil, inf
from typing import NamedTuple, Optional

import numpy as np

from .graphs import HypothesisError, diameter, regular_degree, spectral_summary
from .numerics import eig_sym

PSD_TOL = 1e-8
ROWSUM_TOL = 1e-9
SIGN_TOL = 1e-9
CEIL_RTOL = 1e-9
# K_{m,m} sits exactly on alpha = 2; allow rounding in the numeric lambda_2
ALPHA_TOL = 1e-9
BREVE_RANK_SLACK = 3

# (edge upper bound, non-edge lower bound) on the off-diagonal entries
SIGN_BOUNDS = {"margin": (0.0, 0.0), "sphericity": (-1.0, 1.0)}


class Residuals(NamedTuple):
    psd: float
    rowsum: float
    sign: float
    feasible: bool
    violated: tuple


@dataclass(frozen=True, eq=False)
class DualCertificate:
    kind: str
    A: np.ndarray
    alpha: float
    beta: Optional[float]
    objective: float
    n: int
    degree: Optional[int] = None
    lambda2: Optional[float] = None
    residuals: Optional[Residuals] = field(default=None)

    def __post_init__(self):
        if self.kind not in SIGN_BOUNDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    @property
    def feasible(self):
        return self.residuals is not None and self.residuals.feasible


def verify_dual_feasibility(c, g, psd_tol=PSD_TOL, rowsum_tol=ROWSUM_TOL, sign_tol=SIGN_TOL):
    """Residuals of ``c.A`` against the dual constraints for graph ``g``.

    ``sign`` is the worst violation of the entrywise constraints (positive means
    violated). Never raises on infeasibility.
    """
    a = np.asarray(c.A, dtype=np.float64)
    if a.shape != (g.n, g.n):
        raise ValueError(f"certificate is {a.shape}, graph has {g.n} vertices")
    lam_min = float(eig_sym(a).values[-1])
    rowsum = float(np.abs(a.sum(axis=1)).max(initial=0.0))
    adj = g.adjacency().astype(bool)
    off = ~np.eye(g.n, dtype=bool)
    upper, lower = SIGN_BOUNDS[c.kind]
    edge_excess = (a[adj] - upper).max(initial=-inf)
    nonedge_excess = (lower - a[off & ~adj]).max(initial=-inf)
    sign = float(max(edge_excess, nonedge_excess))
    violated = []
    if lam_min < -psd_tol:
        violated.append("psd")
    if rowsum > rowsum_tol:
        violated.append("rowsum")
    if edge_excess > sign_tol:
        violated.append("edge_sign")
    if nonedge_excess > sign_tol:
        violated.append("nonedge_sign")
    return Residuals(lam_min, rowsum, sign, not violated, tuple(violated))


def _with_residuals(c, g, psd_tol):
    res = verify_dual_feasibility(c, g, psd_tol=psd_tol)
    return DualCertificate(**{**c.__dict__, "residuals": res})


def margin_certificate(g, psd_tol=PSD_TOL):
    """``A = I + alpha J - beta M`` with ``beta = 1/lambda_2`` and
    ``alpha = beta d/n - 1/n`` (zero row sums)."""
    s = spectral_summary(g)
    d = regular_degree(g, s)
    n = g.n
    lam2 = s.lambda2
    if lam2 is None or not lam2 > 2.0 / n:
        raise HypothesisError(f"hypothesis λ2 > 2/n violated (lambda2={lam2}, 2/n={2.0 / n})")
    beta = 1.0 / lam2
    alpha = beta * (d / n) - 1.0 / n
    a = np.eye(n) + alpha * np.ones((n, n)) - beta * g.adjacency()
    ratio = float(np.trace(a) / np.abs(a[~np.eye(n, dtype=bool)]).sum())
    c = DualCertificate("margin", a, alpha, beta, ratio, n, d, lam2)
    return _with_residuals(c, g, psd_tol)


class MarginBound(NamedTuple):
    ratio: float
    closed_form: float


def margin_bound_value(c):
    """Certified upper bound ``tr A / sum_{i != j} |A_ij|`` on the margin, and
    the analytic ``4 (lambda_2 + delta) / (delta n)`` it never exceeds."""
    if c.kind != "margin":
        raise ValueError("margin bound needs a margin certificate")
    if not c.feasible:
        raise HypothesisError("certificate is not feasible")
    a = np.asarray(c.A)
    n = c.n
    ratio = float(np.trace(a) / np.abs(a[~np.eye(n, dtype=bool)]).sum())
    delta = c.degree / n
    closed = 4.0 * (c.lambda2 + delta) / (delta * n)
    return MarginBound(ratio, closed)


def sphericity_certificate(g, psd_tol=PSD_TOL):
    """``A = (alpha d - n) I + J - alpha M`` with ``alpha = n / (d - lambda_2)``.

    Needs a connected regular graph with ``lambda_2 >= d - n/2`` (``alpha >= 2``).
    The objective is ``S* = tr(A) / 2``.
    """
    s = spectral_summary(g)
    if s.diameter == inf:
        raise HypothesisError("graph is disconnected")
    d = regular_degree(g, s)
    n = g.n
    lam2 = s.lambda2
    if lam2 is None:
        raise HypothesisError("graph needs at least 2 vertices")
    alpha = n / (d - lam2)
    if alpha < 2.0 - ALPHA_TOL:
        raise HypothesisError(
            f"hypothesis λ2 >= d - n/2 violated (alpha = {alpha:.6g} < 2)"
        )
    a = (alpha * d - n) * np.eye(n) + np.ones((n, n)) - alpha * g.adjacency()
    objective = 0.5 * float(np.trace(a))
    c = DualCertificate("sphericity", a, alpha, None, objective, n, d, lam2)
    return _with_residuals(c, g, psd_tol)


class SphericityBound(NamedTuple):
    bound: int
    certificate: DualCertificate
    diameter: int
    objective: float


def sphericity_dimension_bound(n, diam, objective):
    """``max(1, ceil(n^2 / (n + 2 D^2 S*)) - 3)``.

    The factor 2 turns the unordered-pair objective into the ordered-pair sum,
    and 3 is the rank slack of the breve transform. The ceiling is taken with a
    small relative guard so rounding can only lower the bound.
    """
    q = n * n / (n + 2.0 * diam * diam * objective)
    return max(1, ceil(q * (1.0 - CEIL_RTOL)) - BREVE_RANK_SLACK)


def sphericity_lower_bound(g, psd_tol=PSD_TOL):
    c = sphericity_certificate(g, psd_tol)
    if not c.feasible:
        raise HypothesisError(f"certificate failed verification: {c.residuals.violated}")
    diam = diameter(g)
    return SphericityBound(sphericity_dimension_bound(g.n, diam, c.objective), c, diam, c.objective)


def report(c, bound=None, diam=None):
    """Certificate summary with the fixed key order of the JSON report."""
    out = {
        "kind": c.kind,
        "n": c.n,
        "d": c.degree,
        "lambda2": c.lambda2,
        "alpha": c.alpha,
    }
    if c.beta is not None:
        out["beta"] = c.beta
    out["objective"] = c.objective
    r = c.residuals
    out["residuals"] = {"psd": r.psd, "rowsum": r.rowsum, "sign": r.sign}
    if bound is not None:
        out["bound"] = bound
    if diam is not None:
        out["diameter"] = diam
    return out
