"""Quadrature on the unit disc with radial weight ``(1 - |u|^2)**alpha`` and on circles.

Disc integrals use the substitution ``t = r**2``: the normalised area measure
becomes ``dt * dtheta / (2 pi)`` and the weight becomes ``(1 - t)**alpha``, so a
Gauss-Jacobi rule in ``t`` (exact for that weight, including the singular
endpoint when ``alpha < 0``) is tensored with the uniform trapezoid rule in
``theta``.

Reductions are deterministic: each block of grid rows is evaluated as a unit
whose shape depends only on the grid, rows are summed with numpy's pairwise
sum, and the row totals are combined with ``math.fsum``.  Results are therefore
bit-identical for any number of worker threads (``HBL_THREADS``).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
import math
import os

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from ._validation import DomainError, NonConvergenceError, check_alpha, check_int, check_positive

__all__ = [
    "QuadratureSpec",
    "IntegrationResult",
    "gauss_jacobi_nodes",
    "disc_integral",
    "polar_integral",
    "circle_mean",
    "circle_average",
    "adaptive_circle_mean",
    "refine_until",
    "worker_count",
    "default_spec",
]

_BLOCK_POINTS = 1 << 16
_MAX_GRID_POINTS = 1 << 24
_MAX_CIRCLE_POINTS = 1 << 20


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 32
    angular_nodes: int = 64
    alpha: float = 0.0
    rel_tolerance: float = 1e-9
    max_refinements: int = 6

    def __post_init__(self):
        check_int(self.radial_nodes, "radial_nodes", minimum=1)
        check_int(self.angular_nodes, "angular_nodes", minimum=4)
        if self.angular_nodes % 2:
            raise DomainError("angular_nodes must be even")
        check_alpha(self.alpha)
        check_positive(self.rel_tolerance, "rel_tolerance")
        check_int(self.max_refinements, "max_refinements", minimum=0)


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    refinements_used: int
    converged: bool
    radial_nodes: int = 0
    angular_nodes: int = 0


def default_spec(degree=0, alpha=0.0, rel_tolerance=1e-9, max_refinements=6):
    """Starting grid for an integrand built from a degree-``degree`` function.

    ``|B'|**p`` oscillates in angle at a frequency of order ``degree * p``, hence
    ``N = max(64, 16 * degree)``.
    """
    degree = int(degree)
    return QuadratureSpec(
        radial_nodes=max(16, degree),
        angular_nodes=max(64, 16 * degree),
        alpha=alpha,
        rel_tolerance=rel_tolerance,
        max_refinements=max_refinements,
    )


def worker_count():
    """Number of worker threads, capped by the ``HBL_THREADS`` environment variable."""
    try:
        n = int(os.environ.get("HBL_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def _jacobi_recurrence(a, m):
    """Monic recurrence coefficients for the weight ``(1 - x)**a`` on ``[-1, 1]``."""
    b = 0.0
    k = np.arange(m, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(m)
    diag[0] = (b - a) / (a + b + 2.0)
    if m > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))
    off = np.empty(max(m - 1, 0))
    if m > 1:
        # k = 1 written with the factor (1 + a + b) cancelled, valid at a + b = -1
        off[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b))
        kk = k[2:]
        ss = s[2:]
        off[1:] = (
            4.0 * kk * (kk + a) * (kk + b) * (kk + a + b)
            / (ss**2 * (ss + 1.0) * (ss - 1.0))
        )
    mu0 = math.exp((a + b + 1.0) * math.log(2.0) + gammaln(a + 1.0) + gammaln(b + 1.0) - gammaln(a + b + 2.0))
    return diag, np.sqrt(off), mu0


@lru_cache(maxsize=256)
def _gauss_jacobi_cached(alpha, m):
    diag, off, mu0 = _jacobi_recurrence(alpha, m)
    if m == 1:
        x = diag.copy()
        w = np.array([mu0])
    else:
        x, vecs = eigh_tridiagonal(diag, off)
        w = mu0 * vecs[0, :] ** 2
    # map x in [-1, 1] to t = (1 + x) / 2; (1 - x)^a dx = 2^(a + 1) (1 - t)^a dt
    t = 0.5 * (1.0 + x)
    w = w * 2.0 ** (-(alpha + 1.0))
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def gauss_jacobi_nodes(alpha, m):
    """Nodes and weights of the ``m``-point Gauss rule for ``(1 - t)**alpha`` on ``[0, 1]``.

    Built by the Golub-Welsch eigenvalue construction from the Jacobi
    three-term recurrence; exact for polynomials of degree ``<= 2m - 1``.
    """
    alpha = check_alpha(alpha)
    m = check_int(m, "m", minimum=1)
    t, w = _gauss_jacobi_cached(alpha, m)
    if not (np.all(np.isfinite(t)) and np.all(w > 0) and np.all((t > 0) & (t < 1))):
        raise DomainError(f"Gauss-Jacobi construction failed for alpha={alpha}, m={m}")
    return t, w


@lru_cache(maxsize=64)
def _unit_roots(n):
    e = np.exp(2j * np.pi * np.arange(n) / n)
    e.setflags(write=False)
    return e


def _row_sums(g, radii, n_angular):
    """Angular sums of ``g`` over the rows ``u = radii[i] * exp(2 pi i j / N)``."""
    roots = _unit_roots(n_angular)
    rows = max(1, _BLOCK_POINTS // n_angular)
    blocks = [(s, min(s + rows, len(radii))) for s in range(0, len(radii), rows)]

    def work(block):
        lo, hi = block
        u = radii[lo:hi, None] * roots[None, :]
        vals = np.asarray(g(u), dtype=float)
        if vals.shape != u.shape:
            vals = np.broadcast_to(vals, u.shape)
        return np.sum(vals, axis=1)

    threads = min(worker_count(), len(blocks))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    return np.concatenate(parts)


def _disc_level(g, alpha, m, n_angular):
    t, w = gauss_jacobi_nodes(alpha, m)
    sums = _row_sums(g, np.sqrt(t), n_angular)
    return math.fsum(w * sums) / n_angular


def _refine(level, spec):
    m, n = spec.radial_nodes, spec.angular_nodes
    values = [level(m, n)]
    est = math.inf
    used = 0
    # first estimate against the half grid, so an adequate starting grid costs 1.25 units, not 5
    if m >= 2:
        est = abs(values[0] - level(m // 2, n // 2))
        if est <= spec.rel_tolerance * abs(values[0]) or est == 0.0:
            return IntegrationResult(values[0], est, 0, True, m, n)
    converged = False
    for k in range(1, spec.max_refinements + 1):
        if 4 * m * n > _MAX_GRID_POINTS:
            break
        m, n = 2 * m, 2 * n
        values.append(level(m, n))
        used = k
        est = abs(values[-1] - values[-2])
        if est <= spec.rel_tolerance * abs(values[-1]) or (est == 0.0):
            converged = True
            break
    return IntegrationResult(
        value=values[-1],
        error_estimate=est,
        refinements_used=used,
        converged=converged,
        radial_nodes=m,
        angular_nodes=n,
    )


def disc_integral(g, alpha=None, spec=None):
    """Integrate ``(1 - |u|^2)**alpha * g(u)`` against normalised area on the disc.

    ``g`` maps a complex array of points to a real array of the same shape.
    The starting grid is first compared with the half grid; if they disagree
    it is doubled in both directions until two successive values agree to
    ``spec.rel_tolerance``.  The finer value is returned.
    """
    if spec is None:
        spec = QuadratureSpec()
    if alpha is not None:
        spec = replace(spec, alpha=check_alpha(alpha))
    a = spec.alpha
    return _refine(lambda m, n: _disc_level(g, a, m, n), spec)


def polar_integral(g, alpha=None, spec=None):
    """``int_0^{2 pi} int_0^1 (1 - r)**alpha g(r e^{i theta}) dr dtheta / pi`` (no Jacobian ``r``)."""
    if spec is None:
        spec = QuadratureSpec()
    if alpha is not None:
        spec = replace(spec, alpha=check_alpha(alpha))
    a = spec.alpha

    def level(m, n):
        r, w = gauss_jacobi_nodes(a, m)
        sums = _row_sums(g, r, n)
        return 2.0 * math.fsum(w * sums) / n

    return _refine(level, spec)


def refine_until(g, alpha, rel_tol, spec=None):
    """``disc_integral`` with the refinement budget raised until the grid-size cap."""
    if spec is None:
        spec = QuadratureSpec()
    spec = replace(spec, alpha=check_alpha(alpha), rel_tolerance=check_positive(rel_tol, "rel_tol"))
    budget = 0
    m, n = spec.radial_nodes, spec.angular_nodes
    while 4 * m * n <= _MAX_GRID_POINTS:
        m, n = 2 * m, 2 * n
        budget += 1
    return disc_integral(g, spec=replace(spec, max_refinements=max(budget, 1)))


def circle_average(h, n, r=1.0):
    """Trapezoid mean of ``h`` over ``n`` equispaced points on the circle ``|u| = r``.

    Returns a complex number if ``h`` is complex valued.
    """
    n = check_int(n, "N", minimum=1)
    vals = np.asarray(h(r * _unit_roots(n)))
    return np.sum(vals) / n


def circle_mean(g, p, r, n=256):
    """Normalised ``p``-th circular mean ``(1/2pi) int |g(r e^{i theta})|**p dtheta``."""
    p = check_positive(p, "p")
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    return float(np.real(circle_average(lambda u: np.abs(g(u)) ** p, n, r)))


def adaptive_circle_mean(h, n, tol, what="boundary integral"):
    """Trapezoid mean of ``h`` on the unit circle, doubling ``n`` until two values agree.

    ``h`` maps points to ``(values, scale)``; ``scale`` bounds the size of the
    mean and sets the absolute floor of the stopping test, which matters when
    the mean itself is zero.
    """
    prev = None
    while n <= _MAX_CIRCLE_POINTS:
        vals, scale = h(_unit_roots(n))
        cur = np.sum(vals) / n
        if prev is not None and abs(cur - prev) <= tol * max(abs(cur), scale):
            return cur
        prev = cur
        n *= 2
    raise NonConvergenceError(f"{what} did not converge with N <= {_MAX_CIRCLE_POINTS}")
