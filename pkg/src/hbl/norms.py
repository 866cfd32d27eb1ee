"""Norms and seminorms of analytic functions on the disc, and the integral ``I_{p,alpha}``.

Functions are passed as objects exposing ``derivatives(u, order)`` (both
``BlaschkeProduct`` and ``RationalFunction`` do) plus an optional ``degree``
used to size the quadrature grid.

BMOA itself is an infimum over boundary representers and is not computed.
``bmoa_upper`` returns the H-infinity norm, which is an upper bound because
the boundary values of ``f`` are an admissible representer;
``garsia_seminorm`` is an equivalent seminorm with unknown constants and is
reported for diagnostics only.
"""

from dataclasses import asdict, dataclass, field
import math

import numpy as np
from scipy.optimize import minimize_scalar

from ._validation import DomainError, check_alpha, check_int, check_positive
from .disc_core import BlaschkeProduct, deviation_ratio
from .quadrature import (
    IntegrationResult,
    adaptive_circle_mean,
    default_spec,
    disc_integral,
    polar_integral,
)
from .rational_fn import ModelSpaceTag

__all__ = [
    "SpaceParams",
    "NormReport",
    "PellerConstants",
    "bergman_norm",
    "a1_seminorm",
    "besov_seminorm",
    "besov_order",
    "bloch_norm",
    "I_integral",
    "polar_derivative_integral",
    "bmoa_upper",
    "garsia_seminorm",
    "constants",
]

KINDS = ("bergman", "a1", "besov", "bloch", "bmoa", "garsia", "I")


@dataclass(frozen=True)
class SpaceParams:
    p: float = 2.0
    alpha: float = 0.0
    kind: str = "bergman"
    order: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown space kind {self.kind!r}")


@dataclass(frozen=True)
class NormReport:
    value: float
    params: SpaceParams
    quadrature: IntegrationResult = None
    surrogate_note: str = ""
    metadata: dict = field(default_factory=dict)

    @property
    def converged(self):
        return self.quadrature is None or self.quadrature.converged

    @property
    def error_estimate(self):
        if self.quadrature is None:
            return 0.0
        # error of the p-th power, propagated to the root
        q = self.quadrature
        p = self.params.p
        if q.value == 0.0:
            return q.error_estimate ** (1.0 / p) if p else q.error_estimate
        return abs(self.value) * q.error_estimate / (p * abs(q.value))

    def to_dict(self):
        out = {
            "value": self.value,
            "p": self.params.p,
            "alpha": self.params.alpha,
            "kind": self.params.kind,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
        }
        if self.surrogate_note:
            out["note"] = self.surrogate_note
        return out


@dataclass(frozen=True)
class PellerConstants:
    K_palpha: float
    K_palpha_pow: float
    C_palpha: float
    beta_alpha: float

    def as_dict(self):
        return asdict(self)


def _degree(f):
    return int(getattr(f, "degree", 0) or 0)


def _spec_for(f, alpha, spec, tol, extra_degree=0):
    if spec is not None:
        return spec
    return default_spec(_degree(f) + extra_degree, alpha=alpha, rel_tolerance=tol)


def _derivative_power_integral(f, k, p, alpha, spec, tol):
    """``int (1 - |u|^2)^alpha |f^(k)(u)|^p dA`` (``p``-th power of the norm)."""
    spec = _spec_for(f, alpha, spec, tol)
    return disc_integral(lambda u: np.abs(f.derivatives(u, k)[k]) ** p, alpha, spec)


def _report(res, p, alpha, kind, order=1, note=""):
    value = max(res.value, 0.0) ** (1.0 / p)
    return NormReport(value, SpaceParams(p, alpha, kind, order), res, note)


def bergman_norm(f, p, alpha, spec=None, tol=1e-9):
    """``||f||_{A_p(alpha)} = (int (1 - |u|^2)^alpha |f|^p dA)^(1/p)``."""
    p = float(p)
    if p < 1.0:
        raise DomainError(f"Bergman norm needs p >= 1, got {p}")
    alpha = check_alpha(alpha)
    res = _derivative_power_integral(f, 0, p, alpha, spec, tol)
    return _report(res, p, alpha, "bergman", 0)


def a1_seminorm(f, p, alpha, spec=None, tol=1e-9):
    """``||f'||_{A_p(alpha)}``."""
    p = float(p)
    if p < 1.0:
        raise DomainError(f"A^1_p seminorm needs p >= 1, got {p}")
    alpha = check_alpha(alpha)
    res = _derivative_power_integral(f, 1, p, alpha, spec, tol)
    return _report(res, p, alpha, "a1", 1)


def besov_order(p):
    """Smallest positive integer ``k`` with ``p k > 1``."""
    return math.floor(1.0 / p) + 1 if p <= 1.0 else 1


def besov_seminorm(f, p, order=None, spec=None, tol=1e-9):
    """``(int |f^(k)(u)|^p (1 - |u|^2)^(p k - 2) dA)^(1/p)``.

    ``order`` defaults to the smallest ``k`` with ``p k > 1`` (so ``k = 1`` for
    ``p > 1``, ``k = 2`` for ``1/2 < p <= 1``); ``order=3`` gives the
    third-derivative variant used for ``p > 1/2``.
    """
    p = float(p)
    if not p > 0.5:
        raise DomainError(f"Besov seminorm is supported for p > 1/2 only, got {p}")
    k = besov_order(p) if order is None else check_int(order, "order", minimum=1)
    if not p * k > 1.0:
        raise DomainError(f"need p * order > 1, got p={p}, order={k}")
    if k > 3:
        raise DomainError("derivative order must be <= 3")
    alpha = p * k - 2.0
    res = _derivative_power_integral(f, k, p, alpha, spec, tol)
    return _report(res, p, alpha, "besov", k)


def _deviation_integrand(theta, p):
    def g(u):
        return deviation_ratio(theta, u) ** p

    return g


def _as_blaschke(theta):
    if isinstance(theta, ModelSpaceTag):
        return theta.as_blaschke()
    if isinstance(theta, BlaschkeProduct):
        return theta
    raise DomainError("I_integral needs a BlaschkeProduct or ModelSpaceTag")


def I_integral(theta, p, alpha, spec=None, tol=1e-9):
    """``int (1 - |u|^2)^alpha ((1 - |Theta(u)|^2) / (1 - |u|^2))^p dA``.

    The integrand is bounded for finite Blaschke products, so no restriction
    ties ``alpha`` to ``p`` here.
    """
    p = check_positive(p, "p")
    alpha = check_alpha(alpha)
    B = _as_blaschke(theta)
    if B.degree == 0:
        return NormReport(0.0, SpaceParams(p, alpha, "I"), IntegrationResult(0.0, 0.0, 0, True))
    spec = _spec_for(B, alpha, spec, tol)
    res = disc_integral(_deviation_integrand(B, p), alpha, spec)
    # reported value is the integral itself, not a p-th root
    return NormReport(res.value, SpaceParams(p, alpha, "I"), res)


def polar_derivative_integral(theta, p, alpha, spec=None, tol=1e-9):
    """``int_0^{2pi} int_0^1 (1 - r)^alpha |Theta'(r e^{it})|^p dr dt / pi``."""
    p = check_positive(p, "p")
    alpha = check_alpha(alpha)
    B = _as_blaschke(theta)
    spec = _spec_for(B, alpha, spec, tol)
    return polar_integral(lambda u: np.abs(B.derivatives(u, 1)[1]) ** p, alpha, spec)


def _refine_max(objective, x0, half_width, lo=-math.inf, hi=math.inf):
    a, b = max(lo, x0 - half_width), min(hi, x0 + half_width)
    if b <= a:
        return x0, objective(x0)
    res = minimize_scalar(lambda x: -objective(x), bounds=(a, b), method="bounded",
                          options={"xatol": 1e-12})
    if -res.fun >= objective(x0):
        return res.x, -res.fun
    return x0, objective(x0)


def bloch_norm(f, n_radial=96, n_angular=256):
    """``|f(0)| + sup |f'(z)| (1 - |z|)`` over a polar grid, refined near the argmax.

    The supremum is sampled, so the result is a lower bound; grid sizes are
    recorded in the metadata.
    """
    n_radial = check_int(n_radial, "n_radial", minimum=2)
    n_angular = check_int(n_angular, "n_angular", minimum=4)
    radii = np.unique(np.concatenate([
        np.linspace(0.0, 1.0, n_radial, endpoint=False),
        1.0 - np.geomspace(1e-6, 1.0, n_radial, endpoint=False),
    ]))
    angles = 2.0 * np.pi * np.arange(n_angular) / n_angular
    u = radii[:, None] * np.exp(1j * angles)[None, :]
    vals = np.abs(f.derivatives(u, 1)[1]) * (1.0 - radii[:, None])
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    r, t = radii[i], angles[j]
    best = vals[i, j]

    def obj(r_, t_):
        return float(np.abs(f.derivatives(np.array(r_ * np.exp(1j * t_)), 1)[1]) * (1.0 - r_))

    dr = max(radii[min(i + 1, len(radii) - 1)] - r, r - radii[max(i - 1, 0)], 1e-6)
    dt = 2.0 * np.pi / n_angular
    for _ in range(3):
        r, best_r = _refine_max(lambda x: obj(x, t), r, dr, 0.0, 1.0 - 1e-15)
        t, best = _refine_max(lambda x: obj(r, x), t, dt)
    f0 = abs(complex(np.asarray(f.derivatives(np.array(0j), 0)[0])))
    return NormReport(
        f0 + best,
        SpaceParams(math.inf, 0.0, "bloch"),
        None,
        "lower bound: supremum sampled on a grid",
        {"n_radial": len(radii), "n_angular": n_angular, "argmax": complex(r * np.exp(1j * t))},
    )


def bmoa_upper(f, N=1024):
    """``max |f|`` on the unit circle: an upper bound for the BMOA norm."""
    N = check_int(N, "N", minimum=4)
    angles = 2.0 * np.pi * np.arange(N) / N
    vals = np.abs(f.derivatives(np.exp(1j * angles), 0)[0])
    j = int(np.argmax(vals))

    def obj(t):
        return float(np.abs(f.derivatives(np.array(np.exp(1j * t)), 0)[0]))

    _, best = _refine_max(obj, angles[j], 2.0 * np.pi / N)
    best = max(best, float(vals[j]))
    return NormReport(best, SpaceParams(math.inf, 0.0, "bmoa"), None,
                      "UPPER BOUND: H-infinity norm surrogate for BMOA", {"N": N})


def _default_lambda_grid():
    radii = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99]
    pts = [0j]
    for r in radii[1:]:
        pts.extend(r * np.exp(2j * np.pi * np.arange(32) / 32))
    return np.array(pts)


def garsia_seminorm(f, lambda_grid=None, N=256, tol=1e-10):
    """``sup_lam (||f o b_lam||_{H^2}^2 - |f(lam)|^2)^(1/2)`` over ``lambda_grid``.

    Each ``H^2`` norm is a boundary trapezoid mean, doubled until stable.
    Diagnostic only: its equivalence constants with the BMOA norm are unknown.
    """
    grid = _default_lambda_grid() if lambda_grid is None else np.asarray(lambda_grid, dtype=complex)
    best, arg = 0.0, 0j

    def value(w):
        return f.derivatives(w, 0)[0]

    for lam in grid:
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise DomainError("lambda grid must lie in the open disc")
        lc = lam.conjugate()

        def h(xi, lam=lam, lc=lc):
            v = np.abs(value((lam - xi) / (1.0 - lc * xi))) ** 2
            return v, float(np.max(v))

        n0 = max(N, 1 << int(math.ceil(math.log2(16.0 / (1.0 - abs(lam))))))
        sq = float(np.real(adaptive_circle_mean(h, n0, tol, "Garsia H2 norm")))
        val = math.sqrt(max(sq - abs(complex(value(np.array(lam)))) ** 2, 0.0))
        if val > best:
            best, arg = val, lam
    return NormReport(best, SpaceParams(2.0, 0.0, "garsia"), None,
                      "diagnostic: Garsia seminorm, BMOA-equivalent with unknown constants",
                      {"argmax": arg, "grid_size": len(grid)})


def constants(p, alpha):
    """Explicit constants of the generalised Dyn'kin/Peller estimates.

    ``beta = 1 - 2^(-1/(alpha+1))``, ``C = (p/(p-1-alpha))^p 2^p`` and
    ``K^p = 2^(1/(alpha+1)) / (2^(1/(alpha+1)) - 1) (p/(p-1-alpha))^p 2^(p+1)``.
    """
    p = float(p)
    alpha = check_alpha(alpha)
    if not p > 1.0:
        raise DomainError(f"p must be > 1, got {p}")
    if not p > 1.0 + alpha:
        raise DomainError(f"constants undefined unless p > 1 + alpha (p={p}, alpha={alpha})")
    s = 2.0 ** (1.0 / (alpha + 1.0))
    hardy = (p / (p - 1.0 - alpha)) ** p
    beta = -math.expm1(-math.log(2.0) / (alpha + 1.0))
    c = hardy * 2.0**p
    k_pow = s / (s - 1.0) * hardy * 2.0 ** (p + 1.0)
    return PellerConstants(k_pow ** (1.0 / p), k_pow, c, beta)
