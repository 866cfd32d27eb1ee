"""Finite Blaschke products on the unit disc.

A Blaschke product is stored as its ordered list of zeros; the factor for a
zero ``lam`` is ``b_lam(z) = (lam - z) / (1 - conj(lam) z)`` (no phase
normalisation).  Evaluation is vectorised over arrays of points and groups
repeated zeros, so ``z**512`` costs one factor rather than 512.
"""

from dataclasses import dataclass
from functools import cached_property
import json

import numpy as np

from ._validation import (
    DomainError,
    as_complex_array,
    check_closed_disc,
    check_int,
    check_open_disc,
)

__all__ = [
    "BlaschkeProduct",
    "JetValue",
    "blaschke_eval",
    "blaschke_jet",
    "deviation_ratio",
    "partial_product_sum",
    "second_derivative_bound",
    "random_blaschke",
    "jet_multiply",
]

MAX_ORDER = 3
# above this modulus, 1 - |B|^2 is taken from the partial-product sum
_DIRECT_MODULUS_LIMIT = 0.99


@dataclass(frozen=True)
class JetValue:
    """Value and complex derivatives up to order three at a point (or array of points).

    Entries above the requested order are ``None``.
    """

    v0: complex
    v1: complex = None
    v2: complex = None
    v3: complex = None

    @classmethod
    def from_stack(cls, stack):
        parts = [_scalarize(s) for s in stack]
        return cls(*parts)

    def __getitem__(self, k):
        return (self.v0, self.v1, self.v2, self.v3)[k]


def _scalarize(a):
    a = np.asarray(a)
    return complex(a) if a.ndim == 0 else a


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product given by its zeros (with multiplicity, in order)."""

    zeros: tuple = ()

    def __post_init__(self):
        zs = tuple(complex(z) for z in np.ravel(np.asarray(self.zeros, dtype=np.complex128)))
        for z in zs:
            if not (np.isfinite(z.real) and np.isfinite(z.imag)):
                raise DomainError("Blaschke zeros must be finite")
            if abs(z) >= 1.0:
                raise DomainError(f"Blaschke zero {z} is not in the open unit disc")
        object.__setattr__(self, "zeros", zs)

    @property
    def degree(self):
        return len(self.zeros)

    @cached_property
    def groups(self):
        """Distinct zeros and their multiplicities, in order of first appearance."""
        order, counts = [], {}
        for z in self.zeros:
            if z not in counts:
                order.append(z)
                counts[z] = 0
            counts[z] += 1
        return np.array(order, dtype=np.complex128), np.array(
            [counts[z] for z in order], dtype=np.int64
        )

    @classmethod
    def monomial(cls, n):
        """``(-z)**n``, i.e. ``n`` zeros at the origin."""
        return cls((0j,) * check_int(n, "n"))

    @classmethod
    def mobius_power(cls, n, r):
        """``b_{-r}**n``: a single zero at ``-r`` of multiplicity ``n``."""
        return cls((complex(-r),) * check_int(n, "n"))

    def with_shift(self, m=1):
        """Prepend ``m`` zeros at the origin (equal to ``z**m B`` up to the sign ``(-1)**m``)."""
        return BlaschkeProduct((0j,) * check_int(m, "m") + self.zeros)

    def __call__(self, u):
        return blaschke_eval(self, u)

    def derivatives(self, u, order=1):
        """Array of shape ``(order + 1,) + u.shape`` holding ``B, B', ...``."""
        u = check_closed_disc(u)
        return _blaschke_stack(self, u, order)

    def to_dict(self):
        return {"zeros": [[z.real, z.imag] for z in self.zeros]}

    @classmethod
    def from_dict(cls, data):
        if "zeros" not in data:
            raise DomainError("Blaschke JSON needs a 'zeros' field")
        return cls(tuple(complex(re, im) for re, im in data["zeros"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _factor_stack(lam, u, order):
    """Jet of the single factor ``b_lam`` at ``u``."""
    lc = np.conj(lam)
    inv = 1.0 / (1.0 - lc * u)
    out = [(lam - u) * inv]
    if order >= 1:
        g = (abs(lam) ** 2 - 1.0) * inv * inv
        out.append(g)
        if order >= 2:
            lc_inv = lc * inv
            g = 2.0 * lc_inv * g
            out.append(g)
            if order >= 3:
                out.append(3.0 * lc_inv * g)
    return out


def _ipow(x, k):
    if k < 0:
        return np.zeros_like(x)
    return x**k


def _power_stack(f, m, order):
    """Jet of ``f**m`` from the jet of ``f`` (Faa di Bruno, orders <= 3)."""
    if m == 1:
        return f
    b = f[0]
    out = [_ipow(b, m)]
    if order >= 1:
        b1 = f[1]
        pm1 = _ipow(b, m - 1)
        out.append(m * pm1 * b1)
        if order >= 2:
            b2 = f[2]
            pm2 = _ipow(b, m - 2)
            out.append(m * (m - 1) * pm2 * b1**2 + m * pm1 * b2)
            if order >= 3:
                b3 = f[3]
                pm3 = _ipow(b, m - 3)
                out.append(
                    m * (m - 1) * (m - 2) * pm3 * b1**3
                    + 3 * m * (m - 1) * pm2 * b1 * b2
                    + m * pm1 * b3
                )
    return out


def jet_multiply(a, b, order):
    """Leibniz rule for two jets given as sequences of arrays."""
    out = [a[0] * b[0]]
    if order >= 1:
        out.append(a[1] * b[0] + a[0] * b[1])
    if order >= 2:
        out.append(a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2])
    if order >= 3:
        out.append(a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3])
    return out


def _blaschke_stack(B, u, order):
    order = check_int(order, "order")
    if order > MAX_ORDER:
        raise DomainError(f"derivative order must be <= {MAX_ORDER}")
    jet = [np.ones_like(u)] + [np.zeros_like(u) for _ in range(order)]
    for lam, m in zip(*B.groups):
        jet = jet_multiply(jet, _power_stack(_factor_stack(lam, u, order), int(m), order), order)
    return np.stack(jet)


def blaschke_eval(B, u):
    """Value of ``B`` at ``u`` (scalar or array) in the closed disc."""
    u = check_closed_disc(u)
    return _scalarize(_blaschke_stack(B, u, 0)[0])


def blaschke_jet(B, u, order=3):
    """Value and derivatives of ``B`` up to ``order`` via the running-product recurrence."""
    u = check_closed_disc(u)
    return JetValue.from_stack(_blaschke_stack(B, u, order))


def _one_minus_abs2(u):
    r = np.abs(u)
    return (1.0 - r) * (1.0 + r)


def _modulus_sums(B, u):
    """Return ``|B(u)|**2`` and the partial-product sum, grouped by distinct zero.

    For a zero of multiplicity ``m`` the ``m`` consecutive terms of the sum form a
    geometric series in ``|b(u)|**2``, summed in closed form with ``expm1``/``log1p``
    so nothing cancels as ``|b(u)| -> 1``.
    """
    one_u = _one_minus_abs2(u)
    prod2 = np.ones(u.shape)
    total = np.zeros(u.shape)
    for lam, m in zip(*B.groups):
        c = (1.0 - abs(lam) ** 2) / np.abs(1.0 - np.conj(lam) * u) ** 2
        d = one_u * c  # 1 - |b(u)|^2, computed without cancellation
        x = np.abs(lam - u) ** 2 / np.abs(1.0 - np.conj(lam) * u) ** 2
        if m == 1:
            geo = 1.0
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                geo = -np.expm1(m * np.log1p(-d)) / d
            geo = np.where(d > 0, geo, float(m))
        total = total + prod2 * c * geo
        prod2 = prod2 * x**m
    return prod2, total


def deviation_ratio(B, u, boundary=False):
    """``(1 - |B(u)|**2) / (1 - |u|**2)``.

    With ``boundary=True`` points on the unit circle are accepted and the
    continuous extension ``|B'(u)|`` is returned there.
    """
    u = as_complex_array(u)
    if boundary:
        u = check_closed_disc(u)
    else:
        u = check_open_disc(u)
    on_circle = np.abs(u) >= 1.0
    if np.any(on_circle):
        inner = np.where(on_circle, 0j, u)
        prod2, total = _modulus_sums(B, inner)
        edge = np.abs(_blaschke_stack(B, np.where(on_circle, u, 0j), 1)[1])
    else:
        prod2, total = _modulus_sums(B, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (1.0 - prod2) / _one_minus_abs2(u)
    out = np.where(prod2 > _DIRECT_MODULUS_LIMIT**2, total, direct)
    if np.any(on_circle):
        out = np.where(on_circle, edge, out)
    return out[()] if out.ndim == 0 else out


def partial_product_sum(B, u):
    """``sum_k |B_k(u)|**2 (1 - |z_k|**2) / |1 - conj(z_k) u|**2`` with ``B_k`` the product of the first ``k-1`` factors."""
    u = check_open_disc(u)
    partial = np.ones_like(u)
    total = np.zeros(u.shape)
    for z in B.zeros:
        den = 1.0 - np.conj(z) * u
        total = total + np.abs(partial) ** 2 * (1.0 - abs(z) ** 2) / np.abs(den) ** 2
        partial = partial * (z - u) / den
    return total[()] if total.ndim == 0 else total


def second_derivative_bound(B, u):
    """Right-hand side of the pointwise ``|B''|`` estimate.

    ``sum_j (1 - |z_j|^2) / |1 - conj(z_j) u|^3 + ((1 - |B(u)|) / (1 - |u|))^2``.
    """
    u = check_open_disc(u)
    first = np.zeros(u.shape)
    for z in B.zeros:
        first = first + (1.0 - abs(z) ** 2) / np.abs(1.0 - np.conj(z) * u) ** 3
    ratio = deviation_ratio(B, u)
    modulus = np.abs(_blaschke_stack(B, u, 0)[0])
    # (1 - |B|) / (1 - |u|) = ratio * (1 + |u|) / (1 + |B|)
    second = (ratio * (1.0 + np.abs(u)) / (1.0 + modulus)) ** 2
    out = first + second
    return out[()] if out.ndim == 0 else out


def random_blaschke(n, max_radius, seed):
    """``n`` zeros drawn uniformly (by area) from the disc of radius ``max_radius``."""
    n = check_int(n, "n")
    max_radius = float(max_radius)
    if not 0.0 < max_radius < 1.0:
        raise DomainError(f"max_radius must lie in (0, 1), got {max_radius}")
    rng = np.random.default_rng(seed)
    radius = max_radius * np.sqrt(rng.random(n))
    angle = 2.0 * np.pi * rng.random(n)
    return BlaschkeProduct(tuple(radius * np.exp(1j * angle)))
