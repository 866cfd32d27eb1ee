"""Rational functions without poles in the closed disc, and model spaces ``K_Theta``.

A ``RationalFunction`` is ``P(z) / prod_k (1 - z / mu_k)``; each finite pole
``mu_k`` (``|mu_k| > 1``) corresponds to the zero ``1 / conj(mu_k)`` of the
inner function ``Theta = z B_sigma`` whose model space contains it, and every
pole at infinity to a zero at the origin.
"""

from dataclasses import dataclass, field
from functools import cached_property
import json
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from ._validation import (
    DomainError,
    check_closed_disc,
    check_int,
    check_open_disc,
    check_power_of_two,
)
from .disc_core import BlaschkeProduct, JetValue, MAX_ORDER, deviation_ratio, jet_multiply
from .quadrature import adaptive_circle_mean

__all__ = [
    "RationalFunction",
    "ModelSpaceTag",
    "eval_jet",
    "to_model_space",
    "kernel_eval",
    "boundary_pairing",
    "derivative_via_kernel",
    "backward_shift",
    "kernel4_norm_closed",
    "kernel4_norm_quadrature",
    "in_model_space",
    "random_model_space_element",
]

PAIRING_TOL = 1e-12
MEMBERSHIP_TOL = 1e-9


def _trim(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class RationalFunction:
    """``numerator(z) / prod_k (1 - z / poles[k])`` with ``poles_at_infinity`` extra degree.

    ``poles_at_infinity=None`` takes the smallest count making the degree at
    least the numerator degree.
    """

    numerator: tuple = (0j,)
    poles: tuple = ()
    poles_at_infinity: int = None

    def __post_init__(self):
        num = tuple(complex(c) for c in np.ravel(np.asarray(self.numerator, dtype=np.complex128)))
        if not num:
            num = (0j,)
        poles = tuple(complex(m) for m in np.ravel(np.asarray(self.poles, dtype=np.complex128)))
        for mu in poles:
            if not (math.isfinite(mu.real) and math.isfinite(mu.imag)):
                raise DomainError("poles must be finite (use poles_at_infinity)")
            if abs(mu) <= 1.0:
                raise DomainError(f"pole {mu} lies in the closed unit disc")
        deg_p = len(_trim(num)) - 1
        inf = self.poles_at_infinity
        if inf is None:
            inf = max(0, deg_p - len(poles))
        inf = check_int(inf, "poles_at_infinity")
        if deg_p > len(poles) + inf:
            raise DomainError(
                f"numerator degree {deg_p} exceeds the degree {len(poles) + inf} of the function"
            )
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "poles_at_infinity", inf)

    @property
    def degree(self):
        return len(self.poles) + self.poles_at_infinity

    @classmethod
    def constant(cls, c):
        return cls((complex(c),), (), 0)

    @classmethod
    def polynomial(cls, coeffs):
        return cls(tuple(coeffs), (), None)

    @classmethod
    def szego_kernel(cls, lam):
        """``1 / (1 - conj(lam) z)``."""
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise DomainError("kernel point must lie in the open disc")
        if lam == 0:
            return cls.constant(1.0)
        return cls((1.0 + 0j,), (1.0 / np.conj(lam),), 0)

    @classmethod
    def from_blaschke(cls, B, shift=0):
        """``z**shift * B`` written as numerator over poles."""
        shift = check_int(shift, "shift")
        num = np.zeros(shift + 1, dtype=np.complex128)
        num[-1] = 1.0
        for lam in B.zeros:
            num = npoly.polymul(num, [lam, -1.0])
        poles = tuple(1.0 / np.conj(lam) for lam in B.zeros if lam != 0)
        n_zero = sum(1 for lam in B.zeros if lam == 0)
        return cls(tuple(num), poles, shift + n_zero)

    @cached_property
    def _pole_groups(self):
        order, counts = [], {}
        for mu in self.poles:
            if mu not in counts:
                order.append(mu)
                counts[mu] = 0
            counts[mu] += 1
        return [(mu, counts[mu]) for mu in order]

    def __call__(self, u):
        u = check_closed_disc(u)
        out = _rational_stack(self, u, 0)[0]
        return complex(out) if out.ndim == 0 else out

    def derivatives(self, u, order=1):
        u = check_closed_disc(u)
        return _rational_stack(self, u, order)

    def to_dict(self):
        return {
            "numerator": [[c.real, c.imag] for c in self.numerator],
            "poles": [[m.real, m.imag] for m in self.poles],
            "poles_at_infinity": self.poles_at_infinity,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            num = tuple(complex(re, im) for re, im in data["numerator"])
        except KeyError:
            raise DomainError("rational-function JSON needs a 'numerator' field") from None
        poles = tuple(complex(re, im) for re, im in data.get("poles", []))
        return cls(num, poles, data.get("poles_at_infinity"))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _rational_stack(f, u, order):
    order = check_int(order, "order")
    if order > MAX_ORDER:
        raise DomainError(f"derivative order must be <= {MAX_ORDER}")
    coeffs = np.array(f.numerator, dtype=np.complex128)
    jet = [npoly.polyval(u, coeffs)]
    for k in range(1, order + 1):
        jet.append(npoly.polyval(u, npoly.polyder(coeffs, k)) if len(coeffs) > k else np.zeros_like(u))
    for mu, m in f._pole_groups:
        c = 1.0 / mu
        den = 1.0 - c * u
        # (1 - c z)^(-m) and its derivatives m (m+1)...(m+k-1) c^k (1 - c z)^(-m-k)
        h = [den ** (-m)]
        coef = 1.0
        for k in range(1, order + 1):
            coef *= (m + k - 1) * c
            h.append(coef * den ** (-m - k))
        jet = jet_multiply(jet, h, order)
    return np.stack(jet)


def eval_jet(f, u, order=3):
    """Value and derivatives up to ``order`` of a rational function at ``u``."""
    u = check_closed_disc(u)
    return JetValue.from_stack(_rational_stack(f, u, order))


@dataclass(frozen=True)
class ModelSpaceTag:
    """The inner function ``Theta = z**shift_multiplicity * theta_blaschke``."""

    theta_blaschke: BlaschkeProduct = field(default_factory=BlaschkeProduct)
    shift_multiplicity: int = 1

    def __post_init__(self):
        check_int(self.shift_multiplicity, "shift_multiplicity")

    @property
    def degree(self):
        return self.shift_multiplicity + self.theta_blaschke.degree

    def as_blaschke(self):
        """A Blaschke product equal to ``Theta`` up to the unimodular factor ``(-1)**m``."""
        return self.theta_blaschke.with_shift(self.shift_multiplicity)

    def derivatives(self, u, order=1):
        u = check_closed_disc(u)
        m = self.shift_multiplicity
        zm = [u**m]
        for k in range(1, order + 1):
            if k <= m:
                zm.append(math.perm(m, k) * u ** (m - k))
            else:
                zm.append(np.zeros_like(u))
        if self.theta_blaschke.degree == 0:
            return np.stack(zm)
        return np.stack(jet_multiply(zm, self.theta_blaschke.derivatives(u, order), order))

    def __call__(self, u):
        out = self.derivatives(u, 0)[0]
        return complex(out) if out.ndim == 0 else out


def to_model_space(f):
    """Inner function ``Theta = z B_sigma`` with ``f`` in ``K_Theta``.

    ``sigma`` lists ``1 / conj(mu)`` for every finite pole ``mu`` and ``0`` for
    every pole at infinity.
    """
    for mu in f.poles:
        if abs(mu) <= 1.0:
            raise DomainError(f"pole {mu} lies in the closed unit disc")
    sigma = tuple(1.0 / np.conj(mu) for mu in f.poles) + (0j,) * f.poles_at_infinity
    return ModelSpaceTag(BlaschkeProduct(sigma), 1)


def kernel_eval(tag, lam, w):
    """Reproducing kernel ``k_lam(w) = (1 - conj(Theta(lam)) Theta(w)) / (1 - conj(lam) w)``."""
    lam = complex(check_open_disc(lam))
    w = check_closed_disc(w)
    th_lam = tag(lam)
    out = (1.0 - np.conj(th_lam) * tag(w)) / (1.0 - np.conj(lam) * w)
    return complex(out) if np.ndim(out) == 0 else out


def _start_size(degree):
    n = 64 * max(1, int(degree))
    return 1 << (n - 1).bit_length()


def boundary_pairing(f, g, N=None, tol=PAIRING_TOL, degree=0):
    """``int_T f(u) conj(g(u)) dm(u)`` by the trapezoid rule on ``N`` points, doubled until stable.

    ``f`` and ``g`` are callables analytic on a neighbourhood of the closed
    disc.  Raises ``NonConvergenceError`` if doubling never settles.
    """
    n = check_power_of_two(N) if N is not None else _start_size(degree)

    def h(u):
        fu, gu = np.asarray(f(u)), np.asarray(g(u))
        scale = math.sqrt(np.mean(np.abs(fu) ** 2) * np.mean(np.abs(gu) ** 2))
        return fu * np.conj(gu), scale

    return complex(adaptive_circle_mean(h, n, tol, "boundary pairing"))


def in_model_space(f, tag, tol=MEMBERSHIP_TOL, n_monomials=5):
    """Numerical test of ``f`` being orthogonal to ``Theta z**j`` for ``j < n_monomials``."""
    fnorm = math.sqrt(abs(boundary_pairing(f, f, degree=getattr(f, "degree", 0))))
    for j in range(n_monomials):
        val = boundary_pairing(f, lambda u, j=j: tag(u) * u**j, degree=tag.degree + j)
        if abs(val) > tol * max(fnorm, 1.0):
            return False
    return True


def derivative_via_kernel(f, tag, u, order=1, validate=True):
    """``f^(n)(u) = n! <f, z**n (k_u)**(n + 1)>`` evaluated by boundary quadrature.

    The ``n!`` is the Cauchy-formula factor; it is 1 for the first derivative.
    """
    order = check_int(order, "order", minimum=1)
    u = complex(check_open_disc(u))
    if validate and not in_model_space(f, tag):
        raise DomainError("f does not belong to the model space K_Theta of the given tag")
    th_u = np.conj(tag(u))
    uc = np.conj(u)

    def kernel_power(w):
        k = (1.0 - th_u * tag(w)) / (1.0 - uc * w)
        return w**order * k ** (order + 1)

    deg = getattr(f, "degree", 0) + (order + 1) * tag.degree
    return math.factorial(order) * boundary_pairing(f, kernel_power, degree=deg)


def backward_shift(tag):
    """``(Theta - Theta(0)) / z`` as a rational function."""
    m = tag.shift_multiplicity
    zeros = tag.theta_blaschke.zeros
    num = np.zeros(m + 1, dtype=np.complex128)
    num[-1] = 1.0
    den = np.array([1.0 + 0j])
    for lam in zeros:
        num = npoly.polymul(num, [lam, -1.0])
        if lam != 0:
            den = npoly.polymul(den, [1.0, -np.conj(lam)])
    diff = npoly.polysub(num, num[0] * den)
    shifted = diff[1:] if len(diff) > 1 else np.array([0j])
    poles = tuple(1.0 / np.conj(lam) for lam in zeros if lam != 0)
    at_inf = max(0, tag.degree - 1 - len(poles))
    return RationalFunction(tuple(_trim(shifted)), poles, at_inf)


def kernel4_norm_closed(tag, u):
    """``||k_u||_4^4`` for the model-space kernel, in closed form."""
    u = check_open_disc(u)
    th, dth = tag.derivatives(u, 1)
    a2 = np.abs(u) ** 2
    one = (1.0 - np.abs(u)) * (1.0 + np.abs(u))
    # 1 - |Theta|^4 = (1 - |Theta|^2)(1 + |Theta|^2), the first factor taken from the stable ratio
    ratio = deviation_ratio(tag.as_blaschke(), u)
    bracket = (1.0 + a2) * (1.0 + np.abs(th) ** 2) * ratio - 4.0 * np.real(u * dth * np.conj(th))
    out = bracket / one**2
    return out[()] if np.ndim(out) == 0 else out


def kernel4_norm_quadrature(tag, u, tol=1e-13):
    """``int_T |k_u|**4 dm`` by the boundary trapezoid rule (independent of the closed form)."""
    u = complex(check_open_disc(u))
    th_u = np.conj(tag(u))
    uc = np.conj(u)

    def h(w):
        k = np.abs((1.0 - th_u * tag(w)) / (1.0 - uc * w)) ** 4
        return k, 0.0

    return float(np.real(adaptive_circle_mean(h, _start_size(tag.degree), tol, "kernel norm")))


def random_model_space_element(tag, seed, scale=1.0):
    """Random element of ``K_Theta``: a numerator of degree ``< deg Theta`` over the reflected zeros."""
    rng = np.random.default_rng(seed)
    d = tag.degree
    if d == 0:
        return RationalFunction.constant(0.0)
    coeffs = scale * (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / math.sqrt(2 * d)
    poles = tuple(1.0 / np.conj(lam) for lam in tag.theta_blaschke.zeros if lam != 0)
    return RationalFunction(tuple(coeffs), poles, max(0, d - 1 - len(poles)))
