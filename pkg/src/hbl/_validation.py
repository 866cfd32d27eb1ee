"""Input validation helpers shared by the public functions."""

import numbers

import numpy as np

# slack allowed when a point is nominally on the closed disc
DISC_TOL = 1e-12


class DomainError(ValueError):
    """Raised when an argument lies outside the mathematical domain of an operation."""


class NonConvergenceError(RuntimeError):
    """Raised when a quadrature cannot reach its tolerance within its budget."""


def as_complex_array(u):
    return np.asarray(u, dtype=np.complex128)


def check_closed_disc(u, name="u"):
    u = as_complex_array(u)
    if not np.all(np.isfinite(u)):
        raise DomainError(f"{name} must be finite")
    if np.any(np.abs(u) > 1.0 + DISC_TOL):
        raise DomainError(f"{name} must lie in the closed unit disc")
    return u


def check_open_disc(u, name="u"):
    u = as_complex_array(u)
    if not np.all(np.isfinite(u)):
        raise DomainError(f"{name} must be finite")
    if np.any(np.abs(u) >= 1.0):
        raise DomainError(f"{name} must lie in the open unit disc")
    return u


def check_alpha(alpha):
    alpha = float(alpha)
    if not alpha > -1.0:
        raise DomainError(f"alpha must be > -1, got {alpha}")
    return alpha


def check_positive(value, name):
    value = float(value)
    if not value > 0.0 or not np.isfinite(value):
        raise DomainError(f"{name} must be a positive finite number, got {value}")
    return value


def check_int(value, name, minimum=0):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_peller_region(p, alpha):
    """Validate ``p > 1``, ``alpha > -1`` and ``p > 1 + alpha``."""
    p = float(p)
    alpha = check_alpha(alpha)
    if not p > 1.0:
        raise DomainError(f"p must be > 1, got {p}")
    if not p > 1.0 + alpha:
        raise DomainError(f"need p > 1 + alpha, got p={p}, alpha={alpha}")
    return p, alpha


def check_power_of_two(n, name="N"):
    n = check_int(n, name, minimum=1)
    if n & (n - 1):
        raise DomainError(f"{name} must be a power of 2, got {n}")
    return n
