"""
Special Functions for the LAC Eigenfunctions

Kummer's confluent hypergeometric function in its terminating (polynomial)
case, log-space factorials, and the fixed-order radial quadrature that sets
the eigenfunction normalization.

The normalization measure is r dr: the azimuthal factor e^{im phi}/sqrt(2 pi)
carries the angular integral, so a radial function with
integral |R|^2 r dr = 1 gives a wavefunction normalized over the plane.
"""

import logging
import math
import numbers
from functools import lru_cache
from typing import Callable, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from ..core.exceptions import DomainError, NumericError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Gauss-Legendre nodes per panel of the composite rule
PANEL_ORDER = 16
DEFAULT_QUADRATURE_POINTS = 1024
EXACT_FACTORIAL_LIMIT = 20


def _require_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise DomainError(f"{name} must be an integer, got {value!r}")
    return int(value)


def log_factorial(n: int) -> float:
    """log(n!) with exact integer arithmetic below 20!"""
    n = _require_int("n", n)
    if n < 0:
        raise DomainError(f"Factorial of negative number {n}")
    if n < EXACT_FACTORIAL_LIMIT:
        return math.log(math.factorial(n))
    return float(gammaln(n + 1.0))


def _check_kummer_args(a, b, xi) -> Tuple[int, int, np.ndarray]:
    a = _require_int("a", a)
    b = _require_int("b", b)
    if a > 0:
        raise DomainError(f"Only the terminating case a <= 0 is supported, got a={a}")
    if b < 1:
        raise DomainError(f"b must be a positive integer, got {b}")
    x = np.asarray(xi, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise DomainError("xi must be finite and non-negative")
    return a, b, x


def _shaped(result: np.ndarray, like) -> ArrayLike:
    return float(result) if np.ndim(like) == 0 else result


def kummer_poly(a: int, b: int, xi: ArrayLike) -> ArrayLike:
    """Confluent hypergeometric F(a, b, xi) for integer a <= 0, b >= 1

    Evaluated as a nested (Horner) product of term ratios
    (a+k-1) xi / ((b+k-1) k), which is exact up to floating point.
    """
    a, b, x = _check_kummer_args(a, b, xi)
    acc = np.ones_like(x)
    for k in range(-a, 0, -1):
        acc = 1.0 + (a + k - 1) * x / ((b + k - 1) * k) * acc
    return _shaped(acc, xi)


def kummer_series(a: int, b: int, xi: ArrayLike) -> ArrayLike:
    """Term-by-term summation of the same polynomial (reference evaluation)"""
    a, b, x = _check_kummer_args(a, b, xi)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, -a + 1):
        term = term * (a + k - 1) * x / ((b + k - 1) * k)
        total = total + term
    return _shaped(total, xi)


def kummer_abs_series(a: int, b: int, xi: ArrayLike) -> ArrayLike:
    """Sum of absolute term values; the cancellation scale for error bounds"""
    a, b, x = _check_kummer_args(a, b, xi)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, -a + 1):
        term = term * abs(a + k - 1) * x / ((b + k - 1) * k)
        total = total + term
    return _shaped(total, xi)


@lru_cache(maxsize=64)
def _panel_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def integrate_radial(f: Callable[[np.ndarray], np.ndarray], r_max: float,
                     n_points: int = DEFAULT_QUADRATURE_POINTS) -> float:
    """Integral of f(r) r dr over [0, r_max]

    Composite Gauss-Legendre rule: n_points // 16 equal panels with 16 nodes
    each. ``f`` is called once with the array of all nodes.
    """
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max}")
    n_points = _require_int("n_points", n_points)
    if n_points < PANEL_ORDER:
        raise DomainError(f"n_points must be at least {PANEL_ORDER}, got {n_points}")

    nodes, weights = _panel_rule(PANEL_ORDER)
    n_panels = n_points // PANEL_ORDER
    width = r_max / n_panels
    left = np.arange(n_panels)[:, None] * width
    r = (left + 0.5 * width * (nodes[None, :] + 1.0)).ravel()
    w = np.tile(0.5 * width * weights, n_panels)

    samples = np.asarray(f(r), dtype=float)
    if samples.shape != r.shape:
        samples = np.broadcast_to(samples, r.shape)
    if not np.all(np.isfinite(samples)):
        bad = int(np.count_nonzero(~np.isfinite(samples)))
        raise NumericError(
            f"Integrand produced {bad} non-finite samples",
            {"r_max": r_max, "n_points": n_points, "non_finite": bad},
        )
    return float(np.sum(w * samples * r))


def truncation_radius(n_xi: int, abs_m: int, a_ac: float = 1.0) -> float:
    """Classical turning point plus eight decay lengths"""
    return a_ac * (math.sqrt(4 * n_xi + 2 * abs_m + 2) + 8.0)


def _log_envelope(s: np.ndarray, abs_m: int) -> np.ndarray:
    """log of e^{-s^2/4} s^{|m|} in dimensionless radius s = r/a_ac"""
    if abs_m == 0:
        return -0.25 * s ** 2
    with np.errstate(divide="ignore"):
        return np.where(s > 0, -0.25 * s ** 2 + abs_m * np.log(s), -np.inf)


def _envelope_peak(abs_m: int) -> float:
    if abs_m == 0:
        return 0.0
    return 0.5 * abs_m * (math.log(2.0 * abs_m) - 1.0)


def _check_state(n_xi, abs_m) -> Tuple[int, int]:
    n_xi = _require_int("n_xi", n_xi)
    abs_m = _require_int("abs_m", abs_m)
    if n_xi < 0 or abs_m < 0:
        raise DomainError(f"Quantum numbers must be non-negative, got n_xi={n_xi}, |m|={abs_m}")
    return n_xi, abs_m


@lru_cache(maxsize=512)
def log_radial_norm_dimensionless(n_xi: int, abs_m: int) -> float:
    """log of the normalization constant in units where a_ac = 1

    Fixed by quadrature of the unnormalized radial function itself. The
    envelope is rescaled by its peak so large |m| does not overflow.
    """
    n_xi, abs_m = _check_state(n_xi, abs_m)
    peak = _envelope_peak(abs_m)

    def integrand(s: np.ndarray) -> np.ndarray:
        shape = np.exp(2.0 * (_log_envelope(s, abs_m) - peak))
        poly = kummer_poly(-n_xi, abs_m + 1, 0.5 * s ** 2)
        return shape * poly ** 2

    norm_sq = integrate_radial(integrand, truncation_radius(n_xi, abs_m))
    log_c = -peak - 0.5 * math.log(norm_sq)
    logger.debug(f"Radial norm n_xi={n_xi} |m|={abs_m}: log c = {log_c:.12g}")
    return log_c


def radial_norm(n_xi: int, abs_m: int, a_ac: float) -> float:
    """Normalization constant of R_{n_xi,m}, in 1/m^{|m|+1}"""
    n_xi, abs_m = _check_state(n_xi, abs_m)
    if not a_ac > 0:
        raise DomainError(f"a_ac must be positive, got {a_ac}")
    return math.exp(log_radial_norm_dimensionless(n_xi, abs_m) - (abs_m + 1) * math.log(a_ac))


def radial_norm_closed(n_xi: int, abs_m: int, a_ac: float) -> float:
    """sqrt((|m|+n_xi)! / (2^|m| n_xi! (|m|!)^2)) / a_ac^{|m|+1}

    Closed form of the same constant; kept as a cross-check only.
    """
    n_xi, abs_m = _check_state(n_xi, abs_m)
    if not a_ac > 0:
        raise DomainError(f"a_ac must be positive, got {a_ac}")
    log_sq = (log_factorial(abs_m + n_xi) - abs_m * math.log(2.0)
              - log_factorial(n_xi) - 2.0 * log_factorial(abs_m))
    return math.exp(0.5 * log_sq - (abs_m + 1) * math.log(a_ac))


def radial_shape(n_xi: int, abs_m: int, s: ArrayLike) -> ArrayLike:
    """Normalized radial function at dimensionless radius s = r/a_ac

    Returns a_ac * R(r), so that integral of shape^2 s ds equals one.
    """
    n_xi, abs_m = _check_state(n_xi, abs_m)
    x = np.asarray(s, dtype=float)
    if np.any(x < 0):
        raise DomainError("Radius must be non-negative")
    log_c = log_radial_norm_dimensionless(n_xi, abs_m)
    envelope = np.exp(_log_envelope(x, abs_m) + log_c)
    values = envelope * kummer_poly(-n_xi, abs_m + 1, 0.5 * x ** 2)
    return _shaped(np.asarray(values), s)
