"""Jacobi polynomials, terminating 2F1 sums and spherical functions.

Three independent routes to P_n^{(a,b)}:

* ``jacobi_recurrence`` -- double precision upward recurrence;
* ``jacobi_via_2f1`` -- the terminating hypergeometric sum evaluated exactly
  at the (binary) input, rounded once;
* ``jacobi_exact`` -- rational arithmetic throughout, for small degree.

The spherical function of the n-th spherical representation is the Jacobi
polynomial in ``cos beta(Z)`` normalised to equal 1 at the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .catalog import JacobiParams, SymmetricSpace, jacobi_params
from .fitting import envelope_exponent
from .radial import AngleLike, RadialPoint, as_point

DOMAIN_TOL = 1e-12
MAX_2F1_DEGREE = 200
MAX_EXACT_DEGREE = 20
THETA_MARGIN = 1e-3


class DomainError(ValueError):
    pass


class DegreeRangeError(ValueError):
    pass


@dataclass(frozen=True)
class AsymptoticApprox:
    value: float
    envelope: float
    N: float
    gamma: float
    k_theta: float


@dataclass(frozen=True)
class SphericalValue:
    n: int
    value: float
    prefactor_log: float


def _check_x(x: float) -> float:
    if not (-1.0 - DOMAIN_TOL <= x <= 1.0 + DOMAIN_TOL):
        raise DomainError(f"x={x!r} outside [-1, 1]")
    return min(1.0, max(-1.0, float(x)))


def _check_n(n) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def log_binom(n: int, s: float) -> float:
    """log of binom(n+s, n) = Gamma(n+s+1) / (Gamma(n+1) Gamma(s+1))."""
    if s == int(s) and s >= 0:
        # integer offset: an exact-ish sum of logs beats cancelling lgammas at large n
        return math.fsum(math.log1p(n / (k + 1.0)) for k in range(int(s)))
    return math.lgamma(n + s + 1) - math.lgamma(n + 1) - math.lgamma(s + 1)


def endpoint_value(n: int, params: JacobiParams, sign: int) -> float:
    """P_n at x = +1 (sign=1) or x = -1 (sign=-1) from the binomial closed forms."""
    if sign > 0:
        return math.exp(log_binom(n, params.a))
    return (-1.0) ** n * math.exp(log_binom(n, params.b))


def jacobi_recurrence(n: int, params: JacobiParams, x: float) -> float:
    n = _check_n(n)
    x = _check_x(x)
    if n and x in (1.0, -1.0):
        return endpoint_value(n, params, 1 if x > 0 else -1)
    return float(_kernels.jacobi_p(n, float(params.a), float(params.b), x))


# -- exact terminating hypergeometric sums ---------------------------------


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def hyp2f1_terminating(n: int, b, c, z) -> Fraction:
    """Exact value of 2F1(-n, b; c; z) = sum_k (-n)_k (b)_k / ((c)_k k!) z^k.

    ``b``, ``c`` and ``z`` are taken as exact rationals (a float is converted
    without rounding).  Horner's scheme on integer numerator/denominator pairs
    avoids per-step gcd reductions, which dominate ``Fraction`` arithmetic.
    """
    b, c, z = _as_fraction(b), _as_fraction(c), _as_fraction(z)
    bn, bd = b.numerator, b.denominator
    cn, cd = c.numerator, c.denominator
    zn, zd = z.numerator, z.denominator
    sn, sd = 1, 1
    for k in range(n - 1, -1, -1):
        rn = (k - n) * (bn + k * bd) * cd * zn
        rd = (cn + k * cd) * bd * (k + 1) * zd
        if rd == 0:
            raise ZeroDivisionError("lower parameter c hits a non-positive integer")
        sn, sd = rd * sd + rn * sn, rd * sd
    return Fraction(sn, sd)


def _pochhammer(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def _binom_rational(n: int, a: Fraction) -> Fraction:
    """binom(n+a, n) = (a+1)_n / n!"""
    return _pochhammer(a + 1, n) / math.factorial(n)


def jacobi_via_2f1(n: int, params: JacobiParams, x: float) -> float:
    n = _check_n(n)
    if n > MAX_2F1_DEGREE:
        raise DegreeRangeError(f"jacobi_via_2f1 supports n <= {MAX_2F1_DEGREE}, got {n}")
    x = _check_x(x)
    a, b = Fraction(params.a), Fraction(params.b)
    z = (1 - Fraction(x)) / 2
    value = _binom_rational(n, a) * hyp2f1_terminating(n, n + a + b + 1, a + 1, z)
    return value.numerator / value.denominator


def jacobi_exact(n: int, a, b, x) -> Fraction:
    """Exact rational P_n^{(a,b)}(x), summing the terminating series term by term.

    Successive terms differ by the Pochhammer ratio
    (k-n)(n+a+b+1+k) / ((a+1+k)(k+1)) * (1-x)/2.
    """
    n = _check_n(n)
    if n > MAX_EXACT_DEGREE:
        raise DegreeRangeError(f"jacobi_exact supports n <= {MAX_EXACT_DEGREE}, got {n}")
    a, b, x = Fraction(a), Fraction(b), Fraction(x)
    if 2 * a != int(2 * a) or 2 * b != int(2 * b):
        raise ValueError("jacobi_exact needs integer or half-integer parameters")
    if abs(x) > 1:
        raise DomainError(f"x={x} outside [-1, 1]")
    z = (1 - x) / 2
    term = total = Fraction(1)
    for k in range(n):
        term = term * (k - n) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1)) * z
        total += term
    return _binom_rational(n, a) * total


# -- interior asymptotics -----------------------------------------------------


def jacobi_asymptotic(n: int, params: JacobiParams, theta: float) -> AsymptoticApprox:
    """Leading interior term ``k(theta) n^{-1/2} cos(N theta + gamma)``; error O(n^{-3/2})."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (THETA_MARGIN <= theta <= math.pi - THETA_MARGIN):
        raise DomainError(f"theta={theta!r} too close to an endpoint of (0, pi)")
    a, b = params.a, params.b
    N = n + (a + b + 1) / 2
    gamma = -math.pi / 2 * (a + 0.5)
    k = math.pi**-0.5 * math.sin(theta / 2) ** (-a - 0.5) * math.cos(theta / 2) ** (-b - 0.5)
    env = k / math.sqrt(n)
    return AsymptoticApprox(value=env * math.cos(N * theta + gamma), envelope=env, N=N, gamma=gamma, k_theta=k)


# -- spherical functions ------------------------------------------------------


def beta_angle(space: SymmetricSpace, point: AngleLike) -> float:
    p = as_point(point)
    return space.beta_factor() * p.t


def jacobi_argument(space: SymmetricSpace, point: AngleLike) -> float:
    """x = cos beta(Z), snapped to +-1 exactly at lattice points given as multiples of pi."""
    p = as_point(point)
    if p.pi_multiple is not None:
        r = space.beta_factor() * p.pi_multiple
        if r.denominator == 1:
            return 1.0 if r.numerator % 2 == 0 else -1.0
        if (2 * r).denominator == 1:
            return 0.0
    return math.cos(space.beta_factor() * p.t)


def prefactor_log(n: int, a: float) -> float:
    """log(Gamma(n+1) Gamma(a+1) / Gamma(a+n+1))."""
    return -log_binom(n, a)


def _spherical_at_x(n: int, params: JacobiParams, x: float) -> float:
    if n == 0 or x == 1.0:
        return 1.0
    if x == -1.0:
        return (-1.0) ** n * math.exp(log_binom(n, params.b) - log_binom(n, params.a))
    return float(_kernels.normalized_jacobi(n, float(params.a), float(params.b), x))


def spherical_function(space: SymmetricSpace, n: int, point: AngleLike) -> SphericalValue:
    n = _check_n(n)
    params = jacobi_params(space)
    x = jacobi_argument(space, point)
    return SphericalValue(n=n, value=_spherical_at_x(n, params, x), prefactor_log=prefactor_log(n, params.a))


def spherical_sequence(space: SymmetricSpace, n_max: int, point: AngleLike) -> np.ndarray:
    """phi_{pi_n}(point) for n = 0..n_max in one recurrence pass."""
    params = jacobi_params(space)
    x = jacobi_argument(space, point)
    if x == 1.0:
        return np.ones(n_max + 1)
    if x == -1.0:
        n = np.arange(n_max + 1)
        return np.where(n % 2 == 0, 1.0, -1.0) * endpoint_ratio_sequence(n_max, params)
    return _kernels.normalized_jacobi_sequence(n_max, float(params.a), float(params.b), x)


def endpoint_ratio_sequence(n_max: int, params: JacobiParams) -> np.ndarray:
    """binom(n+b, n) / binom(n+a, n) for n = 0..n_max, as a running product."""
    n = np.arange(1, n_max + 1, dtype=float)
    factors = (n + params.b) / (n + params.a)
    return np.concatenate(([1.0], np.exp(np.cumsum(np.log(factors)))))


def spherical_function_hypergeometric(space: SymmetricSpace, n: int, point: AngleLike) -> float:
    """phi_{pi_n} from its 2F1 form in ``sin^2(beta(Z)/2)``, summed exactly."""
    n = _check_n(n)
    if n > MAX_2F1_DEGREE:
        raise DegreeRangeError(f"hypergeometric form supports n <= {MAX_2F1_DEGREE}, got {n}")
    if space.two_roots:
        m_half, m_beta = space.m_alpha, space.m_2alpha
    else:
        m_half, m_beta = 0, space.m_alpha
    upper = Fraction(m_half, 2) + m_beta + n
    lower = Fraction(m_half + m_beta + 1, 2)
    z = math.sin(beta_angle(space, point) / 2) ** 2
    value = hyp2f1_terminating(n, upper, lower, z)
    return value.numerator / value.denominator


# -- large-degree behaviour ----------------------------------------------------


def decay_exponent(space: SymmetricSpace, point: AngleLike, n_range=(100, 10_000), windows: int = 40) -> float:
    """Fitted s in |phi_{pi_n}(point)| ~ C N^-s over ``n_range``.

    N = n + (a+b+1)/2 is the shifted degree of the interior asymptotics; the
    endpoint ratio binom(n+b,n)/binom(n+a,n) is also a pure power of N up to
    O(N^-2), so the fit carries no O(1/n) bias.
    """
    lo, hi = n_range
    p = jacobi_params(space)
    phi = spherical_sequence(space, hi, point)
    return envelope_exponent(phi, lo, hi, shift=(p.a + p.b + 1) / 2, windows=windows)


def asymptotic_residuals(n_max: int, params: JacobiParams, theta: float) -> np.ndarray:
    """|P_n(cos theta) - leading asymptotic term| for n = 0..n_max (entry 0 is 0)."""
    if not (THETA_MARGIN <= theta <= math.pi - THETA_MARGIN):
        raise DomainError(f"theta={theta!r} too close to an endpoint of (0, pi)")
    a, b = float(params.a), float(params.b)
    p = _kernels.jacobi_p_sequence(n_max, a, b, math.cos(theta))
    n = np.arange(1, n_max + 1, dtype=float)
    k = math.pi**-0.5 * math.sin(theta / 2) ** (-a - 0.5) * math.cos(theta / 2) ** (-b - 0.5)
    approx = k / np.sqrt(n) * np.cos((n + (a + b + 1) / 2) * theta - math.pi / 2 * (a + 0.5))
    return np.concatenate(([0.0], np.abs(p[1:] - approx)))


def residual_exponent(params: JacobiParams, theta: float, n_range=(100, 100_000), windows: int = 30) -> float:
    lo, hi = n_range
    return envelope_exponent(asymptotic_residuals(hi, params, theta), lo, hi, windows=windows)
