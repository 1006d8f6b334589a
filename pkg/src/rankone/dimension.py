"""Dimensions of the spherical representations pi_n.

By Schur orthogonality the L^2 norm of phi_{pi_n} against Haar measure is
``1 / dim V_{pi_n}``; with the Jacobi-weight norm this gives

    dim = (2n+a+b+1) Gamma(b+1) Gamma(n+a+b+1) Gamma(n+a+1)
          / (Gamma(a+b+2) Gamma(a+1) Gamma(n+b+1) Gamma(n+1)).

``dim_by_quadrature`` recomputes the same norm numerically as a check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.special import gammaln, roots_legendre

from . import _kernels
from .catalog import JacobiParams, SymmetricSpace, jacobi_params


class QuadratureError(ValueError):
    pass


@dataclass(frozen=True)
class DimensionValue:
    n: int
    dim: float
    growth_order: int


def _is_int(v: float) -> bool:
    return float(v) == int(v)


def _log_dim_constant(p: JacobiParams) -> float:
    return math.lgamma(p.b + 1) - math.lgamma(p.a + 1) - math.lgamma(p.a + p.b + 2)


def log_dim(params: JacobiParams, n) -> np.ndarray:
    """Natural log of the dimension, vectorised over ``n``.

    For catalog spaces a+b and a-b are integers, so the Gamma ratios reduce
    to finite products of logs; this keeps 1e-15 relative accuracy out to
    n ~ 1e7 where differences of lgamma values would lose ~8 digits.
    """
    n = np.asarray(n, dtype=float)
    a, b = params.a, params.b
    out = np.log(2 * n + a + b + 1) + _log_dim_constant(params)
    if _is_int(a + b) and _is_int(a - b) and a - b >= 0:
        for k in range(int(a + b)):
            out = out + np.log(n + 1 + k)  # Gamma(n+a+b+1)/Gamma(n+1)
        for k in range(int(a - b)):
            out = out + np.log(n + b + 1 + k)  # Gamma(n+a+1)/Gamma(n+b+1)
        return out
    return out + gammaln(n + a + b + 1) - gammaln(n + 1) + gammaln(n + a + 1) - gammaln(n + b + 1)


def dim_sequence(space: SymmetricSpace, n_max: int) -> np.ndarray:
    return np.exp(log_dim(jacobi_params(space), np.arange(n_max + 1)))


def dim_spherical(space: SymmetricSpace, n: int) -> DimensionValue:
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    value = float(np.exp(log_dim(jacobi_params(space), int(n))))
    return DimensionValue(n=int(n), dim=value, growth_order=space.m_alpha + space.m_2alpha)


def _poch(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def dim_spherical_exact(space: SymmetricSpace, n: int) -> Fraction:
    """The same closed form in rational arithmetic (O(n) products; keep n modest).

    dim = (2n+a+b+1)/(a+b+1) * (a+b+1)_n (a+1)_n / ((b+1)_n n!)
    """
    p = jacobi_params(space)
    a, b = Fraction(p.a), Fraction(p.b)
    s = a + b + 1
    return (2 * n + s) / s * _poch(s, n) * _poch(a + 1, n) / (_poch(b + 1, n) * math.factorial(n))


def min_nodes(n: int) -> int:
    return 2 * n + 64


def default_nodes(space: SymmetricSpace, n: int) -> int:
    p = jacobi_params(space)
    # (1-x)^{1/2}-type weights cap Gauss-Legendre at algebraic convergence,
    # error ~ n^2 / nodes^3; 16x keeps it near 1e-7 for n <= 30
    return min_nodes(n) * (1 if _is_int(p.a) and _is_int(p.b) else 16)


@lru_cache(maxsize=64)
def _legendre_rule(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(node_count)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def dim_by_quadrature(space: SymmetricSpace, n: int, node_count: int | None = None) -> float:
    """1 / integral of phi_n^2 against the normalised radial density, by Gauss-Legendre in x = cos beta(Z)."""
    if node_count is None:
        node_count = default_nodes(space, n)
    if node_count < min_nodes(n):
        raise QuadratureError(f"node_count={node_count} below required {min_nodes(n)} for n={n}")
    p = jacobi_params(space)
    x, w = _legendre_rule(node_count)
    phi = _kernels.normalized_jacobi_many(n, float(p.a), float(p.b), x)
    density = (1 - x) ** p.a * (1 + x) ** p.b
    mass = math.exp((p.a + p.b + 1) * math.log(2) + math.lgamma(p.a + 1) + math.lgamma(p.b + 1) - math.lgamma(p.a + p.b + 2))
    norm_sq = math.fsum(w * phi**2 * density) / mass
    return 1.0 / norm_sq


def shifted_degree(params: JacobiParams, n):
    """N = n + (a+b+1)/2: the natural large-degree variable.

    Both dim V_{pi_n} and the interior/endpoint sizes of phi_{pi_n} are
    C * N^k * (1 + O(N^-2)) in this variable, whereas in n itself they carry an
    O(1/n) correction that biases log-log slopes by a(a+1)/(2n).
    """
    return np.asarray(n, dtype=float) + (params.a + params.b + 1) / 2


def fit_growth_order(space: SymmetricSpace, n_range: Sequence[int] = (1000, 10000), points: int = 64) -> float:
    """Least-squares slope of log dim against log N over a log-spaced grid of n."""
    lo, hi = n_range
    if hi < 10 * lo:
        raise ValueError("n_range must span at least one decade")
    p = jacobi_params(space)
    n = np.unique(np.round(np.geomspace(lo, hi, points)))
    slope, _ = np.polyfit(np.log(shifted_degree(p, n)), log_dim(p, n), 1)
    return float(slope)
