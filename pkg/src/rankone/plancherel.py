"""Plancherel series for convolution products of orbital measures.

    ||mu_{z_1} * ... * mu_{z_k}||_2^2 = sum_n dim V_{pi_n} prod_i |phi_{pi_n}(z_i)|^2

The n = 0 term (trivial representation) is always 1 and is left out of every
trace: it shifts all partial sums by a constant and cannot affect
convergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .catalog import SymmetricSpace, jacobi_params, make_space
from .dimension import dim_sequence, dim_spherical
from .fitting import envelope_exponent, linear_fit
from .jacobi import DomainError, jacobi_asymptotic, spherical_function, spherical_sequence
from .orbits import DEFAULT_EPS, decide
from .radial import AngleLike, RadialPoint, as_point

CONVERGENT = "Convergent"
DIVERGENT = "Divergent"
INCONCLUSIVE = "Inconclusive"

DELTA = 0.1
R2_MIN = 0.98
MIN_BLOCKS = 8
BLOCK = 1 << 16
N_MAX_LIMIT = 10**7

_AI = make_space("AI")


@dataclass(frozen=True)
class SeriesTrace:
    checkpoints: list  # (N, S_N) with S_N = sum_{n=1}^{N} term_n
    block_means: list  # (j, mean of term_n over 2^j <= n < 2^{j+1}), complete blocks only
    terms_sampled: list  # (n, term_n) at checkpoints
    n_max: int = 0

    def checkpoint_block_means(self) -> list:
        """Mean term over the last complete dyadic block [2^j, 2^{j+1}) ending at or before each N."""
        means = dict(self.block_means)
        return [means.get((n + 1).bit_length() - 2) if n >= 1 else None for n, _ in self.checkpoints]


def _finite_or_none(v: float) -> Optional[float]:
    return float(v) if math.isfinite(v) else None


@dataclass(frozen=True)
class SeriesDiagnosis:
    verdict: str
    tail_exponent: float
    log_slope: float
    r_squared: float
    blocks_fitted: int = 0

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "tail_exponent": _finite_or_none(self.tail_exponent),
            "log_slope": _finite_or_none(self.log_slope),
            "r_squared": _finite_or_none(self.r_squared),
        }


@dataclass(frozen=True)
class ConsistencyReport:
    space: str
    points: tuple
    closed_form_l1: bool
    closed_form_l2: bool
    case_fired: str
    diagnosis: SeriesDiagnosis
    agree: bool
    trace: SeriesTrace = field(repr=False, default=None)

    @property
    def expected_verdict(self) -> str:
        return CONVERGENT if self.closed_form_l2 else DIVERGENT


# -- terms ------------------------------------------------------------------


def _check_points(points) -> list:
    pts = [as_point(p) for p in points]
    if not 1 <= len(pts) <= 3:
        raise ValueError("between one and three points are supported")
    return pts


def norm_series_term(space: SymmetricSpace, n: int, points: Sequence[AngleLike]) -> float:
    """dim V_{pi_n} * prod_i |phi_{pi_n}(t_i)|^2."""
    if n < 1:
        raise ValueError("series terms start at n = 1")
    term = dim_spherical(space, n).dim
    for p in _check_points(points):
        term *= spherical_function(space, n, p).value ** 2
    return term


def series_terms(space: SymmetricSpace, points: Sequence[AngleLike], n_max: int) -> np.ndarray:
    """All terms n = 0..n_max at once (index 0 holds the trivial term 1)."""
    terms = dim_sequence(space, n_max)
    for p in _check_points(points):
        phi = spherical_sequence(space, n_max, p)
        terms = terms * (phi * phi)  # dim * phi_1^2 first keeps the magnitude near 1
    return terms


# -- partial sums ---------------------------------------------------------------


def checkpoint_schedule(n_max: int, n0: int = 8, ratio: float = 2**0.25) -> list[int]:
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    out, k = [], 0
    while True:
        n = math.ceil(n0 * ratio**k)
        if n >= n_max:
            break
        if not out or n > out[-1]:
            out.append(n)
        k += 1
    out.append(n_max)
    return out


def compensated_cumsum(values: np.ndarray, block: int = BLOCK) -> np.ndarray:
    """Running sums of ``values`` with per-block Neumaier compensation.

    Blocks are summed independently (possibly in parallel) and merged in
    ascending block order, so the result is bit-reproducible for a fixed
    block size whatever the thread count.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.size == 0:
        return values.copy()
    local, totals, comps = _kernels.block_prefix_sums(values, block)
    out = np.empty_like(local)
    s = c = 0.0
    for j in range(totals.size):
        lo, hi = j * block, min(values.size, (j + 1) * block)
        out[lo:hi] = (s + c) + local[lo:hi]
        for v in (totals[j], comps[j]):
            t = s + v
            c += (s - t) + v if abs(s) >= abs(v) else (v - t) + s
            s = t
    return out


def trace_from_terms(terms: np.ndarray, n_max: Optional[int] = None, n0: int = 8, ratio: float = 2**0.25, block: int = BLOCK) -> SeriesTrace:
    """Build a trace from terms indexed by n (``terms[0]`` is ignored)."""
    n_max = terms.size - 1 if n_max is None else n_max
    body = terms[1 : n_max + 1]
    sums = compensated_cumsum(body, block)
    schedule = checkpoint_schedule(n_max, n0, ratio)
    checkpoints = [(n, float(sums[n - 1])) for n in schedule]
    sampled = [(n, float(terms[n])) for n in schedule]
    means = []
    j = 0
    while 2 ** (j + 1) - 1 <= n_max:
        lo, hi = 2**j, 2 ** (j + 1)
        means.append((j, math.fsum(terms[lo:hi]) / (hi - lo)))
        j += 1
    return SeriesTrace(checkpoints=checkpoints, block_means=means, terms_sampled=sampled, n_max=n_max)


def partial_sums(
    space: SymmetricSpace,
    points: Sequence[AngleLike],
    n_max: int,
    n0: int = 8,
    ratio: float = 2**0.25,
    block: int = BLOCK,
) -> SeriesTrace:
    if n_max > N_MAX_LIMIT:
        raise ValueError(f"n_max must be <= {N_MAX_LIMIT}")
    return trace_from_terms(series_terms(space, points, n_max), n_max, n0, ratio, block)


# -- diagnosis --------------------------------------------------------------------


def log_growth_fit(trace: SeriesTrace, lo: Optional[float] = None, hi: Optional[float] = None):
    """Fit S_N = slope * log N + c over checkpoints with lo <= N <= hi.

    Defaults to the last half of the checkpoints.
    """
    pts = trace.checkpoints
    if lo is None and hi is None:
        pts = pts[len(pts) // 2 :]
    else:
        pts = [(n, s) for n, s in pts if (lo is None or n >= lo) and (hi is None or n <= hi)]
    n = np.array([p[0] for p in pts], dtype=float)
    s = np.array([p[1] for p in pts])
    return linear_fit(np.log(n), s)


def diagnose(trace: SeriesTrace, delta: float = DELTA, r2_min: float = R2_MIN) -> SeriesDiagnosis:
    """Classify a trace by its dyadic block-mean tail exponent and log growth.

    Convergent when block means decay like n^s with s <= -1-delta; divergent
    when s >= -1+delta or S_N grows linearly in log N (r^2 >= r2_min).  Block
    means average out the cos^2 oscillation of the terms before fitting.
    """
    if len(trace.block_means) < MIN_BLOCKS:
        raise ValueError(f"diagnosis needs at least {MIN_BLOCKS} dyadic blocks, got {len(trace.block_means)}")
    tail = trace.block_means[len(trace.block_means) // 2 :]
    j = np.array([b[0] for b in tail], dtype=float)
    m = np.array([b[1] for b in tail])
    keep = m > 0
    if keep.sum() >= 2:
        centre = np.log(2.0) * (j[keep] + 0.5)
        tail_exponent = linear_fit(centre, np.log(m[keep])).slope
    else:
        tail_exponent = -math.inf  # the tail is identically zero
    growth = log_growth_fit(trace)
    if tail_exponent <= -1 - delta:
        verdict = CONVERGENT
    elif tail_exponent >= -1 + delta or (growth.slope > 0 and growth.r_squared >= r2_min):
        verdict = DIVERGENT
    else:
        verdict = INCONCLUSIVE
    return SeriesDiagnosis(
        verdict=verdict,
        tail_exponent=float(tail_exponent),
        log_slope=growth.slope,
        r_squared=growth.r_squared,
        blocks_fitted=int(keep.sum()),
    )


def crosscheck(space: SymmetricSpace, points: Sequence[AngleLike], n_max: int, eps: float = DEFAULT_EPS) -> ConsistencyReport:
    """Numerical series verdict against the closed-form L^2 verdict."""
    pts = _check_points(points)
    if len(pts) < 2:
        raise ValueError("crosscheck needs two or three points")
    closed = decide(space, pts, eps=eps)
    trace = partial_sums(space, pts, n_max)
    diag = diagnose(trace)
    expected = CONVERGENT if closed.l2 else DIVERGENT
    return ConsistencyReport(
        space=space.label,
        points=tuple(str(p) for p in pts),
        closed_form_l1=closed.l1,
        closed_form_l2=closed.l2,
        case_fired=closed.case_fired,
        diagnosis=diag,
        agree=diag.verdict == expected,
        trace=trace,
    )


# -- SU(2)/SO(2) trigonometric series -----------------------------------------------


def _angle_terms(x, n: np.ndarray, kind: str) -> np.ndarray:
    p = x if isinstance(x, RadialPoint) else RadialPoint(float(x))
    if p.pi_multiple is None:
        return np.sin(n * p.t) if kind == "sine" else np.cos(n * p.t)
    # exact multiple r*pi: reduce n*r mod 2 in integers so lattice terms are exact
    num, den = p.pi_multiple.numerator, p.pi_multiple.denominator
    k = (n.astype(np.int64) * num) % (2 * den)
    vals = np.sin(np.pi * k / den) if kind == "sine" else np.cos(np.pi * k / den)
    on_axis = k % den == 0  # n*x in pi*Z
    if kind == "sine":
        vals[on_axis] = 0.0
    else:
        vals[((2 * k) % den == 0) & ~on_axis] = 0.0
        vals[on_axis] = np.where(k[on_axis] == 0, 1.0, -1.0)
    return vals


def _reduced(x) -> float:
    t = x.t if isinstance(x, RadialPoint) else float(x)
    return t - 2 * math.pi * math.floor(t / (2 * math.pi))


def trig_closed_form(x, kind: str) -> float:
    """Pointwise limits: sum sin(nx)/n -> odd periodic (pi-x)/2; sum cos(nx)/n -> -log(2|sin(x/2)|)."""
    y = _reduced(x)
    if kind == "sine":
        return 0.0 if y == 0 else (math.pi - y) / 2
    if kind == "cosine":
        if y == 0:
            raise DomainError("cosine series diverges at x = 0 mod 2pi")
        return -math.log(2 * abs(math.sin(y / 2)))
    raise ValueError(f"kind must be 'sine' or 'cosine', got {kind!r}")


def trig_series_reference(x, N: int, kind: str) -> float:
    """Partial sum sum_{n<=N} sin(nx)/n or cos(nx)/n for x in (0, 2pi).

    ``x`` may be a float or a ``RadialPoint`` holding an exact multiple of pi.
    """
    if kind not in ("sine", "cosine"):
        raise ValueError(f"kind must be 'sine' or 'cosine', got {kind!r}")
    t = x.t if isinstance(x, RadialPoint) else float(x)
    if isinstance(x, RadialPoint) and x.pi_multiple is not None:
        inside = 0 < x.pi_multiple < 2
    else:
        inside = 0 < t < 2 * math.pi
    if not inside:
        raise DomainError(f"x={x} outside (0, 2pi)")
    n = np.arange(1, N + 1)
    return math.fsum(_angle_terms(x, n, kind) / n)


def trig_series_bound(x, N: int) -> float:
    """Guaranteed distance between the N-th partial sum and its limit."""
    y = _reduced(x)
    dist = min(y, 2 * math.pi - y)
    return 2 / (N * dist) + 1e-9


def su2_reduction_gap(t1: float, t2: float, checkpoints: Sequence[int]) -> list[tuple[int, float]]:
    """Partial sums of (1/n)[(sin((2n+1)t1)+1)(sin((2n+1)t2)+1) - (sin((2n+1)t1) sin((2n+1)t2) + 1)].

    The difference is sum (sin((2n+1)t1) + sin((2n+1)t2))/n, which converges for
    t1, t2 off the lattice; the returned sequence should settle.  (t is the
    radial coordinate, twice the SU(2) matrix angle.)
    """
    n_max = max(checkpoints)
    n = np.arange(1, n_max + 1, dtype=float)
    s1 = np.sin((2 * n + 1) * t1)
    s2 = np.sin((2 * n + 1) * t2)
    full = (s1 + 1) * (s2 + 1) / n
    reduced = (s1 * s2 + 1) / n
    a = compensated_cumsum(full)
    b = compensated_cumsum(reduced)
    return [(int(c), float(a[c - 1] - b[c - 1])) for c in checkpoints]


def _check_su2_t(t: float) -> None:
    if not (1e-2 <= t <= math.pi - 1e-2):
        raise DomainError(f"t={t!r} must stay 1e-2 away from 0 and pi")


def su2_expansion_constant(t: float) -> float:
    """C = k(t)^2 / 2 = 1 / (pi sin t), so phi_n(t)^2 ~ (C/n)(1 + sin((2n+1)t))."""
    _check_su2_t(t)
    k = jacobi_asymptotic(1, jacobi_params(_AI), t).k_theta
    return k * k / 2


def su2_expansion_residual(n: int, t: float) -> float:
    """n phi_n(t)^2 pi sin t - (1 + sin((2n+1)t)) on SU(2)/SO(2); O(1/n)."""
    _check_su2_t(t)
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = spherical_function(_AI, n, t).value
    return n * phi * phi * math.pi * math.sin(t) - (1 + math.sin((2 * n + 1) * t))


def su2_expansion_residuals(n_max: int, t: float) -> np.ndarray:
    _check_su2_t(t)
    phi = spherical_sequence(_AI, n_max, t)
    n = np.arange(n_max + 1, dtype=float)
    out = n * phi * phi * math.pi * math.sin(t) - (1 + np.sin((2 * n + 1) * t))
    out[0] = 0.0
    return out


def su2_residual_exponent(t: float, n_range=(100, 100_000), windows: int = 30) -> float:
    lo, hi = n_range
    return envelope_exponent(su2_expansion_residuals(hi, t), lo, hi, windows=windows)

