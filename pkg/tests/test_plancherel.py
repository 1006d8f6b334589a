import math
from fractions import Fraction

import numba
import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankone import _kernels
from rankone.catalog import make_space
from rankone.jacobi import DomainError
from rankone.plancherel import (
    CONVERGENT,
    DIVERGENT,
    checkpoint_schedule,
    compensated_cumsum,
    crosscheck,
    diagnose,
    norm_series_term,
    partial_sums,
    series_terms,
    su2_expansion_constant,
    su2_expansion_residual,
    su2_reduction_gap,
    trace_from_terms,
    trig_closed_form,
    trig_series_bound,
    trig_series_reference,
)
from rankone.radial import RadialPoint

HALF_PI = RadialPoint.of_pi(Fraction(1, 2))
QUARTER_PI = RadialPoint.of_pi(Fraction(1, 4))


def p_series(s, n_max=2**17):
    n = np.arange(n_max + 1, dtype=float)
    n[0] = 1.0
    return n**-s


@pytest.mark.parametrize("s, verdict", [(0.5, DIVERGENT), (1.5, CONVERGENT), (2.0, CONVERGENT), (3.0, CONVERGENT)])
def test_calibration_on_p_series(s, verdict):
    d = diagnose(trace_from_terms(p_series(s)))
    assert d.tail_exponent == pytest.approx(-s, abs=0.05)
    assert d.verdict == verdict


def test_harmonic_series_is_divergent_by_log_fit():
    d = diagnose(trace_from_terms(p_series(1.0)))
    assert d.verdict == DIVERGENT
    assert d.log_slope == pytest.approx(1.0, abs=1e-3) and d.r_squared > 0.999


@given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=3000), st.sampled_from([1, 7, 64, 1 << 16]))
def test_compensated_cumsum_accuracy(values, block):
    v = np.array(values)
    out = compensated_cumsum(v, block)
    for k in (0, len(v) // 2, len(v) - 1):
        ref = math.fsum(values[: k + 1])
        assert out[k] == pytest.approx(ref, rel=1e-15, abs=1e-300)


def test_cumsum_independent_of_threads():
    rng = np.random.default_rng(7)
    v = rng.random(300_000)
    runs = []
    for t in (1, 2, 4):
        _kernels.set_threads(t)
        runs.append(compensated_cumsum(v, 1 << 12))
    _kernels.set_threads(numba.config.NUMBA_NUM_THREADS)
    assert all(np.array_equal(runs[0], r) for r in runs[1:])


def test_partial_sums_monotone():
    tr = partial_sums(make_space("CII", 2), [0.7, HALF_PI], 50_000)
    s = [v for _, v in tr.checkpoints]
    assert all(b >= a for a, b in zip(s, s[1:]))


def test_schedule():
    sch = checkpoint_schedule(1000)
    assert sch[0] == 8 and sch[-1] == 1000
    assert all(b > a for a, b in zip(sch, sch[1:]))


def test_terms_vectorised_match_scalar():
    s = make_space("FII")
    pts = [0.7, 1.2]
    terms = series_terms(s, pts, 500)
    for n in (1, 37, 500):
        assert terms[n] == pytest.approx(norm_series_term(s, n, pts), rel=1e-11)


@pytest.mark.parametrize(
    "tag, q, points, l2",
    [
        ("AI", None, [HALF_PI, HALF_PI], False),
        ("AI", None, [QUARTER_PI, HALF_PI], False),
        ("AIII", 2, [HALF_PI, HALF_PI], False),
        ("AIII", 2, [0.7, HALF_PI], True),
        ("AIII", 3, [HALF_PI, HALF_PI], True),
        ("BII", 3, [0.7, 1.1], True),
        ("FII", None, [HALF_PI] * 3, True),
    ],
)
def test_crosscheck_agrees(tag, q, points, l2):
    rep = crosscheck(make_space(tag, q), points, 2**17)
    assert rep.closed_form_l2 == l2
    assert rep.agree, rep.diagnosis


def test_crosscheck_rejects_small_n():
    with pytest.raises(ValueError):
        crosscheck(make_space("AI"), [HALF_PI, HALF_PI], 100)


@pytest.mark.parametrize("x", [1.0, HALF_PI, RadialPoint.of_pi(1), 4.0])
def test_sine_series(x):
    N = 10**5
    assert abs(trig_series_reference(x, N, "sine") - trig_closed_form(x, "sine")) <= trig_series_bound(x, N)


@pytest.mark.parametrize("x", [HALF_PI, RadialPoint.of_pi(1), 0.3, 5.0])
def test_cosine_series(x):
    N = 10**5
    assert abs(trig_series_reference(x, N, "cosine") - trig_closed_form(x, "cosine")) <= trig_series_bound(x, N)


def test_trig_domain():
    with pytest.raises(DomainError):
        trig_series_reference(0.0, 10, "sine")
    with pytest.raises(DomainError):
        trig_closed_form(2 * math.pi, "cosine")
    with pytest.raises(ValueError):
        trig_series_reference(1.0, 10, "tan")


def test_reduction_gap_settles():
    gaps = su2_reduction_gap(1.0, 1.3, [10**3, 10**4, 10**5, 10**6])
    tail = [g for _, g in gaps]
    assert abs(tail[-1] - tail[-2]) < 1e-3
    assert abs(tail[-1] - tail[-3]) < 1e-2


@given(st.floats(0.05, math.pi - 0.05))
def test_expansion_constant(t):
    assert su2_expansion_constant(t) == pytest.approx(1 / (math.pi * math.sin(t)), rel=1e-12)


@given(st.floats(0.3, math.pi - 0.3))
def test_expansion_residual_small(t):
    assert abs(su2_expansion_residual(20_000, t)) < 1e-2
