import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankone.catalog import jacobi_params, list_catalog, make_space
from rankone.dimension import (
    dim_by_quadrature,
    dim_sequence,
    dim_spherical,
    dim_spherical_exact,
    fit_growth_order,
    log_dim,
)

SPACES = list_catalog(5)


def test_su2_odd_dimensions():
    dims = dim_sequence(make_space("AI"), 10**6)
    n = np.arange(10**6 + 1)
    np.testing.assert_allclose(dims, 2 * n + 1, rtol=1e-9)


def test_aiii2_cubes():
    s = make_space("AIII", 2)
    for n in range(101):
        assert dim_spherical(s, n).dim == pytest.approx((n + 1) ** 3, rel=1e-12)


def test_cp2_matches_weyl_formula():
    # SU(3) highest weight n(e1 - e3): Weyl dimension (n+1)^2 (2n+2)/2
    s = make_space("AIII", 2)
    for n in range(20):
        weyl = (n + 1) * (n + 1) * (2 * n + 2) // 2
        assert dim_spherical_exact(s, n) == weyl


def test_sphere_harmonics():
    # BII(q) is the q-sphere: harmonic polynomials of degree n in q+1 variables
    for q in (3, 4, 5, 6):
        s = make_space("BII", q)
        for n in range(12):
            harm = math.comb(n + q, q) - (math.comb(n + q - 2, q) if n >= 2 else 0)
            assert dim_spherical_exact(s, n) == harm


@pytest.mark.parametrize("space", list_catalog(6), ids=lambda s: s.label)
def test_exact_dims_are_integers(space):
    for n in range(101):
        d = dim_spherical_exact(space, n)
        assert d.denominator == 1 and d > 0
        f = dim_spherical(space, n).dim
        if d < 10**8:
            # float64 still resolves 1e-6 here
            assert abs(f - round(f)) <= 1e-6 and round(f) == d
        else:
            assert f == pytest.approx(float(d), rel=1e-12)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.label)
def test_dimensions_increase(space):
    d = dim_sequence(space, 5000)
    assert d[0] == pytest.approx(1.0, rel=1e-15)
    assert np.all(np.diff(d) > 0)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.label)
def test_quadrature_oracle(space):
    p = jacobi_params(space)
    half = not float(p.a).is_integer()
    tol = 1e-6 if half else 1e-8
    for n in (0, 1, 7, 30):
        ref = dim_spherical(space, n).dim
        assert dim_by_quadrature(space, n) == pytest.approx(ref, rel=tol)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.label)
def test_growth_order(space):
    assert fit_growth_order(space) == pytest.approx(space.m_alpha + space.m_2alpha, abs=0.01)


@given(st.sampled_from(SPACES), st.integers(0, 10**7))
def test_log_dim_consistent(space, n):
    p = jacobi_params(space)
    assert math.exp(float(log_dim(p, n))) == pytest.approx(dim_spherical(space, n).dim, rel=1e-12)


def test_quadrature_rejects_too_few_nodes():
    with pytest.raises(ValueError):
        dim_by_quadrature(make_space("FII"), 10, node_count=5)
