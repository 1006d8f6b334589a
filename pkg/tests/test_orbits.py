import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rankone.catalog import list_catalog, make_space
from rankone.orbits import (
    CONTINUOUS_NON_REGULAR,
    NORMALIZER,
    REGULAR,
    classify_point,
    decide,
    decide_pair,
    decide_triple,
    dichotomy_holds,
)
from rankone.radial import RadialPoint

SPACES = list_catalog(6)
HALF_PI = RadialPoint.of_pi(Fraction(1, 2))

spaces = st.sampled_from(SPACES)
angles = st.floats(-20, 20, allow_nan=False)
exact_angles = st.builds(lambda p, q: RadialPoint.of_pi(Fraction(p, q)), st.integers(-40, 40), st.integers(1, 12))


def test_point_examples():
    c = classify_point(make_space("AI"), RadialPoint.of_pi(1))
    assert (c.kind, c.coset_dim) == (NORMALIZER, 0)
    c = classify_point(make_space("AIII", 2), HALF_PI)
    assert (c.kind, c.coset_dim) == (CONTINUOUS_NON_REGULAR, 2)
    c = classify_point(make_space("FII"), 0.7)
    assert (c.kind, c.coset_dim) == (REGULAR, 15)


def test_float_lattice_tolerance():
    s = make_space("CII", 2)
    assert classify_point(s, math.pi / 2).kind == CONTINUOUS_NON_REGULAR
    assert classify_point(s, math.pi / 2 + 1e-6).kind == REGULAR
    assert classify_point(s, math.pi / 2 + 1e-6, eps=1e-5).kind == CONTINUOUS_NON_REGULAR


@given(spaces, angles)
def test_class_invariants(space, t):
    c = classify_point(space, t)
    if c.kind == NORMALIZER:
        assert c.coset_dim == 0 and len(c.annihilators) == (2 if space.two_roots else 1)
    elif c.kind == REGULAR:
        assert not c.annihilators and c.coset_dim == space.m_alpha + space.m_2alpha
    else:
        assert space.two_roots and c.annihilators == {"two_alpha"} and c.coset_dim == space.m_alpha


@given(spaces, exact_angles)
def test_annihilators_invariant_under_reflection_and_shift(space, p):
    base = classify_point(space, p).annihilators
    neg = RadialPoint.of_pi(-p.pi_multiple)
    shifted = RadialPoint.of_pi(p.pi_multiple + 1)
    assert classify_point(space, neg).annihilators == base
    assert classify_point(space, shifted).annihilators == base


@pytest.mark.parametrize(
    "tag, q, t1, t2, l1, l2",
    [
        ("AI", None, HALF_PI, HALF_PI, True, False),
        ("AIII", 2, 0.7, HALF_PI, True, True),
        ("AIII", 2, HALF_PI, HALF_PI, True, False),
        ("AIII", 3, HALF_PI, HALF_PI, True, True),
        ("FII", None, 0.0, 1.1, False, False),
    ],
)
def test_pair_examples(tag, q, t1, t2, l1, l2):
    v = decide_pair(make_space(tag, q), t1, t2)
    assert (v.l1, v.l2) == (l1, l2)


@given(spaces, angles, angles)
def test_l2_implies_l1(space, t1, t2):
    v = decide_pair(space, t1, t2)
    assert v.l1 or not v.l2
    assert v.route_case_analysis["l2"] == v.route_dimension["l2"]


@given(spaces, st.integers(0, 100), st.integers(0, 100))
def test_singular_factor(space, k, j):
    assert not decide_pair(space, 0.0, RadialPoint.of_pi(Fraction(j, 100))).l1
    assert not decide_pair(space, RadialPoint.of_pi(1), RadialPoint.of_pi(Fraction(k, 100))).l1


@pytest.mark.parametrize("tag", ["AI", "FII"])
def test_triples_at_half_pi(tag):
    v = decide_triple(make_space(tag), HALF_PI, HALF_PI, HALF_PI)
    assert v.l1 and v.l2


@given(spaces, angles, angles, angles)
def test_triple_rule(space, a, b, c):
    v = decide_triple(space, a, b, c)
    assert v.l2 == all(classify_point(space, t).coset_dim > 0 for t in (a, b, c))


def test_decide_dispatch():
    s = make_space("AI")
    assert decide(s, [HALF_PI, HALF_PI]).case_fired == decide_pair(s, HALF_PI, HALF_PI).case_fired
    with pytest.raises(ValueError):
        decide(s, [HALF_PI])


def test_dichotomy_exceptions():
    failing = {s.label for q in range(3, 101, 7) for s in list_catalog(q) if not dichotomy_holds(s)}
    assert failing == {"AI", "AIII(2)", "CII(2)", "FII"}
    for q in range(2, 101):
        assert dichotomy_holds(make_space("AIII", q)) == (q > 2)
        assert dichotomy_holds(make_space("CII", q)) == (q > 2)
    assert all(dichotomy_holds(make_space("BII", q)) for q in range(3, 101))


@pytest.mark.parametrize("offset", [0.6e-9, 0.9e-9, 1e-9])
def test_alpha_closure_near_lattice(offset):
    # inside the eps band for alpha but outside it for 2alpha
    s = make_space("AIII", 2)
    c = classify_point(s, offset)
    assert c.kind == NORMALIZER and c.annihilators == {"alpha", "two_alpha"}
    decide_pair(s, 1.0, offset)  # routes must agree
