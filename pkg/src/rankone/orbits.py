"""Double-coset classification and closed-form L^1 / L^2 verdicts.

A point z = exp(iZ) of A is recorded by t = alpha(Z).  A restricted root
annihilates z when it vanishes on Z modulo pi:

    alpha  annihilates  <=>  t  in pi Z
    2alpha annihilates  <=>  2t in pi Z

dim KzK is the sum of the multiplicities of the non-annihilating roots.  The
pair verdict is computed twice, once by a case analysis on point types and
multiplicities and once by the double-coset dimension criterion, and the two
must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .catalog import SymmetricSpace
from .radial import AngleLike, RadialPoint, as_point

DEFAULT_EPS = 1e-9

NORMALIZER = "Normalizer"
REGULAR = "Regular"
CONTINUOUS_NON_REGULAR = "ContinuousNonRegular"


class RouteDisagreement(RuntimeError):
    """The case analysis and the dimension criterion gave different verdicts."""


@dataclass(frozen=True)
class OrbitClass:
    kind: str
    annihilators: frozenset
    coset_dim: int
    t: float = 0.0

    @property
    def continuous(self) -> bool:
        return self.kind != NORMALIZER

    @property
    def regular(self) -> bool:
        return self.kind == REGULAR

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "kind": self.kind,
            "annihilators": sorted(self.annihilators),
            "coset_dim": self.coset_dim,
        }


@dataclass(frozen=True)
class SmoothnessVerdict:
    l1: bool
    l2: bool
    route_case_analysis: dict
    route_dimension: dict
    classes: tuple = field(default_factory=tuple)

    @property
    def case_fired(self) -> str:
        return self.route_case_analysis["case"]

    def as_dict(self) -> dict:
        return {
            "classes": [c.as_dict() for c in self.classes],
            "l1": self.l1,
            "l2": self.l2,
            "case_fired": self.case_fired,
            "citation": self.route_case_analysis["citation"],
            "dim_sum": self.route_dimension["dim_sum"],
            "dim_gk": self.route_dimension["dim_gk"],
        }


def _on_lattice(point: RadialPoint, mult: int, eps: float) -> bool:
    """Is mult * t congruent to 0 mod pi?"""
    if point.pi_multiple is not None:
        return (mult * point.pi_multiple).denominator == 1
    u = mult * point.t / math.pi
    return abs(u - round(u)) * math.pi <= eps


def classify_point(space: SymmetricSpace, t: AngleLike, eps: float = DEFAULT_EPS) -> OrbitClass:
    """Annihilating roots, kind and double-coset dimension of the point t.

    Float input is classified with tolerance ``eps`` around the lattice, so
    the result is discontinuous there by construction; exact multiples of pi
    (``RadialPoint.of_pi``) classify without tolerance.
    """
    if not (0 < eps <= 1e-3):
        raise ValueError("eps must lie in (0, 1e-3]")
    return _classify(space, as_point(t), eps)


@lru_cache(maxsize=4096)
def _classify(space: SymmetricSpace, p: RadialPoint, eps: float) -> OrbitClass:
    ann = set()
    if _on_lattice(p, 1, eps):
        ann.add("alpha")
    # alpha(Z) in pi*Z forces 2alpha(Z) in pi*Z; the two float tests alone can
    # split in the band eps/2 < dist(t, pi*Z) <= eps
    if space.two_roots and (ann or _on_lattice(p, 2, eps)):
        ann.add("two_alpha")
    mult = {"alpha": space.m_alpha, "two_alpha": space.m_2alpha}
    roots = ("alpha", "two_alpha") if space.two_roots else ("alpha",)
    coset_dim = sum(mult[r] for r in roots if r not in ann)
    if len(ann) == len(roots):
        kind = NORMALIZER
    elif not ann:
        kind = REGULAR
    else:
        kind = CONTINUOUS_NON_REGULAR
    return OrbitClass(kind=kind, annihilators=frozenset(ann), coset_dim=coset_dim, t=p.t)


def dichotomy_holds(space: SymmetricSpace) -> bool:
    """Every absolutely continuous pair product is automatically square-integrable."""
    return space.m_alpha - space.m_2alpha > 1


def _pair_case_analysis(space: SymmetricSpace, c1: OrbitClass, c2: OrbitClass) -> dict:
    both_cont = c1.continuous and c2.continuous
    some_regular = c1.regular or c2.regular
    if not both_cont:
        return dict(case="singular-factor", citation="a normalizer point gives a singular orbital measure", l1=False, l2=False)
    if space.m_alpha == 1:
        return dict(case="su2-never-l2", citation="SU(2)/SO(2): no pair product is square-integrable", l1=True, l2=False)
    if some_regular:
        return dict(case="regular-factor", citation="a regular factor forces square-integrability", l1=True, l2=True)
    if space.m_alpha - space.m_2alpha == 1:
        return dict(
            case="tight-nonregular",
            citation="m_alpha = m_2alpha + 1 and neither point regular: series diverges",
            l1=True,
            l2=False,
        )
    return dict(
        case="dichotomy-nonregular",
        citation="m_alpha - m_2alpha >= 2: continuous pairs are square-integrable",
        l1=True,
        l2=True,
    )


def decide_pair(space: SymmetricSpace, t1: AngleLike, t2: AngleLike, eps: float = DEFAULT_EPS) -> SmoothnessVerdict:
    c1 = classify_point(space, t1, eps)
    c2 = classify_point(space, t2, eps)
    case = _pair_case_analysis(space, c1, c2)
    dim_sum = c1.coset_dim + c2.coset_dim
    dim_route = dict(
        coset_dims=[c1.coset_dim, c2.coset_dim],
        dim_sum=dim_sum,
        dim_gk=space.dim_gk,
        l1=dim_sum >= space.dim_gk,
        l2=dim_sum > space.dim_gk,
    )
    if case["l1"] != dim_route["l1"] or case["l2"] != dim_route["l2"]:
        raise RouteDisagreement(f"{space.label} t=({c1.t}, {c2.t}): case analysis {case} vs dimension {dim_route}")
    return SmoothnessVerdict(l1=case["l1"], l2=case["l2"], route_case_analysis=case, route_dimension=dim_route, classes=(c1, c2))


def decide_triple(
    space: SymmetricSpace, t1: AngleLike, t2: AngleLike, t3: AngleLike, eps: float = DEFAULT_EPS
) -> SmoothnessVerdict:
    classes = tuple(classify_point(space, t, eps) for t in (t1, t2, t3))
    ok = all(c.continuous for c in classes)
    if ok:
        case = dict(case="triple-continuous", citation="three continuous orbital measures convolve into L^2", l1=True, l2=True)
    else:
        case = dict(case="singular-factor", citation="a normalizer point gives a singular orbital measure", l1=False, l2=False)
    dims = [c.coset_dim for c in classes]
    positive = all(d > 0 for d in dims)
    dim_route = dict(coset_dims=dims, dim_sum=sum(dims), dim_gk=space.dim_gk, l1=positive, l2=positive)
    if positive != ok:
        raise RouteDisagreement(f"{space.label} triple {dims}: continuity and coset dimensions disagree")
    return SmoothnessVerdict(l1=ok, l2=ok, route_case_analysis=case, route_dimension=dim_route, classes=classes)


def decide(space: SymmetricSpace, points: Sequence[AngleLike], eps: float = DEFAULT_EPS) -> SmoothnessVerdict:
    if len(points) == 2:
        return decide_pair(space, *points, eps=eps)
    if len(points) == 3:
        return decide_triple(space, *points, eps=eps)
    raise ValueError("closed-form verdicts cover products of two or three orbital measures")
