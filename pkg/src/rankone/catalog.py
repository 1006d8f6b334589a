"""Rank-one compact symmetric spaces and their restricted-root data.

Every downstream computation needs only the two multiplicities
``(m_alpha, m_2alpha)``; the table below is the complete list of simply
connected rank-one spaces of compact type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

FAMILIES = ("AI", "AII", "AIII", "BII", "CII", "FII")
PARAMETRIZED = {"AIII": 2, "BII": 3, "CII": 2}  # family -> smallest allowed q


class CatalogError(ValueError):
    """Unknown family or out-of-range parameter."""


@dataclass(frozen=True)
class SpaceFamily:
    tag: str
    q: Optional[int] = None

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise CatalogError(f"unknown family {self.tag!r}; expected one of {', '.join(FAMILIES)}")
        if self.tag in PARAMETRIZED:
            if self.q is None:
                raise CatalogError(f"{self.tag} requires an integer parameter q")
            if isinstance(self.q, bool) or not isinstance(self.q, int):
                raise CatalogError(f"{self.tag} parameter q must be an integer, got {self.q!r}")
            if self.tag == "BII" and self.q == 2:
                raise CatalogError("BII with q=2 is excluded: isomorphic to SU(2)/SO(2) (use AI)")
            low = PARAMETRIZED[self.tag]
            if self.q < low:
                raise CatalogError(f"{self.tag} requires q >= {low}, got q={self.q}")
        elif self.q is not None:
            raise CatalogError(f"{self.tag} takes no parameter q")

    def __str__(self):
        return self.tag if self.q is None else f"{self.tag}({self.q})"


@dataclass(frozen=True)
class JacobiParams:
    """Exponents of the Jacobi weight ``(1-x)^a (1+x)^b``."""

    a: float
    b: float


@dataclass(frozen=True)
class SymmetricSpace:
    family: SpaceFamily
    m_alpha: int
    m_2alpha: int
    root_kind: str
    dim_gk: int
    name: str

    @property
    def tag(self) -> str:
        return self.family.tag

    @property
    def q(self) -> Optional[int]:
        return self.family.q

    @property
    def two_roots(self) -> bool:
        return self.root_kind == "BC1"

    @property
    def label(self) -> str:
        return str(self.family)

    @property
    def period(self) -> float:
        """Period in the radial coordinate t (dependence is through cos beta(Z))."""
        return math.pi if self.two_roots else 2 * math.pi

    def beta_factor(self) -> int:
        """beta(Z) / alpha(Z): 2 when 2*alpha is a root, else 1."""
        return 2 if self.two_roots else 1


def _multiplicities(tag: str, q: Optional[int]) -> tuple[int, int]:
    if tag == "AI":
        return 1, 0
    if tag == "AII":
        return 4, 0
    if tag == "AIII":
        return 2 * (q - 1), 1
    if tag == "BII":
        return q - 1, 0
    if tag == "CII":
        return 4 * (q - 1), 3
    return 8, 7  # FII


def _display_name(tag: str, q: Optional[int]) -> str:
    if tag == "AI":
        return "SU(2)/SO(2)"
    if tag == "AII":
        return "SU(4)/Sp(4)"
    if tag == "AIII":
        return f"SU({q + 1})/S(U({q})×U(1))"
    if tag == "BII":
        return f"SO({q + 1})/S(O({q})×O(1))"
    if tag == "CII":
        return f"Sp({2 * q + 2})/Sp({2 * q})×Sp(2)"
    return "F4/SO(9)"


def make_space(family: SpaceFamily | str, q: Optional[int] = None) -> SymmetricSpace:
    """Build the catalog entry for ``family`` (a tag string or a ``SpaceFamily``).

    >>> make_space("AIII", 2).dim_gk
    4
    """
    if not isinstance(family, SpaceFamily):
        family = SpaceFamily(str(family).upper(), q)
    elif q is not None and q != family.q:
        raise CatalogError("q given twice with different values")
    m1, m2 = _multiplicities(family.tag, family.q)
    return SymmetricSpace(
        family=family,
        m_alpha=m1,
        m_2alpha=m2,
        root_kind="BC1" if m2 > 0 else "A1",
        dim_gk=m1 + m2 + 1,
        name=_display_name(family.tag, family.q),
    )


def jacobi_params(space: SymmetricSpace) -> JacobiParams:
    # beta is the larger restricted root; m_{beta/2} = 0 when only alpha exists
    if space.two_roots:
        m_half, m_beta = space.m_alpha, space.m_2alpha
    else:
        m_half, m_beta = 0, space.m_alpha
    return JacobiParams(a=(m_half + m_beta - 1) / 2, b=(m_beta - 1) / 2)


def list_catalog(max_q: int = 6) -> list[SymmetricSpace]:
    """All catalog entries with parameter q <= max_q, in table order."""
    if max_q < 3:
        raise CatalogError("max_q must be at least 3")
    out = []
    for tag in FAMILIES:
        if tag in PARAMETRIZED:
            out.extend(make_space(tag, q) for q in range(PARAMETRIZED[tag], max_q + 1))
        else:
            out.append(make_space(tag))
    return out


def parse_space(text: str, q: Optional[int] = None) -> SymmetricSpace:
    """Accept ``"AIII"`` with a separate q, or the compact ``"AIII(2)"``/``"AIII2"`` forms."""
    text = text.strip().upper()
    tag, inline = text, None
    if "(" in text and text.endswith(")"):
        tag, _, rest = text.partition("(")
        if not rest[:-1].strip().isdigit():
            raise CatalogError(f"cannot parse space {text!r}")
        inline = int(rest[:-1])
    else:
        for fam in sorted(FAMILIES, key=len, reverse=True):
            if text.startswith(fam) and text[len(fam):].isdigit():
                tag, inline = fam, int(text[len(fam):])
                break
    if inline is not None and q is not None and inline != q:
        raise CatalogError(f"conflicting q: {text} names q={inline} but q={q} was also given")
    return make_space(tag.strip(), inline if inline is not None else q)


def catalog_record(space: SymmetricSpace) -> dict:
    jp = jacobi_params(space)
    return {
        "family": space.tag,
        "q": space.q,
        "name": space.name,
        "root_kind": space.root_kind,
        "m_alpha": space.m_alpha,
        "m_2alpha": space.m_2alpha,
        "dim_gk": space.dim_gk,
        "a": jp.a,
        "b": jp.b,
    }
