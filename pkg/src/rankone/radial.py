"""Radial coordinates t = alpha(Z), optionally held as exact rational multiples of pi."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

_PI_FORM = re.compile(r"^\s*([+-]?)\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*\*?\s*pi\s*$", re.IGNORECASE)
_PI_OVER = re.compile(r"^\s*([+-]?)\s*(\d*)\s*\*?\s*pi\s*/\s*(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class RadialPoint:
    """A point ``exp(iZ)`` of the torus A, recorded by ``t = alpha(Z)`` in radians.

    When ``pi_multiple`` is set, ``t == pi_multiple * pi`` exactly and lattice
    tests (t mod pi, 2t mod pi) are decided in rational arithmetic.
    """

    t: float
    pi_multiple: Optional[Fraction] = None

    @classmethod
    def of_pi(cls, r) -> "RadialPoint":
        r = Fraction(r)
        return cls(float(r) * math.pi, r)

    @property
    def exact(self) -> bool:
        return self.pi_multiple is not None

    def __str__(self):
        if self.pi_multiple is None:
            return repr(self.t)
        r = self.pi_multiple
        return f"{r}pi" if r.denominator != 1 or abs(r.numerator) != 1 else ("pi" if r > 0 else "-pi")


AngleLike = Union[RadialPoint, float, int, str, Fraction]


def parse_angle(text: str) -> RadialPoint:
    """Parse decimal radians or an exact multiple of pi.

    Accepted exact forms: ``1/2pi``, ``3pi``, ``pi``, ``-1/4pi``, ``pi/2``.

    >>> parse_angle("1/2pi").pi_multiple
    Fraction(1, 2)
    """
    m = _PI_FORM.match(text) or _PI_OVER.match(text)
    if m:
        sign, num, den = m.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"cannot parse angle {text!r}: zero denominator")
        r = Fraction(int(num) if num else 1, int(den) if den else 1)
        return RadialPoint.of_pi(-r if sign == "-" else r)
    try:
        t = float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}: use radians or the p/qpi form") from None
    if not math.isfinite(t):
        raise ValueError(f"angle must be finite, got {text!r}")
    return RadialPoint(t)


def as_point(value: AngleLike) -> RadialPoint:
    if isinstance(value, RadialPoint):
        return value
    if isinstance(value, str):
        return parse_angle(value)
    if isinstance(value, Fraction):
        raise TypeError("ambiguous Fraction angle; use RadialPoint.of_pi for multiples of pi")
    return RadialPoint(float(value))
