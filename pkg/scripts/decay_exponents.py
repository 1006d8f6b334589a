"""Fitted decay exponents of |phi_n(t)| against the predicted orders.

Regular points decay like n^{-(m_alpha+m_2alpha)/2}; the BC1 point t = pi/2
decays like n^{-m_alpha/2}.  Writes one CSV row per (space, t).

    python scripts/decay_exponents.py --max-q 4 --out decay.csv
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from rankone.catalog import list_catalog
from rankone.jacobi import decay_exponent
from rankone.radial import RadialPoint


@dataclass
class DecayConfig:
    max_q: int = 3
    n_lo: int = 100
    n_hi: int = 10_000
    regular_t: tuple = (0.7, 1.2)
    windows: int = 40
    extra: list = field(default_factory=list)


def run(cfg: DecayConfig):
    half = RadialPoint.of_pi(Fraction(1, 2))
    for s in list_catalog(cfg.max_q):
        cases = [(str(t), t, (s.m_alpha + s.m_2alpha) / 2) for t in cfg.regular_t]
        if s.two_roots:
            cases.append(("1/2pi", half, s.m_alpha / 2))
        for label, t, want in cases:
            got = decay_exponent(s, t, (cfg.n_lo, cfg.n_hi), cfg.windows)
            yield {"space": s.label, "t": label, "predicted": want, "fitted": round(got, 6), "deviation": round(got - want, 6)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-q", type=int, default=3)
    ap.add_argument("--n-hi", type=int, default=10_000)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    cfg = DecayConfig(max_q=args.max_q, n_hi=args.n_hi)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.DictWriter(fh, ["space", "t", "predicted", "fitted", "deviation"], lineterminator="\n")
    w.writeheader()
    for row in run(cfg):
        w.writerow(row)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
