"""Fitted polynomial growth of dim V_n against m_alpha + m_2alpha, with quadrature spot checks.

    python scripts/growth_orders.py --max-q 6
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from rankone.catalog import list_catalog
from rankone.dimension import dim_by_quadrature, dim_spherical, fit_growth_order


@dataclass
class GrowthConfig:
    max_q: int = 6
    n_range: tuple = (1000, 10_000)
    quadrature_n: int = 20


def run(cfg: GrowthConfig):
    for s in list_catalog(cfg.max_q):
        exact = dim_spherical(s, cfg.quadrature_n).dim
        quad = dim_by_quadrature(s, cfg.quadrature_n)
        yield {
            "space": s.label,
            "predicted": s.m_alpha + s.m_2alpha,
            "fitted": f"{fit_growth_order(s, cfg.n_range):.6f}",
            f"dim_{cfg.quadrature_n}": f"{exact:.0f}",
            "quadrature_rel_err": f"{abs(quad - exact) / exact:.2e}",
        }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-q", type=int, default=6)
    args = ap.parse_args()
    rows = list(run(GrowthConfig(max_q=args.max_q)))
    w = csv.DictWriter(sys.stdout, list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
