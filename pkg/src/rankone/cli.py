"""Command-line front end.

    rankone catalog [--max-q 6] [--format text|json|csv]
    rankone spherical --space AIII --q 2 --n 10 --t 0.7 [--oracle]
    rankone dims --space AI --n-max 3 [--check-quadrature]
    rankone classify --space AIII --q 2 --t1 1/2pi --t2 1/2pi [--t3 ...]
    rankone norm --space AI --t1 1/2pi --t2 1/2pi --n-max 100000
    rankone verify [--quick | --full]

Exit status: 0 success, 1 computational failure (or a failed criterion),
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from typing import Optional, Sequence

from . import __version__
from .catalog import CatalogError, catalog_record, list_catalog, parse_space, FAMILIES, PARAMETRIZED
from .orbits import DEFAULT_EPS

USAGE_ERROR = 2
COMPUTE_ERROR = 1


class UsageError(Exception):
    pass


def _angle(text: str):
    from .radial import parse_angle

    try:
        return parse_angle(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None, help="output format")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="worker threads for parallel kernels")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="lattice tolerance (radians) for float angles")

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("--space", required=True, help=f"family tag ({', '.join(FAMILIES)}), e.g. AIII or AIII(2)")
    space.add_argument("--q", type=int, default=None, help="family parameter for AIII, BII, CII")

    parser = argparse.ArgumentParser(prog="rankone", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list rank-one spaces and Jacobi parameters")
    p.add_argument("--max-q", type=int, default=6)

    p = sub.add_parser("spherical", parents=[common, space], help="evaluate a spherical function")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--t", type=_angle, required=True, help="radians or p/qpi")
    p.add_argument("--oracle", action="store_true", help="cross-check against the hypergeometric form")

    p = sub.add_parser("dims", parents=[common, space], help="dimensions of spherical representations")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--check-quadrature", action="store_true")

    p = sub.add_parser("classify", parents=[common, space], help="classify points and decide L1/L2")
    p.add_argument("--t1", type=_angle, required=True)
    p.add_argument("--t2", type=_angle, required=True)
    p.add_argument("--t3", type=_angle, default=None)

    p = sub.add_parser("norm", parents=[common, space], help="Plancherel series partial sums and diagnosis")
    p.add_argument("--t1", type=_angle, required=True)
    p.add_argument("--t2", type=_angle, required=True)
    p.add_argument("--t3", type=_angle, default=None)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--diagnosis", default=None, help="CSV mode: write the JSON diagnosis here (default stderr)")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    tier = p.add_mutually_exclusive_group()
    tier.add_argument("--quick", dest="mode", action="store_const", const="quick")
    tier.add_argument("--full", dest="mode", action="store_const", const="full")
    p.add_argument("--only", type=int, action="append", default=None, help="run only this criterion (repeatable)")
    p.add_argument("--timings", action="store_true", help="append wall-clock times (breaks byte-identical output)")
    p.set_defaults(mode="quick")
    return parser


@contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _dump_json(doc, fh) -> None:
    fh.write(json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False))
    fh.write("\n")


def _space(args):
    try:
        return parse_space(args.space, args.q)
    except (CatalogError, ValueError) as err:
        raise UsageError(str(err)) from None


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands ---------------------------------------------------------------


def cmd_catalog(args, fh) -> int:
    try:
        spaces = list_catalog(args.max_q)
    except CatalogError as err:
        raise UsageError(str(err)) from None
    records = [catalog_record(s) for s in spaces]
    fmt = args.format or "text"
    if fmt == "json":
        families = []
        for tag in FAMILIES:
            fam = [r for r in records if r["family"] == tag]
            families.append(
                {
                    "family": tag,
                    "root_kind": fam[0]["root_kind"],
                    "q_min": PARAMETRIZED.get(tag),
                    "spaces": fam,
                }
            )
        _dump_json({"max_q": args.max_q, "families": families}, fh)
    elif fmt == "csv":
        cols = ["family", "q", "name", "root_kind", "m_alpha", "m_2alpha", "dim_gk", "a", "b"]
        fh.write(_csv_text(cols, [["" if r[c] is None else r[c] for c in cols] for r in records]))
    else:
        head = f"{'family':<6} {'q':>3} {'space':<26} {'roots':<5} {'m_a':>4} {'m_2a':>4} {'dim':>4} {'a':>5} {'b':>5}"
        fh.write(head + "\n")
        for r in records:
            q = "" if r["q"] is None else r["q"]
            fh.write(
                f"{r['family']:<6} {q:>3} {r['name']:<26} {r['root_kind']:<5} {r['m_alpha']:>4} "
                f"{r['m_2alpha']:>4} {r['dim_gk']:>4} {r['a']:>5g} {r['b']:>5g}\n"
            )
    return 0


def cmd_spherical(args, fh) -> int:
    from .jacobi import MAX_2F1_DEGREE, jacobi_params, spherical_function, spherical_function_hypergeometric

    space = _space(args)
    if args.oracle and args.n > MAX_2F1_DEGREE:
        raise UsageError(f"--oracle supports n <= {MAX_2F1_DEGREE}")
    v = spherical_function(space, args.n, args.t)
    p = jacobi_params(space)
    doc = {
        "space": space.label,
        "n": v.n,
        "t": args.t.t,
        "t_input": str(args.t),
        "a": p.a,
        "b": p.b,
        "value": v.value,
        "prefactor_log": v.prefactor_log,
    }
    if args.oracle:
        h = spherical_function_hypergeometric(space, args.n, args.t)
        doc["oracle"] = {"hypergeometric": h, "abs_diff": abs(h - v.value)}
    if (args.format or "text") == "json":
        _dump_json(doc, fh)
    elif args.format == "csv":
        cols = [k for k in doc if k != "oracle"]
        row = [doc[k] for k in cols]
        if args.oracle:
            cols += ["hypergeometric", "abs_diff"]
            row += [doc["oracle"]["hypergeometric"], doc["oracle"]["abs_diff"]]
        fh.write(_csv_text(cols, [row]))
    else:
        fh.write(f"{space.label} n={v.n} t={args.t}: phi = {v.value!r}\n")
        fh.write(f"log prefactor = {v.prefactor_log!r}\n")
        if args.oracle:
            fh.write(f"hypergeometric = {doc['oracle']['hypergeometric']!r}  |diff| = {doc['oracle']['abs_diff']:.3e}\n")
    return 0


# dimensions are integers; the float closed form is good to ~1e-15 relative,
# so rounding is exact well below this bound
_EXACT_DIM_LIMIT = 1e12


def _integral(d: float):
    return int(round(d)) if d < _EXACT_DIM_LIMIT else d


def cmd_dims(args, fh) -> int:
    from .dimension import dim_by_quadrature, dim_spherical

    space = _space(args)
    rows = []
    for n in range(args.n_max + 1):
        d = _integral(dim_spherical(space, n).dim)
        if args.check_quadrature:
            qd = dim_by_quadrature(space, n)
            rows.append({"n": n, "dim": d, "quadrature_dim": qd, "rel_err": abs(qd - d) / d})
        else:
            rows.append({"n": n, "dim": d, "quadrature_dim": None, "rel_err": None})
    fmt = args.format or "csv"
    if fmt == "json":
        _dump_json({"space": space.label, "growth_order": space.m_alpha + space.m_2alpha, "rows": rows}, fh)
    else:
        def cell(v):
            return "" if v is None else repr(v)

        cols = ["n", "dim", "quadrature_dim", "rel_err"]
        fh.write(_csv_text(cols, [[cell(r[c]) for c in cols] for r in rows]))
    return 0


def cmd_classify(args, fh) -> int:
    from .orbits import decide

    space = _space(args)
    pts = [args.t1, args.t2] + ([args.t3] if args.t3 is not None else [])
    v = decide(space, pts, eps=args.eps)
    doc = {"space": space.label, **v.as_dict()}
    fmt = args.format or "json"
    if fmt == "text":
        for p, c in zip(pts, v.classes):
            fh.write(f"t={p}: {c.kind} (annihilators {sorted(c.annihilators) or '-'}, dim KzK = {c.coset_dim})\n")
        fh.write(f"L1: {v.l1}  L2: {v.l2}  [{v.case_fired}] dim sum {doc['dim_sum']} vs dim G/K {doc['dim_gk']}\n")
    elif fmt == "csv":
        fh.write(_csv_text(["space", "l1", "l2", "case_fired", "dim_sum", "dim_gk"], [[space.label, v.l1, v.l2, v.case_fired, doc["dim_sum"], doc["dim_gk"]]]))
    else:
        _dump_json(doc, fh)
    return 0


def cmd_norm(args, fh) -> int:
    from .plancherel import MIN_BLOCKS, N_MAX_LIMIT, crosscheck

    space = _space(args)
    if args.n_max >= N_MAX_LIMIT + 1:
        raise UsageError(f"--n-max must be <= {N_MAX_LIMIT}")
    if args.n_max < 2 ** (MIN_BLOCKS + 1) - 1:
        raise UsageError(f"--n-max must be >= {2 ** (MIN_BLOCKS + 1) - 1} for a diagnosis")
    pts = [args.t1, args.t2] + ([args.t3] if args.t3 is not None else [])
    rep = crosscheck(space, pts, args.n_max, eps=args.eps)
    diagnosis = {**rep.diagnosis.as_dict(), "closed_form_l2": rep.closed_form_l2, "agree": rep.agree}
    rows = [
        {"N": n, "S_N": s, "block_mean": m}
        for (n, s), m in zip(rep.trace.checkpoints, rep.trace.checkpoint_block_means())
    ]
    fmt = args.format or "csv"
    if fmt == "json":
        _dump_json({"space": space.label, "points": list(rep.points), "checkpoints": rows, "diagnosis": diagnosis}, fh)
    else:
        fh.write(_csv_text(["N", "S_N", "block_mean"], [[r["N"], repr(r["S_N"]), "" if r["block_mean"] is None else repr(r["block_mean"])] for r in rows]))
        text = json.dumps(diagnosis, indent=2, allow_nan=False) + "\n"
        if args.diagnosis:
            with open(args.diagnosis, "w", encoding="utf-8") as dh:
                dh.write(text)
        else:
            sys.stderr.write(text)
    return 0


def cmd_verify(args, fh) -> int:
    from .acceptance import run_all

    results = run_all(args.mode, set(args.only) if args.only else None)
    ok = all(r.passed for r in results)
    if (args.format or "text") == "json":
        doc = {"mode": args.mode, "passed": ok, "criteria": [r.as_dict() for r in results]}
        _dump_json(doc, fh)
    else:
        fh.write(f"rankone verify ({args.mode})\n")
        for r in results:
            fh.write(r.line(args.timings) + "\n")
        fh.write(f"{sum(r.passed for r in results)}/{len(results)} criteria passed\n")
    return 0 if ok else COMPUTE_ERROR


COMMANDS = {
    "catalog": cmd_catalog,
    "spherical": cmd_spherical,
    "dims": cmd_dims,
    "classify": cmd_classify,
    "norm": cmd_norm,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad usage
    if args.threads is not None:
        from ._kernels import set_threads

        set_threads(args.threads)
    if not (0 < args.eps <= 1e-3):
        print(f"rankone: error: --eps must lie in (0, 1e-3]", file=sys.stderr)
        return USAGE_ERROR
    try:
        with _sink(args.out) as fh:
            return COMMANDS[args.command](args, fh)
    except UsageError as err:
        print(f"rankone: error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except (ArithmeticError, ValueError, RuntimeError) as err:
        print(f"rankone: {args.command} failed: {err}", file=sys.stderr)
        return COMPUTE_ERROR


if __name__ == "__main__":
    sys.exit(main())
