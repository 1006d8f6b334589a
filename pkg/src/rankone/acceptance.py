"""Acceptance criteria, runnable from pytest and from ``rankone verify``.

Each criterion returns ``(passed, detail)``; ``detail`` is built only from
deterministic quantities so two runs of the same build print the same bytes.
Wall-clock time is measured but kept out of the report unless asked for.
"""

from __future__ import annotations

import ast
import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional

import numpy as np

from .catalog import FAMILIES, CatalogError, JacobiParams, jacobi_params, list_catalog, make_space
from .dimension import (
    dim_by_quadrature,
    dim_sequence,
    dim_spherical,
    dim_spherical_exact,
    fit_growth_order,
    _is_int,
)
from .jacobi import (
    decay_exponent,
    endpoint_value,
    jacobi_exact,
    jacobi_recurrence,
    jacobi_via_2f1,
    prefactor_log,
    residual_exponent,
    spherical_function,
    spherical_function_hypergeometric,
    spherical_sequence,
)
from .orbits import RouteDisagreement, classify_point, decide_pair
from .plancherel import (
    CONVERGENT,
    DIVERGENT,
    crosscheck,
    log_growth_fit,
    partial_sums,
    su2_residual_exponent,
    trig_closed_form,
    trig_series_reference,
)
from .radial import RadialPoint

QUICK_N_MAX = 10**5
FULL_N_MAX = 10**6

HALF_PI = RadialPoint.of_pi(Fraction(1, 2))
QUARTER_PI = RadialPoint.of_pi(Fraction(1, 4))
PI = RadialPoint.of_pi(1)


@dataclass(frozen=True)
class Criterion:
    number: int
    slug: str
    budget_s: float
    check: Callable[[str, dict], tuple]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    slug: str
    passed: bool
    detail: str
    elapsed: float
    budget_s: float

    def line(self, timings: bool = False) -> str:
        mark = "PASS" if self.passed else "FAIL"
        out = f"{mark} {self.number:02d} {self.slug}: {self.detail}"
        if timings:
            out += f" [{self.elapsed:.2f}s / {self.budget_s:g}s]"
        return out

    def as_dict(self) -> dict:
        return {"id": self.number, "name": self.slug, "passed": self.passed, "detail": self.detail}


def _fmt(v: float) -> str:
    return f"{v:.3e}"


# -- 1 ----------------------------------------------------------------------------


def load_reference_table() -> dict:
    text = resources.files("rankone").joinpath("data/catalog_reference.json").read_text(encoding="utf-8")
    return json.loads(text)


def eval_multiplicity(expr: str, q: Optional[int]) -> int:
    """Evaluate a table entry such as ``2(q-1)`` (implicit multiplication allowed)."""
    if expr == "-":
        return 0
    src = expr.replace(")(", ")*(")
    for d in "0123456789":
        src = src.replace(f"{d}(", f"{d}*(")
    tree = ast.parse(src, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "q":
            if q is None:
                raise ValueError(f"{expr!r} needs q")
            return q
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult)):
            lhs, rhs = ev(node.left), ev(node.right)
            return lhs + rhs if isinstance(node.op, ast.Add) else lhs - rhs if isinstance(node.op, ast.Sub) else lhs * rhs
        raise ValueError(f"unsupported expression {expr!r}")

    return ev(tree)


def catalog_diff(max_q: int = 6) -> list[str]:
    """Differences between the catalog and the checked-in reference table (empty when identical)."""
    ref = load_reference_table()
    problems = []
    rows = {r["family"]: r for r in ref["rows"]}
    if tuple(rows) != FAMILIES:
        problems.append(f"family list {tuple(rows)} != {FAMILIES}")
    for space in list_catalog(max_q):
        row = rows[space.tag]
        q = space.q
        want = (eval_multiplicity(row["m_alpha"], q), eval_multiplicity(row["m_2alpha"], q), row["root_system"])
        got = (space.m_alpha, space.m_2alpha, space.root_kind)
        if want != got:
            problems.append(f"{space.label}: table {want} vs catalog {got}")
        if (row["q_min"] is None) != (q is None) or (q is not None and q < row["q_min"]):
            problems.append(f"{space.label}: parameter range mismatch")
        name = row["space"]
        if q is not None:
            name = name.replace("2q+2", str(2 * q + 2)).replace("2q", str(2 * q)).replace("q+1", str(q + 1)).replace("q", str(q))
        if name != space.name:
            problems.append(f"{space.label}: name {space.name!r} vs table {name!r}")
    for ex in ref["excluded"]:
        try:
            make_space(ex["family"], ex["q"])
            problems.append(f"{ex['family']}({ex['q']}) should be excluded")
        except CatalogError as err:
            if ex["isomorphic_to"] not in str(err):
                problems.append(f"exclusion message lacks {ex['isomorphic_to']}")
    return problems


def _c1_catalog(mode, ctx):
    problems = catalog_diff(6)
    fams = {s.tag for s in list_catalog(6)}
    ok = not problems and len(fams) == 6
    return ok, f"{len(list_catalog(6))} entries over {len(fams)} families, diffs={len(problems)}" + (
        "" if ok else f" first={problems[0] if problems else 'families'}"
    )


# -- 2 ----------------------------------------------------------------------------

TRIANGLE_X = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(math.cos(1.0)), Fraction(1))


def catalog_params(max_q: int = 6) -> list[JacobiParams]:
    seen = {}
    for s in list_catalog(max_q):
        p = jacobi_params(s)
        seen[(p.a, p.b)] = p
    return [seen[k] for k in sorted(seen)]


def _c2_triangle(mode, ctx):
    worst = 0.0
    rounding_mismatch = 0
    endpoint_worst = 0.0
    for p in catalog_params(6):
        for n in range(21):
            for x in TRIANGLE_X:
                exact = jacobi_exact(n, p.a, p.b, x)
                xf = float(x)
                # same binary input: the exact route rounded must equal the 2F1 route bit for bit
                hyp = jacobi_via_2f1(n, p, xf)
                if hyp != float(jacobi_exact(n, p.a, p.b, Fraction(xf))):
                    rounding_mismatch += 1
                rec = jacobi_recurrence(n, p, xf)
                ref = float(exact)
                for v in (rec, hyp):
                    err = abs(v - ref) / abs(ref) if ref != 0 else (0.0 if v == 0 else math.inf)
                    worst = max(worst, err)
            for sign in (1, -1):
                closed = endpoint_value(n, p, sign)
                exact_end = jacobi_exact(n, p.a, p.b, sign)
                endpoint_worst = max(endpoint_worst, abs(closed - float(exact_end)) / abs(float(exact_end)))
    ok = worst <= 1e-10 and rounding_mismatch == 0 and endpoint_worst <= 1e-12
    return ok, f"float rel err {_fmt(worst)} (<=1e-10), rounding mismatches {rounding_mismatch}, endpoint rel err {_fmt(endpoint_worst)} (<=1e-12)"


# -- 3 ----------------------------------------------------------------------------


def _c3_normalization(mode, ctx):
    worst = 0.0
    for s in list_catalog(4):
        p = jacobi_params(s)
        for n in (1, 10, 10**3, 10**6):
            v = spherical_function(s, n, 0.0)
            worst = max(worst, abs(v.value - 1.0))
            # the closed-form product prefactor * P_n(1) must telescope as well
            worst = max(worst, abs(math.exp(v.prefactor_log) * endpoint_value(n, p, 1) - 1.0))
    return worst <= 1e-12, f"max |phi_n(0) - 1| = {_fmt(worst)} (<=1e-12)"


# -- 4 ----------------------------------------------------------------------------


def t_grid(space, count: int = 20) -> list[float]:
    """Cell-centred grid over one period of t."""
    return [(k + 0.5) * space.period / (2 * count) for k in range(count)]


def hypergeometric_agreement(space, n_max: int = 100) -> float:
    """Worst |Jacobi form - 2F1 form| / max(|2F1 form|, dim^-1/2).

    dim^-1/2 is the L^2 norm of phi_n; using it as a floor keeps the relative
    measure meaningful at grid points that land next to a zero of phi_n.
    """
    worst = 0.0
    grid = t_grid(space)
    for n in range(n_max + 1):
        scale = dim_spherical(space, n).dim ** -0.5
        for t in grid:
            ref = spherical_function_hypergeometric(space, n, t)
            v = spherical_function(space, n, t).value
            worst = max(worst, abs(v - ref) / max(abs(ref), scale))
    return worst


def _c4_hypergeometric(mode, ctx):
    worst = max(hypergeometric_agreement(s) for s in list_catalog(4))
    return worst <= 1e-10, f"max rel diff {_fmt(worst)} (<=1e-10) over n<=100, 20-point grid, q<=4"


# -- 5 ----------------------------------------------------------------------------


def _c5_dimensions(mode, ctx):
    ai = make_space("AI")
    n = np.arange(10**6 + 1)
    ai_err = float(np.max(np.abs(dim_sequence(ai, 10**6) - (2 * n + 1)) / (2 * n + 1)))
    a3 = make_space("AIII", 2)
    a3_err = max(abs(dim_spherical(a3, k).dim - (k + 1) ** 3) / (k + 1) ** 3 for k in range(101))
    quad_int = quad_half = 0.0
    for s in list_catalog(5):
        p = jacobi_params(s)
        half = not (_is_int(p.a) and _is_int(p.b))
        for k in range(31):
            d = dim_spherical(s, k).dim
            err = abs(dim_by_quadrature(s, k) - d) / d
            if half:
                quad_half = max(quad_half, err)
            else:
                quad_int = max(quad_int, err)
    growth = max(abs(fit_growth_order(s) - (s.m_alpha + s.m_2alpha)) for s in list_catalog(6))
    ok = ai_err <= 1e-9 and a3_err <= 1e-9 and quad_int <= 1e-8 and quad_half <= 1e-6 and growth <= 0.01
    return ok, (
        f"AI rel {_fmt(ai_err)}, AIII(2) rel {_fmt(a3_err)}, quadrature {_fmt(quad_int)}/{_fmt(quad_half)} "
        f"(int/half-int), growth dev {growth:.2e}"
    )


# -- 6 ----------------------------------------------------------------------------


def nonregular_lower_ratio(space, n_range=(100, 10**4)) -> float:
    """min/max over dyadic blocks of the block mean of |phi_n(pi/2)|^2 n^{m_alpha}."""
    lo, hi = n_range
    phi = spherical_sequence(space, hi, HALF_PI)
    n = np.arange(hi + 1, dtype=float)
    scaled = phi * phi * n**space.m_alpha
    means = []
    left = lo
    while 2 * left <= hi:
        means.append(float(np.mean(scaled[left : 2 * left])))
        left *= 2
    return min(means) / max(means)


def _c6_decay(mode, ctx):
    worst_reg = worst_non = 0.0
    min_ratio = math.inf
    for s in list_catalog(3):
        want = (s.m_alpha + s.m_2alpha) / 2
        for t in (0.7, 1.2):
            worst_reg = max(worst_reg, abs(decay_exponent(s, t) - want))
        if s.two_roots:
            worst_non = max(worst_non, abs(decay_exponent(s, HALF_PI) - s.m_alpha / 2))
            min_ratio = min(min_ratio, nonregular_lower_ratio(s))
    ok = worst_reg <= 0.05 and worst_non <= 0.05 and min_ratio >= 0.25
    return ok, f"regular dev {worst_reg:.4f}, non-regular dev {worst_non:.4f} (<=0.05), lower-bound ratio {min_ratio:.3f} (>=0.25)"


# -- 7 ----------------------------------------------------------------------------

RESIDUAL_PARAMS = (JacobiParams(0, 0), JacobiParams(1, 0), JacobiParams(7, 3), JacobiParams(1.5, 1.5))


def _c7_residual(mode, ctx):
    worst = min(residual_exponent(p, th) for p in RESIDUAL_PARAMS for th in (0.5, 1.0, 2.0))
    return worst >= 1.4, f"min fitted residual exponent {worst:.4f} (>=1.4)"


# -- 8 ----------------------------------------------------------------------------


def route_sweep(max_q: int = 6, steps: int = 100) -> tuple[int, int]:
    """(pairs checked, disagreements) over the exact grid t = k pi / steps."""
    grid = [RadialPoint.of_pi(Fraction(k, steps)) for k in range(steps + 1)]
    checked = bad = 0
    for s in list_catalog(max_q):
        for t1 in grid:
            for t2 in grid:
                checked += 1
                try:
                    v = decide_pair(s, t1, t2)
                except RouteDisagreement:
                    bad += 1
                    continue
                c1, c2 = classify_point(s, t1), classify_point(s, t2)
                if v.l1 != (c1.coset_dim + c2.coset_dim >= s.dim_gk) or (v.l2 and not v.l1):
                    bad += 1
    return checked, bad


def _c8_routes(mode, ctx):
    checked, bad = route_sweep()
    return bad == 0, f"{checked} pairs, {bad} disagreements"


# -- 9 ----------------------------------------------------------------------------


def series_matrix() -> list[tuple]:
    """(space, points, expected verdict) rows of the cross-check matrix."""
    ai, fii = make_space("AI"), make_space("FII")
    rows = [(ai, pts, DIVERGENT) for pts in ((HALF_PI, HALF_PI), (QUARTER_PI, QUARTER_PI), (HALF_PI, QUARTER_PI), (1.0, 1.3))]
    for tag, q in (("AIII", 2), ("CII", 2), ("FII", None)):
        rows.append((make_space(tag, q), (HALF_PI, HALF_PI), DIVERGENT))
    rows.append((make_space("AIII", 2), (0.7, HALF_PI), CONVERGENT))
    rows.append((make_space("AIII", 2), (0.7, 1.1), CONVERGENT))
    for tag, q in (("AIII", 3), ("CII", 3), ("AII", None), ("BII", 3), ("BII", 5)):
        rows.append((make_space(tag, q), (HALF_PI, HALF_PI), CONVERGENT))
        rows.append((make_space(tag, q), (0.7, 1.1), CONVERGENT))
    rows.append((ai, (HALF_PI, HALF_PI, HALF_PI), CONVERGENT))
    rows.append((fii, (HALF_PI, HALF_PI, HALF_PI), CONVERGENT))
    return rows


def _c9_series(mode, ctx):
    n_max = QUICK_N_MAX if mode == "quick" else FULL_N_MAX
    failures = []
    traces = []
    for space, pts, expected in series_matrix():
        rep = crosscheck(space, pts, n_max)
        traces.append(rep.trace.checkpoints)
        if not rep.agree or rep.expected_verdict != expected:
            failures.append(f"{space.label}{rep.points}->{rep.diagnosis.verdict}")
    ctx["series_traces"] = (n_max, traces)
    detail = f"{len(series_matrix())} cases at N_max={n_max}, {len(failures)} disagreements"
    if failures:
        detail += f" ({'; '.join(failures)})"
    return not failures, detail


# -- 10 ---------------------------------------------------------------------------


def _c10_log_divergence(mode, ctx):
    trace = partial_sums(make_space("AI"), (HALF_PI, HALF_PI), 10**6)
    fit = log_growth_fit(trace, 1e3, 1e6)
    ctx["ai_trace"] = trace.checkpoints
    ok = fit.r_squared >= 0.99 and fit.slope > 0
    return ok, f"slope {fit.slope:.4f} (>0), r^2 {fit.r_squared:.5f} (>=0.99) over N in [1e3, 1e6]"


# -- 11 ---------------------------------------------------------------------------


def _c11_trig(mode, ctx):
    cases = [(HALF_PI, "sine"), (1.0, "sine"), (PI, "sine"), (HALF_PI, "cosine"), (PI, "cosine")]
    worst = max(abs(trig_series_reference(x, 10**5, k) - trig_closed_form(x, k)) for x, k in cases)
    return worst <= 1e-3, f"max deviation {_fmt(worst)} (<=1e-3) at N=1e5"


# -- 12 ---------------------------------------------------------------------------


def _c12_su2(mode, ctx):
    worst = min(su2_residual_exponent(t) for t in (1.0, math.pi / 2))
    return worst >= 0.8, f"min fitted residual exponent {worst:.4f} (>=0.8)"


# -- 13 ---------------------------------------------------------------------------


def _c13_determinism(mode, ctx):
    """Recompute the series traces and demand bit-identical checkpoints."""
    if "series_traces" not in ctx:
        _c9_series(mode, ctx)
    n_max, first = ctx["series_traces"]
    again = [partial_sums(space, pts, n_max).checkpoints for space, pts, _ in series_matrix()]
    same = sum(a == b for a, b in zip(first, again))
    ai = partial_sums(make_space("AI"), (HALF_PI, HALF_PI), 10**6).checkpoints
    ok = same == len(first) and ("ai_trace" not in ctx or ctx["ai_trace"] == ai)
    return ok, f"{same}/{len(first)} traces bit-identical on rerun"


CRITERIA = (
    Criterion(1, "catalog-fidelity", 1.0, _c1_catalog),
    Criterion(2, "jacobi-oracle-triangle", 5.0, _c2_triangle),
    Criterion(3, "normalization", 5.0, _c3_normalization),
    Criterion(4, "hypergeometric-form", 10.0, _c4_hypergeometric),
    Criterion(5, "dimension-anchors", 30.0, _c5_dimensions),
    Criterion(6, "decay-exponents", 60.0, _c6_decay),
    Criterion(7, "asymptotic-residual", 30.0, _c7_residual),
    Criterion(8, "route-equivalence", 10.0, _c8_routes),
    Criterion(9, "series-crosscheck", 300.0, _c9_series),
    Criterion(10, "su2-log-divergence", 60.0, _c10_log_divergence),
    Criterion(11, "trig-closed-forms", 5.0, _c11_trig),
    Criterion(12, "su2-expansion", 30.0, _c12_su2),
    Criterion(13, "determinism", 300.0, _c13_determinism),
)


def run_criterion(crit: Criterion, mode: str = "full", ctx: Optional[dict] = None) -> CriterionResult:
    ctx = {} if ctx is None else ctx
    start = time.perf_counter()
    try:
        passed, detail = crit.check(mode, ctx)
    except Exception as err:  # a crash is a failed criterion, reported in line
        passed, detail = False, f"error: {type(err).__name__}: {err}"
    return CriterionResult(crit.number, crit.slug, bool(passed), detail, time.perf_counter() - start, crit.budget_s)


def run_all(mode: str = "quick", only: Optional[set] = None) -> list[CriterionResult]:
    if mode not in ("quick", "full"):
        raise ValueError("mode must be 'quick' or 'full'")
    ctx: dict = {}
    return [run_criterion(c, mode, ctx) for c in CRITERIA if only is None or c.number in only]
