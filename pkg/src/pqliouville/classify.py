"""Literal hypothesis checking for the five reaction regimes.

Each instance is tested against every theorem that can speak to its
reaction kind; all matches are reported and `theorem` holds the
strongest one under the precedence product > IL > sum > HJ (the
dedicated Hamilton-Jacobi statement outranks the bounded-solution
rigidity result for its own kind, since its conclusion needs no
boundedness).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import AdmissibilityError
from .exponents import ExponentBundle, exponent_bundle, sum_exponent_bundle
from .instance import ProblemInstance
from .selection import BSelection, select_b_product, small_s_threshold, sum_selection
from .thresholds import ProductThresholds, SumThresholds, product_thresholds, sum_thresholds

THEOREMS = (
    "thm_HJ",
    "thm_product_A",
    "thm_product_B",
    "thm_product_C",
    "thm_IL",
    "thm_sum_growth",
    "thm_sum_liouville",
    "none",
)

PRODUCT_SHARED = "product_shared"

GRAD_U = "|grad u|"
GRAD_U_POWER = "|grad u^(1/b)|"


@dataclass(frozen=True)
class TheoremCondition:
    theorem: str
    label: str
    rendering: str
    passed: bool

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "label": self.label,
            "rendering": self.rendering,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class RegimeDecision:
    inst: ProblemInstance
    theorem: str
    matches: tuple[str, ...]
    conditions: tuple[TheoremCondition, ...]
    liouville: bool
    estimate_exponent: float | None
    estimate_target: str | None
    exponents: ExponentBundle | None
    product: ProductThresholds | None = None
    sums: SumThresholds | None = None
    selection: BSelection | None = None

    def conditions_for(self, theorem: str) -> tuple[TheoremCondition, ...]:
        """Conditions owned by a theorem (product cases share their common block)."""
        owners = {theorem}
        if theorem.startswith("thm_product_"):
            owners.add(PRODUCT_SHARED)
        return tuple(c for c in self.conditions if c.theorem in owners)

    def as_dict(self) -> dict:
        return {
            "instance": self.inst.as_dict(),
            "theorem": self.theorem,
            "matches": list(self.matches),
            "conditions": [c.as_dict() for c in self.conditions],
            "liouville": self.liouville,
            "estimate_exponent": self.estimate_exponent,
            "estimate_target": self.estimate_target,
            "exponents": self.exponents.as_dict() if self.exponents else None,
            "product_thresholds": _thresholds_dict(self.product),
            "sum_thresholds": _sums_dict(self.sums),
            "selection": self.selection.as_dict() if self.selection else None,
        }


def _thresholds_dict(th: ProductThresholds | None) -> dict | None:
    if th is None:
        return None
    return {
        "R": th.R,
        "Q": th.Q,
        "discriminant_ok": th.discriminant_ok,
        "Q1": th.Q1,
        "Q2": th.Q2,
        "Q3": th.Q3,
        "a": th.a,
    }


def _sums_dict(th: SumThresholds | None) -> dict | None:
    if th is None:
        return None
    return {
        "delta_pq": th.delta_pq,
        "m_max": th.m_max,
        "gap_ok": th.gap_ok,
        "s_minus": th.s_minus,
        "s_plus": th.s_plus,
    }


class _Trace:
    def __init__(self):
        self.rows: list[TheoremCondition] = []

    def add(self, theorem: str, label: str, rendering: str, passed) -> bool:
        self.rows.append(TheoremCondition(theorem, label, rendering, bool(passed)))
        return bool(passed)

    def all_pass(self, theorem: str, extra: tuple[str, ...] = ()) -> bool:
        owners = {theorem, *extra}
        rows = [r for r in self.rows if r.theorem in owners]
        return bool(rows) and all(r.passed for r in rows)


def _ishii_lions_rows(inst: ProblemInstance, trace: _Trace) -> None:
    trace.add(
        "thm_IL",
        "m_gt_q",
        f"m > q (gradient-dominated reaction, bounded solutions): {inst.m:.6g} > {inst.q:.6g}",
        inst.m > inst.q,
    )


def _classify_hj(inst: ProblemInstance, trace: _Trace) -> None:
    trace.add(
        "thm_HJ",
        "superlinear_gradient",
        f"m > p-1: {inst.m:.6g} > {inst.p - 1.0:.6g}",
        inst.m > inst.p - 1.0,
    )
    _ishii_lions_rows(inst, trace)


def _product_case_rows(
    inst: ProblemInstance, th: ProductThresholds, trace: _Trace, optimal_search: bool
) -> str | None:
    """Emit rows for the Q-position-selected case; return its theorem name."""
    if not th.discriminant_ok:
        return None
    Q, q1, q2 = th.Q, th.Q1, th.Q2
    s_thr = small_s_threshold(inst)
    if Q == q1 or Q == q2:
        trace.add(
            "thm_product_B",
            "boundary_window",
            f"Q in {{Q1, Q2}}: Q = {Q:.6g}",
            True,
        )
        trace.add(
            "thm_product_B",
            "small_s",
            f"s < (q-1)/(p-1+N(p-q)/2): {inst.s:.6g} < {s_thr:.6g}",
            inst.s < s_thr,
        )
        return "thm_product_B"
    if q1 < Q < q2:
        trace.add(
            "thm_product_A",
            "open_window",
            f"Q1 < Q < Q2: {q1:.6g} < {Q:.6g} < {q2:.6g}",
            True,
        )
        return "thm_product_A"
    theorem = "thm_product_C"
    trace.add(
        theorem,
        "small_s",
        f"s < (q-1)/(p-1+N(p-q)/2): {inst.s:.6g} < {s_thr:.6g}",
        inst.s < s_thr,
    )
    trace.add(theorem, "m_le_q", f"m <= q: {inst.m:.6g} <= {inst.q:.6g}", inst.m <= inst.q)
    trace.add(theorem, "q_lt_p", f"q < p: {inst.q:.6g} < {inst.p:.6g}", inst.q < inst.p)
    trace.add(
        theorem, "p_lt_m_plus_1", f"p < m+1: {inst.p:.6g} < {inst.m + 1.0:.6g}", inst.p < inst.m + 1.0
    )
    if optimal_search:
        sel = select_b_product(inst)
        trace.add(
            theorem,
            "window_numeric",
            f"numeric convex-case feasibility (vertex of the majorant is negative): {sel.case_tag}",
            sel.case_tag == "case3_convex",
        )
        return theorem
    if Q > q2:
        if th.Q3 is None:
            trace.add(theorem, "upper_window", "Q3 undefined at s=0", False)
        else:
            trace.add(
                theorem,
                "upper_window",
                f"Q2 < Q < Q3: {q2:.6g} < {Q:.6g} < {th.Q3:.6g}",
                Q < th.Q3,
            )
        return theorem
    # Q < Q1 lower window; needs the comparison ratio a.
    if th.a is None:
        trace.add(theorem, "lower_window", "comparison ratio a undefined (s=0 or p=q)", False)
        return theorem
    if th.a <= 1.0:
        lower = inst.N * ((1.0 - th.a) * th.Q1**2 + th.R) / (4.0 * (inst.q - 1.0))
        rendering = f"a <= 1 branch: N((1-a)Q1^2+R)/(4(q-1)) < Q < Q1: {lower:.6g} < {Q:.6g} < {q1:.6g}"
    else:
        lower = inst.N * th.R / (4.0 * (inst.q - 1.0))
        rendering = f"a > 1 branch: NR/(4(q-1)) < Q < Q1: {lower:.6g} < {Q:.6g} < {q1:.6g}"
    trace.add(theorem, "lower_window", rendering, lower < Q < q1)
    return theorem


def _classify_product(
    inst: ProblemInstance, trace: _Trace, optimal_search: bool
) -> tuple[ProductThresholds, str | None, BSelection | None, ExponentBundle | None]:
    th = product_thresholds(inst)
    Q = th.Q
    lim = 1.0 - (inst.p - inst.q) * (1.0 + inst.s) / Q if Q != 0.0 else float("-inf")
    trace.add(PRODUCT_SHARED, "s_positive", f"s > 0: {inst.s:.6g}", inst.s > 0.0)
    trace.add(PRODUCT_SHARED, "Q_positive", f"m+s-q+1 > 0: {Q:.6g}", Q > 0.0)
    trace.add(
        PRODUCT_SHARED,
        "beta2_limit_positive",
        f"1 - (p-q)(1+s)/Q > 0: {lim:.6g}",
        lim > 0.0,
    )
    trace.add(
        PRODUCT_SHARED,
        "superlinear_reaction",
        f"m+s > p-1: {inst.m + inst.s:.6g} > {inst.p - 1.0:.6g}",
        inst.m + inst.s > inst.p - 1.0,
    )
    trace.add(
        PRODUCT_SHARED,
        "discriminant",
        f"4(q-1)^2 >= N^2 R: {4.0 * (inst.q - 1.0) ** 2:.6g} >= {inst.N**2 * th.R:.6g}",
        th.discriminant_ok,
    )
    case_theorem = _product_case_rows(inst, th, trace, optimal_search)
    _ishii_lions_rows(inst, trace)
    selection = bundle = None
    if case_theorem is not None and trace.all_pass(case_theorem, (PRODUCT_SHARED,)):
        selection = select_b_product(inst)
        trace.add(
            case_theorem,
            "selection_feasible",
            f"constructive b-selection: {selection.case_tag}",
            selection.feasible,
        )
        if selection.feasible:
            bundle = exponent_bundle(inst, selection.b_star)
    return th, case_theorem, selection, bundle


def _classify_sum(
    inst: ProblemInstance, trace: _Trace
) -> tuple[SumThresholds, BSelection | None, ExponentBundle | None]:
    th = sum_thresholds(inst)
    N, p, q, s, m = inst.N, inst.p, inst.q, inst.s, inst.m
    liou = "thm_sum_liouville"
    trace.add(liou, "M_positive", f"M > 0: {inst.M:.6g}", inst.M > 0.0)
    trace.add(liou, "gap", f"N(p-q) < 2(q-1): {N * (p - q):.6g} < {2.0 * (q - 1.0):.6g}", th.gap_ok)
    trace.add(liou, "delta_positive", f"delta_pq = {th.delta_pq:.6g} > 0", th.delta_pq > 0.0)
    if th.s_minus is not None:
        s_lo = max(th.s_minus, p - 1.0)
        trace.add(
            liou,
            "s_window",
            f"max(s_minus, p-1) < s < s_plus: {s_lo:.6g} < {s:.6g} < {th.s_plus:.6g}",
            s_lo < s < th.s_plus,
        )
    else:
        trace.add(liou, "s_window", "s-window undefined (delta_pq <= 0)", False)
    lim = 1.0 - (p - q) * (1.0 + s) / (s - q + 1.0) if s != q - 1.0 else float("-inf")
    trace.add(liou, "beta2_limit_positive", f"1 - (p-q)(1+s)/(s-q+1) > 0: {lim:.6g}", lim > 0.0)
    trace.add(liou, "m_window", f"0 < m <= (N+2)(q-1)/N: 0 < {m:.6g} <= {th.m_max:.6g}", 0.0 < m <= th.m_max)

    growth = "thm_sum_growth"
    trace.add(growth, "M_positive", f"M > 0: {inst.M:.6g}", inst.M > 0.0)
    trace.add(growth, "m_p_gap", f"m-p+2 > 0: {m - p + 2.0:.6g}", m - p + 2.0 > 0.0)
    s_lo_g = max(q - 1.0, 1.0)
    trace.add(growth, "s_large", f"s > max(q-1, 1): {s:.6g} > {s_lo_g:.6g}", s > s_lo_g)
    m_lo = max(q * s / (s + 1.0), 2.0 * s)
    trace.add(growth, "m_large", f"m > max(qs/(s+1), 2s): {m:.6g} > {m_lo:.6g}", m > m_lo)

    selection = bundle = None
    if trace.all_pass(liou):
        selection = sum_selection(inst)
        trace.add(
            liou,
            "selection_feasible",
            f"constructive tau-selection: {selection.case_tag}",
            selection.feasible,
        )
        if selection.feasible:
            bundle = sum_exponent_bundle(inst, selection.t_star)
    return th, selection, bundle


def classify(inst: ProblemInstance, optimal_search: bool = False) -> RegimeDecision:
    """Classify an instance against every applicable theorem.

    Returns the full condition trace; non-matching instances come back
    with theorem='none'.  With optimal_search=True the convex-case
    window membership is delegated to the numeric feasibility of the
    majorant instead of the stated (non-optimal) closed-form bounds.
    """
    trace = _Trace()
    product_th = sums_th = selection = bundle = None
    candidates: list[str] = []

    if inst.kind == "hamilton_jacobi":
        _classify_hj(inst, trace)
        candidates = ["thm_HJ", "thm_IL"]
    elif inst.kind == "product":
        product_th, case_theorem, selection, bundle = _classify_product(
            inst, trace, optimal_search
        )
        candidates = ([case_theorem] if case_theorem else []) + ["thm_IL"]
    else:
        sums_th, selection, bundle = _classify_sum(inst, trace)
        candidates = ["thm_sum_liouville", "thm_sum_growth"]

    matches = []
    for theorem in candidates:
        extra = (PRODUCT_SHARED,) if theorem.startswith("thm_product_") else ()
        if trace.all_pass(theorem, extra):
            matches.append(theorem)

    theorem = matches[0] if matches else "none"
    liouville = theorem not in ("none", "thm_sum_growth")

    estimate = target = None
    exponents = None
    if theorem == "thm_HJ":
        estimate, target = 1.0 / (inst.m - inst.p + 1.0), GRAD_U
    elif theorem == "thm_sum_growth":
        estimate, target = 1.0 / (inst.m - inst.p + 2.0), GRAD_U
    elif theorem.startswith("thm_product_") or theorem == "thm_sum_liouville":
        exponents = bundle
        if bundle is not None:
            estimate, target = 2.0 / bundle.gamma, GRAD_U_POWER

    return RegimeDecision(
        inst=inst,
        theorem=theorem,
        matches=tuple(matches),
        conditions=tuple(trace.rows),
        liouville=liouville,
        estimate_exponent=estimate,
        estimate_target=target,
        exponents=exponents,
        product=product_th,
        sums=sums_th,
        selection=selection,
    )


class EstimateRate(NamedTuple):
    rate: float
    target: str


def estimate_rate(decision: RegimeDecision) -> EstimateRate:
    """Positive dist-power of the gradient bound and the function it bounds.

    The rigidity regime (thm_IL) yields constancy only, with no rate.
    """
    if decision.theorem == "thm_IL":
        raise AdmissibilityError("no estimate available")
    if decision.theorem == "none" or decision.estimate_exponent is None:
        raise AdmissibilityError("decision carries no estimate-bearing theorem")
    return EstimateRate(decision.estimate_exponent, decision.estimate_target)
