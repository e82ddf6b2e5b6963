"""Constructive selection of the change-of-variable power b.

The product reaction splits into three cases by the position of the
combined exponent Q relative to the window [Q1, Q2]:

  case 1  (Q strictly inside):  L1 < 0, take t on a doubling schedule
          until L(t) <= -1 with a positive gamma;
  case 2  (Q on the boundary):  L1 = 0 and, under the small-s side
          condition, L2 < 0, so the same doubling schedule applies;
  case 3  (Q outside):          L1 > 0, the quadratic is strictly convex
          with vertex t* = -L2/(2 L1); feasibility is the discriminant
          condition 4 L1 L3 < L2^2 and kappa = -L(t*).

The sum reaction always selects a large tau once its leading
coefficient is negative; only that coefficient is available in closed
form, so the certificate is the coefficient sign plus the b > 1 and
beta2 > 0 conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AdmissibilityError
from .exponents import (
    admissible_floor,
    b_from_t,
    beta1,
    beta2,
    gamma_exponent,
    sum_beta2,
)
from .instance import ProblemInstance
from .thresholds import product_thresholds, sum_thresholds
from .trinomial import product_trinomial, sum_leading_coefficient

DOUBLING_CAP = 2.0**60


@dataclass(frozen=True)
class ConditionCheck:
    label: str
    rendering: str
    passed: bool

    def as_dict(self) -> dict:
        return {"label": self.label, "rendering": self.rendering, "passed": self.passed}


@dataclass(frozen=True)
class BSelection:
    case_tag: str
    t_star: float | None
    b_star: float | None
    kappa: float | None
    epsilon_used: float
    trace: tuple[ConditionCheck, ...]

    @property
    def feasible(self) -> bool:
        return self.case_tag != "infeasible"

    def as_dict(self) -> dict:
        return {
            "case_tag": self.case_tag,
            "t_star": self.t_star,
            "b_star": self.b_star,
            "kappa": self.kappa,
            "epsilon_used": self.epsilon_used,
            "trace": [c.as_dict() for c in self.trace],
        }


def _check(label: str, rendering: str, passed: bool) -> ConditionCheck:
    return ConditionCheck(label=label, rendering=rendering, passed=bool(passed))


def _infeasible(trace: list[ConditionCheck]) -> BSelection:
    return BSelection(
        case_tag="infeasible",
        t_star=None,
        b_star=None,
        kappa=None,
        epsilon_used=0.0,
        trace=tuple(trace),
    )


def small_s_threshold(inst: ProblemInstance) -> float:
    """Side condition bound (q-1)/(p-1 + N(p-q)/2); equivalent to L2 < 0."""
    return (inst.q - 1.0) / (inst.p - 1.0 + inst.N * (inst.p - inst.q) / 2.0)


def _shared_hypotheses(inst: ProblemInstance, th, trace: list[ConditionCheck]) -> bool:
    Q = inst.combined_exponent
    lim = 1.0 - (inst.p - inst.q) * (1.0 + inst.s) / Q if Q != 0.0 else float("-inf")
    rows = [
        ("s_positive", f"s > 0: {inst.s:.6g}", inst.s > 0.0),
        ("Q_positive", f"m+s-q+1 > 0: {Q:.6g}", Q > 0.0),
        ("beta2_limit_positive", f"1 - (p-q)(1+s)/Q > 0: {lim:.6g}", lim > 0.0),
        (
            "superlinear_reaction",
            f"m+s > p-1: {inst.m + inst.s:.6g} > {inst.p - 1.0:.6g}",
            inst.m + inst.s > inst.p - 1.0,
        ),
        (
            "discriminant",
            f"4(q-1)^2 >= N^2 R: {4.0 * (inst.q - 1.0) ** 2:.6g} >= {inst.N**2 * th.R:.6g}",
            th.discriminant_ok,
        ),
    ]
    ok = True
    for label, rendering, passed in rows:
        trace.append(_check(label, rendering, passed))
        ok = ok and passed
    return ok


def _doubling_search(inst: ProblemInstance, coeffs, floor: float, trace: list[ConditionCheck]):
    """First t in {1, 2, 4, ...} with L(t) <= -1, b above the floor and gamma > 0."""
    t = 1.0
    while t <= DOUBLING_CAP:
        value = coeffs.value(t)
        b = b_from_t(inst, t)
        if value <= -1.0 and b > floor and b > 0.0 and gamma_exponent(inst, b) > 0.0:
            trace.append(
                _check(
                    "doubling_accept",
                    f"t={t:.6g}: L(t)={value:.6g} <= -1, b={b:.6g}, gamma={gamma_exponent(inst, b):.6g} > 0",
                    True,
                )
            )
            return t, b
        t *= 2.0
    trace.append(_check("doubling_accept", "no t <= 2^60 met L(t) <= -1 with gamma > 0", False))
    return None


def select_b_product(inst: ProblemInstance) -> BSelection:
    """Constructively select (t*, b*, kappa) for the product reaction.

    Dispatches on the position of Q relative to [Q1, Q2] (boundary
    instances use exact floating comparison and route to case 2).  Emits
    the full inequality trace; infeasible instances name the failing
    check.
    """
    if inst.kind != "product":
        raise AdmissibilityError("b-selection requires kind='product'")
    trace: list[ConditionCheck] = []
    th = product_thresholds(inst)
    if not _shared_hypotheses(inst, th, trace):
        return _infeasible(trace)
    coeffs = product_trinomial(inst, epsilon=0.0)
    floor = admissible_floor(inst)
    Q, q1, q2 = th.Q, th.Q1, th.Q2
    s_thr = small_s_threshold(inst)

    if Q == q1 or Q == q2:
        trace.append(_check("case", f"Q on window boundary: Q={Q:.6g}", True))
        side = inst.s < s_thr
        trace.append(_check("small_s", f"s < (q-1)/(p-1+N(p-q)/2): {inst.s:.6g} < {s_thr:.6g}", side))
        if not side:
            return _infeasible(trace)
        trace.append(_check("L2_negative", f"L2 = {coeffs.L2:.6g} < 0", coeffs.L2 < 0.0))
        if not coeffs.L2 < 0.0:
            return _infeasible(trace)
        found = _doubling_search(inst, coeffs, floor, trace)
        if found is None:
            return _infeasible(trace)
        t, b = found
        return BSelection("case2_L1zero", t, b, 1.0, 0.0, tuple(trace))

    if q1 < Q < q2:
        trace.append(_check("case", f"Q1 < Q < Q2: {q1:.6g} < {Q:.6g} < {q2:.6g}", True))
        trace.append(_check("L1_negative", f"L1 = {coeffs.L1:.6g} < 0", coeffs.L1 < 0.0))
        found = _doubling_search(inst, coeffs, floor, trace)
        if found is None:
            return _infeasible(trace)
        t, b = found
        return BSelection("case1_L1neg", t, b, 1.0, 0.0, tuple(trace))

    # Q outside [Q1, Q2]: strictly convex quadratic.
    trace.append(_check("case", f"Q outside [Q1, Q2]: Q={Q:.6g}", True))
    trace.append(_check("L1_positive", f"L1 = {coeffs.L1:.6g} > 0", coeffs.L1 > 0.0))
    if not coeffs.L1 > 0.0:
        return _infeasible(trace)
    trace.append(
        _check(
            "L2_negative",
            f"L2 = {coeffs.L2:.6g} < 0 (equivalent to s < {s_thr:.6g})",
            coeffs.L2 < 0.0,
        )
    )
    if not coeffs.L2 < 0.0:
        return _infeasible(trace)
    disc_ok = 4.0 * coeffs.L1 * coeffs.L3 < coeffs.L2 * coeffs.L2
    trace.append(
        _check(
            "vertex_discriminant",
            f"4 L1 L3 < L2^2: {4.0 * coeffs.L1 * coeffs.L3:.6g} < {coeffs.L2**2:.6g}",
            disc_ok,
        )
    )
    if not disc_ok:
        return _infeasible(trace)
    t_star = -coeffs.L2 / (2.0 * coeffs.L1)
    kappa = -coeffs.value(t_star)
    b_star = b_from_t(inst, t_star)
    trace.append(_check("b_floor", f"b* = {b_star:.6g} > {floor:.6g}", b_star > floor))
    if not b_star > floor:
        return _infeasible(trace)
    gamma = gamma_exponent(inst, b_star)
    branch = (
        f"b* <= 1: gamma = min(1, beta1) with beta1({b_star:.6g}) = {beta1(inst, b_star):.6g}"
        if b_star <= 1.0
        else f"b* > 1: gamma = min(1, beta2) with beta2({b_star:.6g}) = {beta2(inst, b_star):.6g}"
        " (beta1 increasing in b for m <= q; beta2 monotone via its Moebius form)"
    )
    trace.append(_check("gamma_positive", f"gamma = {gamma:.6g} > 0; {branch}", gamma > 0.0))
    if not gamma > 0.0:
        return _infeasible(trace)
    return BSelection("case3_convex", t_star, b_star, kappa, 0.0, tuple(trace))


def sum_selection(inst: ProblemInstance) -> BSelection:
    """Select tau (hence b > 1) for the sum reaction.

    Verifies the closed-form hypotheses, the negativity of the leading
    quadratic coefficient, and picks the first tau in {1, 2, 4, ...}
    with b = (tau-q+1)/(s-q+1) > 1 and beta2(b) > 0.
    """
    if inst.kind != "sum":
        raise AdmissibilityError("tau-selection requires kind='sum'")
    trace: list[ConditionCheck] = []
    th = sum_thresholds(inst)
    N, p, q, s, m = inst.N, inst.p, inst.q, inst.s, inst.m
    trace.append(
        _check("gap", f"N(p-q) < 2(q-1): {N * (p - q):.6g} < {2.0 * (q - 1.0):.6g}", th.gap_ok)
    )
    trace.append(_check("delta_positive", f"delta_pq = {th.delta_pq:.6g} > 0", th.delta_pq > 0.0))
    if not (th.gap_ok and th.delta_pq > 0.0):
        return _infeasible(trace)
    s_lo = max(th.s_minus, p - 1.0)
    s_window = s_lo < s < th.s_plus
    trace.append(
        _check("s_window", f"max(s_minus, p-1) < s < s_plus: {s_lo:.6g} < {s:.6g} < {th.s_plus:.6g}", s_window)
    )
    lim = 1.0 - (p - q) * (1.0 + s) / (s - q + 1.0) if s != q - 1.0 else float("-inf")
    trace.append(_check("beta2_limit_positive", f"1 - (p-q)(1+s)/(s-q+1) > 0: {lim:.6g}", lim > 0.0))
    m_ok = 0.0 < m <= th.m_max
    trace.append(_check("m_window", f"0 < m <= (N+2)(q-1)/N: {m:.6g} <= {th.m_max:.6g}", m_ok))
    if not (s_window and lim > 0.0 and m_ok):
        return _infeasible(trace)
    lead = sum_leading_coefficient(inst)
    trace.append(_check("leading_coefficient", f"leading tau^2 coefficient = {lead:.6g} < 0", lead < 0.0))
    if not lead < 0.0:
        return _infeasible(trace)
    tau = 1.0
    while tau <= DOUBLING_CAP:
        if tau > s:
            b = (tau - q + 1.0) / (s - q + 1.0)
            bvalue = sum_beta2(inst, b)
            if b > 1.0 and bvalue > 0.0:
                trace.append(
                    _check(
                        "tau_accept",
                        f"tau={tau:.6g}: b={b:.6g} > 1, beta2={bvalue:.6g} > 0",
                        True,
                    )
                )
                return BSelection("sum_large_tau", tau, b, 1.0, 0.0, tuple(trace))
        tau *= 2.0
    trace.append(_check("tau_accept", "no tau <= 2^60 gave b > 1 with beta2 > 0", False))
    return _infeasible(trace)
