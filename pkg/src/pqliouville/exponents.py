"""Exponent bookkeeping for the power change of variable u = v^b.

The auxiliary power b and the induced exponent t = (b-1)(m-q+1) + b s
are mutually inverse through b = (t + m - q + 1)/Q with Q = m+s-q+1.
The decay exponents beta1 (used for b in (0,1]) and beta2 (for b > 1)
feed the final gradient-bound exponent gamma.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AdmissibilityError
from .instance import ProblemInstance


def _combined(p: float, q: float, s: float, m: float) -> float:
    return m + s - q + 1.0


def _beta1(p: float, q: float, s: float, m: float, b: float) -> float:
    bq = b * _combined(p, q, s, m)
    return bq / (bq + q - m) - (p - q)


def _beta2(p: float, q: float, s: float, m: float, b: float) -> float:
    bq = b * _combined(p, q, s, m)
    return (b - 1.0) * (p - q) * (m - q) / (bq + q - m) + _beta1(p, q, s, m, b)


def admissible_floor(inst: ProblemInstance) -> float:
    """Lower admissibility bound for b: max{0, (m-q+1)/Q}."""
    Q = inst.combined_exponent
    if Q <= 0.0:
        raise AdmissibilityError("degenerate combined exponent (m+s-q+1 must be positive)")
    return max(0.0, (inst.m - inst.q + 1.0) / Q)


def t_from_b(inst: ProblemInstance, b: float) -> float:
    return (b - 1.0) * (inst.m - inst.q + 1.0) + b * inst.s


def b_from_t(inst: ProblemInstance, t: float) -> float:
    Q = inst.combined_exponent
    if Q <= 0.0:
        raise AdmissibilityError("degenerate combined exponent (m+s-q+1 must be positive)")
    return (t + inst.m - inst.q + 1.0) / Q


def beta1(inst: ProblemInstance, b: float) -> float:
    """First decay exponent bQ/(bQ + q - m) - (p - q)."""
    return _beta1(inst.p, inst.q, inst.s, inst.m, b)


def beta2(inst: ProblemInstance, b: float) -> float:
    """Second decay exponent; equals beta1 plus the correction
    (b-1)(p-q)(m-q)/(bQ + q - m), which vanishes at p = q or m = q."""
    return _beta2(inst.p, inst.q, inst.s, inst.m, b)


def beta2_large_b_limit(inst: ProblemInstance) -> float:
    """Limit of beta2 as b -> infinity: 1 - (p-q)(1+s)/Q."""
    return 1.0 - (inst.p - inst.q) * (1.0 + inst.s) / inst.combined_exponent


def gamma_exponent(inst: ProblemInstance, b: float) -> float:
    """Gradient-bound exponent: min{1, beta1} for b in (0,1], min{1, beta2} for b > 1.

    This is the literal indicator-function evaluation: the branch not
    selected contributes exactly zero.
    """
    if b <= 1.0:
        return min(1.0, beta1(inst, b))
    return min(1.0, beta2(inst, b))


def theta_exponent(inst: ProblemInstance, b: float) -> float | None:
    """Interpolation power theta, only emitted when it lands in (0, 2)."""
    t = t_from_b(inst, b)
    if b <= 1.0:
        theta = 2.0 / (t + 1.0)
    else:
        theta = (2.0 * (b - 1.0) * (inst.p - inst.q) + 2.0) / (t + 1.0)
    if 0.0 < theta < 2.0:
        return theta
    return None


@dataclass(frozen=True)
class ExponentBundle:
    b: float
    t: float
    beta1: float
    beta2: float
    gamma: float
    theta: float | None

    def as_dict(self) -> dict:
        return {
            "b": self.b,
            "t": self.t,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "gamma": self.gamma,
            "theta": self.theta,
        }


def exponent_bundle(inst: ProblemInstance, b: float) -> ExponentBundle:
    """All change-of-variable exponents at a given admissible b.

    Requires Q = m+s-q+1 > 0 and b strictly above the admissible floor
    max{0, (m-q+1)/Q}; this guarantees t > 0 and a positive denominator
    bQ + q - m = t + 1 in beta1/beta2.
    """
    floor = admissible_floor(inst)
    if not b > floor:
        raise AdmissibilityError("b below admissible floor (b>0 bound)")
    return ExponentBundle(
        b=b,
        t=t_from_b(inst, b),
        beta1=beta1(inst, b),
        beta2=beta2(inst, b),
        gamma=gamma_exponent(inst, b),
        theta=theta_exponent(inst, b),
    )


def sum_beta2(inst: ProblemInstance, b: float) -> float:
    """Decay exponent for the sum reaction at power b:
    1 - q((b-1)(p-q) + 1)/(b(s-q+1) + q) - p + q.

    Algebraically this is beta2 with the gradient power m set to 0 (the
    u^s part of the reaction drives the sum-case trinomial).
    """
    p, q, s = inst.p, inst.q, inst.s
    return 1.0 - q * ((b - 1.0) * (p - q) + 1.0) / (b * (s - q + 1.0) + q) - p + q


def sum_exponent_bundle(inst: ProblemInstance, tau: float) -> ExponentBundle:
    """Exponents for the sum reaction in terms of tau = b(s-q+1) + q - 1.

    Requires s > q - 1 and tau > s so that b = (tau-q+1)/(s-q+1) > 1.
    """
    p, q, s = inst.p, inst.q, inst.s
    if not s > q - 1.0:
        raise AdmissibilityError("sum exponents require s > q - 1")
    b = (tau - q + 1.0) / (s - q + 1.0)
    if not b > 1.0:
        raise AdmissibilityError("sum exponents require tau > s (so that b > 1)")
    bta2 = sum_beta2(inst, b)
    theta = (2.0 * (b - 1.0) * (p - q) + 2.0) / (tau + 1.0)
    return ExponentBundle(
        b=b,
        t=tau,
        beta1=_beta1(p, q, s, 0.0, b),
        beta2=bta2,
        gamma=min(1.0, bta2),
        theta=theta if 0.0 < theta < 2.0 else None,
    )
