"""Independent oracles and randomized samplers used across the test suite.

Everything here deliberately avoids the code paths it is used to check:
the radial oracle integrates the first-integral form with quadrature and
scalar root finding, the operator reference is a hand-derived analytic
expansion, and the parameter-window oracle brackets the feasibility
predicate by bisection.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import brentq

from pqliouville import ProblemInstance, product_thresholds, product_trinomial
from pqliouville.radial import flux
from pqliouville.selection import small_s_threshold


# ---------------------------------------------------------------------------
# analytic reference for the (p,q)-operator on u = sin(x1) cos(x2)
# ---------------------------------------------------------------------------

def pq_reference_sin_cos(x, y, p, q):
    """div(|grad u|^(p-2) grad u) + div(|grad u|^(q-2) grad u) for
    u = sin(x) cos(y), from the expansion
    |grad u|^(s-2) lap(u) + (s-2)|grad u|^(s-4) <D2u grad u, grad u>."""
    u = np.sin(x) * np.cos(y)
    ux = np.cos(x) * np.cos(y)
    uy = -np.sin(x) * np.sin(y)
    uxx = -u
    uyy = -u
    uxy = -np.cos(x) * np.sin(y)
    z = ux * ux + uy * uy
    quad = uxx * ux * ux + 2.0 * uxy * ux * uy + uyy * uy * uy
    lap = -2.0 * u
    out = np.zeros_like(u)
    for s in (p, q):
        out = out + z ** ((s - 2.0) / 2.0) * lap + (s - 2.0) * z ** ((s - 4.0) / 2.0) * quad
    return out


# ---------------------------------------------------------------------------
# semi-analytic constant-source radial profile (quadrature + root finding)
# ---------------------------------------------------------------------------

def inverse_flux(values, p, q):
    """Pointwise inverse of the strictly increasing odd map
    t -> (|t|^(p-2) + |t|^(q-2)) t, by bracketing and Brent iteration."""
    values = np.asarray(values, dtype=float)
    out = np.empty_like(values)
    flat_in = np.ravel(values)
    flat_out = out.ravel()
    for i, yi in enumerate(flat_in):
        if yi == 0.0:
            flat_out[i] = 0.0
            continue
        mag = abs(yi)
        hi = max(mag ** (1.0 / (p - 1.0)), mag ** (1.0 / (q - 1.0)), 1e-12)
        while flux(hi, p, q, 0.0) < mag:
            hi *= 2.0
        root = brentq(lambda t: flux(t, p, q, 0.0) - mag, 0.0, hi, xtol=1e-15, rtol=8.9e-16)
        flat_out[i] = np.sign(yi) * root
    return out


def constant_rhs_profile(N, p, q, r0, r1, u0, u1, c, r_nodes, refine=32):
    """Exact-flux solution of -(r^(N-1) Phi(u'))' = r^(N-1) c with Dirichlet data.

    The first integral gives Phi(u'(r)) = -(c/N) r + K r^(1-N); the free
    constant K is found by shooting on the right boundary value, with
    the profile integral done on a refine-times finer grid.
    """
    n_fine = (len(r_nodes) - 1) * refine + 1
    rf = np.linspace(r0, r1, n_fine)

    def profile(K):
        g = -(c / N) * rf + K * rf ** (1.0 - N)
        dup = inverse_flux(g, p, q)
        u = u0 + cumulative_trapezoid(dup, rf, initial=0.0)
        return u

    def mismatch(K):
        return profile(K)[-1] - u1

    lo, hi = -1.0, 1.0
    while mismatch(lo) > 0.0:
        lo *= 2.0
    while mismatch(hi) < 0.0:
        hi *= 2.0
    K = brentq(mismatch, lo, hi, xtol=1e-13, rtol=8.9e-16)
    return profile(K)[::refine]


# ---------------------------------------------------------------------------
# bisection oracle for the rigidity-window lower endpoint
# ---------------------------------------------------------------------------

def il_gamma_feasible(q, m, gamma):
    k = m + 1.0 - q
    if k == 0.0:
        return False
    first = m - 1.0 - (1.0 - gamma) * (q - 1.0) > (q - 1.0) * gamma
    ratio = ((gamma - 1.0) * k + 1.0) / k
    return first and 0.0 < ratio < gamma


def il_gamma_lo_bisection(q, m, iters=80):
    """Infimum of the feasible gamma set in (0,1), or None when empty."""
    hi = 1.0 - 1e-12
    if not il_gamma_feasible(q, m, hi):
        return None
    lo = 1e-12
    if il_gamma_feasible(q, m, lo):
        return lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if il_gamma_feasible(q, m, mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# randomized instance samplers
# ---------------------------------------------------------------------------

def _delta_max(N, q):
    """Largest p-q with 4(q-1)^2 >= N^2 (p-q)(p-q + 4(p-1)/N)."""
    a = 1.0 + 4.0 / N
    b = 4.0 * (q - 1.0) / N
    c = -4.0 * (q - 1.0) ** 2 / (N * N)
    return (-b + np.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)


def sample_admissible_product(rng) -> ProblemInstance:
    """Random product instance with combined exponent bounded away from
    the degenerate edge (Q -> 0 amplifies every 1/Q quantity without any
    theorem admitting such instances) and a nonnegative threshold
    discriminant."""
    while True:
        N = int(rng.integers(2, 6))
        q = 1.2 + 1.8 * rng.random()
        delta = rng.random() * 0.95 * _delta_max(N, q)
        if rng.random() < 0.1:
            delta = 0.0
        p = q + delta
        s = 0.05 + 2.0 * rng.random()
        m = 3.0 * rng.random()
        inst = ProblemInstance(N=N, p=p, q=q, kind="product", s=s, m=m)
        if inst.combined_exponent > 0.2:
            return inst


def sample_admissible_pair(rng) -> tuple[ProblemInstance, float]:
    """(instance, b) with b strictly above the admissibility floor."""
    from pqliouville import admissible_floor

    inst = sample_admissible_product(rng)
    floor = admissible_floor(inst)
    if rng.random() < 0.5:
        b = floor + 0.02 + rng.random() * max(1.0 - floor, 0.1)
    else:
        b = floor + 0.5 + 4.0 * rng.random()
    return inst, b


def sample_theorem14_instance(rng, max_tries=500) -> ProblemInstance:
    """Random instance passing the product-regime hypotheses (case A or C)."""
    from pqliouville import classify

    for _ in range(max_tries):
        N = int(rng.integers(2, 6))
        q = 1.2 + 1.8 * rng.random()
        delta = rng.random() * 0.9 * _delta_max(N, q)
        p = q + delta
        inst = None
        if rng.random() < 0.85:
            th = product_thresholds(ProblemInstance(N=N, p=p, q=q, kind="product", s=0.5, m=1.0))
            Q = th.Q1 + (0.05 + 0.9 * rng.random()) * (th.Q2 - th.Q1)
            s_max = Q + q - 1.0
            if s_max <= 0.02:
                continue
            s = 0.01 + rng.random() * min(2.0, s_max - 0.01)
            m = Q + q - 1.0 - s
            if m < 0.0:
                continue
            inst = ProblemInstance(N=N, p=p, q=q, kind="product", s=s, m=m)
        else:
            if delta <= 0.0 or p - 1.0 >= q:
                continue
            m = p - 1.0 + rng.random() * (q - (p - 1.0))
            pre = ProblemInstance(N=N, p=p, q=q, kind="product", s=0.1, m=m)
            s = (0.05 + 0.9 * rng.random()) * small_s_threshold(pre)
            inst = ProblemInstance(N=N, p=p, q=q, kind="product", s=s, m=m)
        decision = classify(inst)
        if decision.theorem.startswith("thm_product_") and decision.liouville:
            return inst
    raise RuntimeError("sampler failed to find a qualifying instance")


def sample_case3_discriminant_fail(rng, max_tries=500) -> ProblemInstance:
    """Random instance with a convex majorant (L1 > 0, L2 < 0) whose
    vertex is nonnegative (4 L1 L3 >= L2^2)."""
    for _ in range(max_tries):
        N = int(rng.integers(2, 6))
        q = 1.2 + 1.8 * rng.random()
        delta = rng.random() * 0.9 * _delta_max(N, q)
        p = q + delta
        probe = ProblemInstance(N=N, p=p, q=q, kind="product", s=0.1, m=1.0)
        s = (0.05 + 0.9 * rng.random()) * small_s_threshold(probe)
        th = product_thresholds(ProblemInstance(N=N, p=p, q=q, kind="product", s=s, m=1.0))
        if th.Q3 is None:
            continue
        Q = (1.3 + 2.0 * rng.random()) * max(th.Q3, th.Q2 + 0.2)
        m = Q + q - 1.0 - s
        if m < 0.0:
            continue
        inst = ProblemInstance(N=N, p=p, q=q, kind="product", s=s, m=m)
        co = product_trinomial(inst, 0.0)
        scale = abs(co.L2) ** 2 + abs(4.0 * co.L1 * co.L3)
        if co.L1 > 0.0 and co.L2 < 0.0 and 4.0 * co.L1 * co.L3 - co.L2**2 >= 1e-9 * scale:
            return inst
    raise RuntimeError("sampler failed to find a discriminant-failing instance")
