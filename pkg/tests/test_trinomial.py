import numpy as np
import pytest

from pqliouville import (
    AdmissibilityError,
    ProblemInstance,
    TrinomialCoeffs,
    epsilon_sensitivity,
    product_thresholds,
    product_trinomial,
    sum_leading_coefficient,
    sum_thresholds,
    verify_negativity,
)
from oracles import sample_admissible_product


EXAMPLE = ProblemInstance(N=2, p=2.2, q=2.0, kind="product", s=0.5, m=2.0)


class TestProductCoefficients:
    def test_worked_example_leading(self):
        co = product_trinomial(EXAMPLE, 0.0)
        # factorized route: (Q - Q1)(Q - Q2)/Q^2, exact algebra -0.23/2.25
        assert co.L1 == pytest.approx(-0.23 / 2.25, rel=1e-12)
        assert co.L1 < 0.0  # case-1 territory

    def test_leading_factorization_random(self, rng):
        for _ in range(2000):
            inst = sample_admissible_product(rng)
            th = product_thresholds(inst)
            co = product_trinomial(inst, 0.0)
            factored = (th.Q - th.Q1) * (th.Q - th.Q2) / (th.Q * th.Q)
            assert abs(co.L1 - factored) <= 1e-12 * (1.0 + abs(factored))

    def test_single_operator_reduction(self, rng):
        # R = 0 kills the gap terms: L1 = 1 - 4(q-1)/(NQ), L3 = 4(p-1)s/(NQ)
        for _ in range(200):
            inst = sample_admissible_product(rng)
            flat = ProblemInstance(
                N=inst.N, p=inst.q, q=inst.q, kind="product", s=inst.s, m=inst.m
            )
            if flat.combined_exponent <= 0.0:
                continue
            co = product_trinomial(flat, 0.0)
            N, q, s, Q = flat.N, flat.q, flat.s, flat.combined_exponent
            assert co.L1 == pytest.approx(1.0 - 4.0 * (q - 1.0) / (N * Q), rel=1e-12)
            assert co.L3 == pytest.approx(4.0 * (q - 1.0) * s / (N * Q), rel=1e-12)

    def test_epsilon_continuity(self, rng):
        for _ in range(500):
            inst = sample_admissible_product(rng)
            base = product_trinomial(inst, 0.0)
            k1, k2, k3 = epsilon_sensitivity(inst)
            for eps in (1e-6, 1e-4):
                pert = product_trinomial(inst, eps)
                slack = 1.0 + 1e-9
                for dk, kk, b in (
                    (pert.L1 - base.L1, k1, base.L1),
                    (pert.L2 - base.L2, k2, base.L2),
                    (pert.L3 - base.L3, k3, base.L3),
                ):
                    assert abs(dk) <= kk * eps * slack + 8e-16 * (1.0 + abs(b))

    def test_value_is_exact_composition(self):
        co = TrinomialCoeffs(L1=2.0, L2=-3.0, L3=0.25, epsilon=0.0, source="product")
        t = 1.5
        assert co.value(t) == (co.L1 * t + co.L2) * t + co.L3
        assert co.value(np.array([0.0, 1.0]))[0] == co.L3

    def test_guards(self):
        with pytest.raises(AdmissibilityError, match="degenerate combined exponent"):
            product_trinomial(
                ProblemInstance(N=2, p=2.0, q=2.0, kind="product", s=0.5, m=0.5), 0.0
            )
        with pytest.raises(AdmissibilityError):
            product_trinomial(EXAMPLE, -1e-3)


class TestSumLeadingCoefficient:
    def test_roots_match_s_window_at_p_eq_q(self):
        for N in (2, 3, 5):
            for p in (1.5, 2.0, 3.0):
                th = sum_thresholds(
                    ProblemInstance(N=N, p=p, q=p, kind="sum", s=1.0, m=1.0, M=1.0)
                )
                for s, expect_neg in (
                    (0.5 * (th.s_minus + th.s_plus), True),
                    (th.s_minus - 0.1, False),
                    (th.s_plus + 0.1, False),
                ):
                    if s <= 0.0:
                        continue
                    inst = ProblemInstance(N=N, p=p, q=p, kind="sum", s=s, m=1.0, M=1.0)
                    assert (sum_leading_coefficient(inst) < 0.0) == expect_neg

    def test_vertex_value_matches_roots(self):
        inst = ProblemInstance(N=2, p=2.0, q=2.0, kind="sum", s=2.0, m=1.5, M=1.0)
        assert sum_leading_coefficient(inst) == pytest.approx(-1.0, rel=1e-14)


class TestGridOracle:
    def test_convex_vertex_location(self):
        co = TrinomialCoeffs(L1=1.0, L2=-3.0, L3=1.0, epsilon=0.0, source="product")
        t_min, value_min = verify_negativity(co, t_max=10.0, grid_points=100_000)
        step = 10.0 / (100_000 - 1)
        assert abs(t_min - 1.5) <= step
        assert value_min == pytest.approx(co.value(1.5), abs=1e-8)

    def test_concave_tail(self):
        co = TrinomialCoeffs(L1=-0.5, L2=1.0, L3=2.0, epsilon=0.0, source="product")
        mins = []
        for t_max in (10.0, 20.0, 40.0):
            t_min, value_min = verify_negativity(co, t_max=t_max, grid_points=5000)
            assert t_min == pytest.approx(t_max)
            mins.append(value_min)
        assert mins[0] > mins[1] > mins[2]

    def test_worked_example_reaches_minus_one(self):
        co = product_trinomial(EXAMPLE, 0.0)
        _, value_min = verify_negativity(co, t_max=1e3, grid_points=100_000)
        assert value_min <= -1.0

    def test_guards(self):
        co = product_trinomial(EXAMPLE, 0.0)
        with pytest.raises(AdmissibilityError):
            verify_negativity(co, t_max=0.0)
        with pytest.raises(AdmissibilityError):
            verify_negativity(co, t_max=1.0, grid_points=10)
