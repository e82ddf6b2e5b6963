import pytest

from pqliouville import ProblemInstance


class TestValidation:
    def test_exponent_ordering(self):
        with pytest.raises(ValueError):
            ProblemInstance(N=2, p=2.0, q=2.5, kind="product", s=1.0)
        with pytest.raises(ValueError):
            ProblemInstance(N=2, p=1.0, q=1.0, kind="product", s=1.0)

    def test_dimension(self):
        with pytest.raises(ValueError):
            ProblemInstance(N=1, p=2.0, q=2.0, kind="product", s=1.0)
        inst = ProblemInstance(N=3.0, p=2.0, q=2.0, kind="product", s=1.0)
        assert inst.N == 3 and isinstance(inst.N, int)

    def test_nonnegative_reaction_parameters(self):
        for bad in (dict(s=-0.1), dict(m=-1.0), dict(M=-2.0)):
            with pytest.raises(ValueError):
                ProblemInstance(N=2, p=2.0, q=2.0, kind="sum", **bad)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ProblemInstance(N=2, p=2.0, q=2.0, kind="mixed")

    def test_gradient_only_kind_normalises_s_and_M(self):
        inst = ProblemInstance(N=2, p=3.0, q=2.0, kind="hamilton_jacobi", s=4.0, m=2.5, M=7.0)
        assert inst.s == 0.0 and inst.M == 0.0 and inst.m == 2.5

    def test_combined_exponent(self):
        inst = ProblemInstance(N=2, p=2.2, q=2.0, kind="product", s=0.5, m=2.0)
        assert inst.combined_exponent == 1.5
