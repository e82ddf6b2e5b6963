import numpy as np
import pytest

from pqliouville import (
    CATALOG,
    FieldError,
    attach_order,
    bochner_check,
    change_of_variable_check,
    grid_field,
    refinement_order,
    scaling_check,
)
from pqliouville.fields import affine_field
from pqliouville.grid import sample_function
from pqliouville.operators import dot_arrays, grad_squared, gradient_components, laplacian


class TestChangeOfVariable:
    def test_spot_checks_with_order(self):
        field = CATALOG["offset_sine"]
        for b, p, q in ((2.0, 2.5, 2.0), (0.5, 2.2, 1.5), (5.0, 3.0, 2.0)):
            coarse = change_of_variable_check(field.sample(65), b, p, q)
            fine = change_of_variable_check(field.sample(129), b, p, q)
            assert coarse.passed and fine.passed
            order = refinement_order(coarse, fine)
            assert 1.7 <= order <= 2.3
            report = attach_order(fine, order)
            assert report.observed_order == order

    def test_identity_collapse_at_b_one_single_operator(self):
        # at p=q=2, b=1 both assemblies reduce to the same discrete
        # Laplacian and agree to machine precision
        report = change_of_variable_check(CATALOG["offset_sine"].sample(49), 1.0, 2.0, 2.0)
        assert report.rel_error <= 1e-12

    def test_classical_product_rule(self):
        # p=q=2, b=2: both sides equal 2(2 v lap v + 2 z)
        report = change_of_variable_check(CATALOG["offset_sine"].sample(65), 2.0, 2.0, 2.0)
        assert report.passed
        assert report.rel_error <= 1e-4

    def test_degenerate_gradient_rejected(self):
        flat = grid_field(np.full((16, 16), 2.0), 1.0 / 15.0)
        with pytest.raises(FieldError, match="grad v"):
            change_of_variable_check(flat, 2.0, 2.5, 2.0)

    def test_positivity_and_b_guards(self):
        field = CATALOG["saddle"].sample(16)
        with pytest.raises(FieldError):
            change_of_variable_check(field, 2.0, 2.5, 2.0)
        with pytest.raises(FieldError):
            change_of_variable_check(CATALOG["offset_sine"].sample(16), 0.0, 2.5, 2.0)


class TestBochner:
    def test_quadratic_saddle_has_constant_slack(self):
        # v = x^2 - y^2: (1/2) lap z = |D2 v|^2 = 8 exactly, rhs = 0
        field = CATALOG["saddle"].sample(33)
        h = field.spacing
        z = grad_squared(field.values, h)
        lhs = 0.5 * laplacian(z, h)
        lap_v = laplacian(field.values, h)
        rhs = lap_v**2 / 2 + dot_arrays(
            gradient_components(lap_v, h), gradient_components(field.values, h)
        )
        inner = (slice(2, -2), slice(2, -2))
        assert lhs[inner] == pytest.approx(8.0, abs=1e-10)
        assert rhs[inner] == pytest.approx(0.0, abs=1e-10)
        report = bochner_check(field, 2)
        assert report.passed and report.rel_error == 0.0

    def test_affine_both_sides_vanish(self):
        field = sample_function(affine_field((2.0, -1.0), 5.0), 0.0, 1.0, 17)
        report = bochner_check(field, 2)
        assert report.passed
        assert report.max_abs_error == 0.0

    def test_sine_field_slack_floor(self):
        # discrete slack may dip below zero only at the O(h^2) level
        field = CATALOG["sine_product"].sample(129)
        report = bochner_check(field, 2)
        assert report.passed
        assert report.max_abs_error <= 1e-3

    def test_wrong_dimension_constant_fails_inequality(self):
        # using N much larger than the true dimension keeps the bound valid
        field = CATALOG["sine_product"].sample(65)
        report = bochner_check(field, 100)
        assert report.passed


class TestScaling:
    def test_quadratic_doubling(self):
        report = scaling_check(CATALOG["radial_square"], 2.0, 1.0, 2.0)
        assert report.passed
        assert report.rel_error <= 1e-10  # discrete identity is exact

    def test_sine_contraction_cubic(self):
        report = scaling_check(CATALOG["sine_x1"], 0.5, 2.0, 3.0)
        assert report.passed
        assert report.rel_error <= 1e-9

    def test_identity_scaling(self):
        report = scaling_check(CATALOG["sine_x1"], 1.0, 1.3, 2.4)
        assert report.rel_error == 0.0

    def test_k_guard(self):
        with pytest.raises(FieldError):
            scaling_check(CATALOG["sine_x1"], -1.0, 1.0, 2.0)
