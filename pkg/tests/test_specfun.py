import math
import typing

import numpy as np
import pytest
from scipy import special

from alterna import errors
from alterna import models
from alterna import specfun

_CTL = models.SeriesControl(max_terms=200_000, tail_bound=1e-10)


def _point(first: float, second: float) -> models.PlanePoint:
    return models.PlanePoint(first, second)


class TestCutoff:
    def test_plateaus(self):
        values = specfun.cutoff([0.0, 0.25, 0.75, 2.0])

        np.testing.assert_allclose(values, [1.0, 1.0, 0.0, 0.0])

    def test_midpoint(self):
        assert specfun.cutoff(0.5) == pytest.approx(0.5)


class TestX:
    def test_ln2_at_quarter_period(self):
        assert specfun.eval_X(_point(math.pi / 2, 0.0)) == pytest.approx(math.log(2.0), abs=1e-12)

    def test_interior_value(self):
        assert specfun.eval_X(_point(0.3, 0.7)) == pytest.approx(-0.2125, abs=5e-5)

    def test_exponential_decay(self):
        assert specfun.eval_X(_point(0.0, 5.0)) == pytest.approx(math.log1p(-math.exp(-10.0)), rel=1e-9)

    def test_symmetries(self):
        value = specfun.eval_X(_point(0.4, 0.2))

        assert specfun.eval_X(_point(-0.4, 0.2)) == pytest.approx(value, abs=1e-13)
        assert specfun.eval_X(_point(0.4 + math.pi, 0.2)) == pytest.approx(value, abs=1e-12)

    @pytest.mark.parametrize("j", [0, 1, -2])
    def test_lattice_points_are_singular(self, j: int):
        with pytest.raises(errors.DomainError) as info:
            specfun.eval_X(_point(math.pi * j, 0.0))

        assert info.value.nearest == (math.pi * j, 0.0)

    def test_harmonic(self):
        h = 1e-3
        x, y = 0.4, 0.3
        laplacian = (
            specfun.eval_X(_point(x + h, y))
            + specfun.eval_X(_point(x - h, y))
            + specfun.eval_X(_point(x, y + h))
            + specfun.eval_X(_point(x, y - h))
            - 4.0 * specfun.eval_X(_point(x, y))
        ) / h**2

        assert abs(laplacian) < 1e-3


class TestXSeries:
    def test_agrees_with_closed_form(self):
        result = specfun.eval_X_series(_point(0.3, 0.7), models.SeriesControl(tail_bound=1e-13))

        assert result.value == pytest.approx(specfun.eval_X(_point(0.3, 0.7)), abs=1e-12)
        assert result.tail_bound <= 1e-13

    def test_close_to_the_boundary(self):
        result = specfun.eval_X_series(_point(math.pi / 2, 0.1), _CTL)

        assert result.value == pytest.approx(specfun.eval_X(_point(math.pi / 2, 0.1)), abs=1e-10)

    def test_boundary_cannot_reach_tail_bound(self):
        with pytest.raises(errors.TruncationError):
            specfun.eval_X_series(_point(math.pi / 2, 0.0), _CTL)

    def test_zero_terms_rejected(self):
        with pytest.raises(errors.ParameterError):
            models.SeriesControl(max_terms=0)

    def test_grid_within_tail_bound(self):
        ctl = models.SeriesControl(max_terms=200_000, tail_bound=1e-12)
        deviations: list[float] = []

        for xi1 in np.linspace(-math.pi, math.pi, 10):
            for xi2 in np.linspace(0.05, 3.0, 10):
                point = _point(float(xi1), float(xi2))
                result = specfun.eval_X_series(point, ctl)
                deviation = abs(specfun.eval_X(point) - result.value)

                assert deviation <= result.tail_bound + 1e-13
                deviations.append(deviation)

        assert max(deviations) <= 1e-10


class TestXAsym:
    def test_on_the_boundary(self):
        value = specfun.eval_X_asym(_point(0.01, 0.0), 0)

        assert value == pytest.approx(math.log(0.01) + math.log(2.0), abs=1e-12)

    def test_off_the_boundary(self):
        value = specfun.eval_X_asym(_point(0.0, 0.01), 0)

        assert value == pytest.approx(math.log(0.01) + math.log(2.0) - 0.01, abs=1e-12)

    def test_matches_x_near_the_lattice_point(self):
        point = _point(math.pi + 0.01, 0.005)

        assert specfun.eval_X_asym(point, 1) == pytest.approx(specfun.eval_X(point), abs=1e-4)

    def test_far_from_lattice_point(self):
        with pytest.raises(errors.ParameterError):
            specfun.eval_X_asym(_point(1.0, 0.0), 0)


class TestY:
    def test_zero_on_dirichlet_part(self):
        assert specfun.eval_Y(_point(0.5, 0.0)) == pytest.approx(0.0, abs=1e-12)

    def test_beyond_the_segment(self):
        assert specfun.eval_Y(_point(3.0, 0.0)) == pytest.approx(math.acosh(3.0), abs=1e-12)

    def test_on_the_axis(self):
        assert specfun.eval_Y(_point(0.0, 1.0)) == pytest.approx(math.asinh(1.0), abs=1e-12)

    def test_even_in_first_coordinate(self):
        assert specfun.eval_Y(_point(-1.7, 0.4)) == pytest.approx(specfun.eval_Y(_point(1.7, 0.4)))

    @pytest.mark.parametrize("corner", [-1.0, 1.0])
    def test_corners_are_singular(self, corner: float):
        with pytest.raises(errors.DomainError):
            specfun.eval_Y(_point(corner, 0.0))

    def test_logarithmic_growth(self):
        # |Y - ln|ς| - ln 2| decays like |ς|⁻², so doubling the radius quarters it.
        deviations = [
            abs(specfun.eval_Y(_point(0.0, r)) - math.log(r) - math.log(2.0)) for r in (5.0, 10.0, 20.0)
        ]

        assert deviations[1] / deviations[0] == pytest.approx(0.25, abs=0.02)
        assert deviations[2] / deviations[1] == pytest.approx(0.25, abs=0.02)


class TestY1:
    def test_real_axis_beyond_the_segment(self):
        assert specfun.eval_Y1_leading(_point(2.0, 0.0)) == pytest.approx(-math.pi, abs=1e-12)

    def test_linear_growth(self):
        assert specfun.eval_Y1_leading(_point(0.0, 200.0)) == pytest.approx(-200.0, rel=1e-2)

    def test_poisson_equation(self):
        h = 1e-3
        x, y = 0.5, 0.5

        def y1(a: float, b: float) -> float:
            return specfun.eval_Y1_leading(_point(a, b))

        laplacian = (y1(x + h, y) + y1(x - h, y) + y1(x, y + h) + y1(x, y - h) - 4.0 * y1(x, y)) / h**2
        dy = (specfun.eval_Y(_point(x, y + h)) - specfun.eval_Y(_point(x, y - h))) / (2.0 * h)

        assert laplacian + 2.0 * dy == pytest.approx(0.0, abs=1e-3)


_STEPS = (1e-2, 5e-3, 2.5e-3)


def _five_point(function: typing.Callable[[float, float], float], x: float, y: float, h: float) -> float:
    return (
        function(x + h, y) + function(x - h, y) + function(x, y + h) + function(x, y - h) - 4.0 * function(x, y)
    ) / h**2


def _x_at(a: float, b: float) -> float:
    return specfun.eval_X(_point(a, b))


def _y_at(a: float, b: float) -> float:
    return specfun.eval_Y(_point(a, b))


def _orders(residuals: typing.Sequence[float]) -> list[float]:
    return [math.log2(abs(coarse) / abs(fine)) for coarse, fine in zip(residuals, residuals[1:])]


class TestDifferenceOrder:
    @pytest.mark.parametrize(
        ("function", "x", "y"),
        [
            (_x_at, 0.4, 0.3),
            (_x_at, 1.1, 0.2),
            (_y_at, 0.5, 0.5),
            (_y_at, 0.0, 1.0),
        ],
    )
    def test_laplacian_residual_is_second_order(
        self,
        function: typing.Callable[[float, float], float],
        x: float,
        y: float,
    ):
        residuals = [_five_point(function, x, y, h) for h in _STEPS]

        for order in _orders(residuals):
            assert 1.8 <= order <= 2.2

    @pytest.mark.parametrize(("x", "y"), [(0.5, 0.5), (0.0, 1.0)])
    def test_y1_residual_is_second_order(self, x: float, y: float):
        def y1(a: float, b: float) -> float:
            return specfun.eval_Y1_leading(_point(a, b))

        def residual(h: float) -> float:
            dy = (specfun.eval_Y(_point(x, y + h)) - specfun.eval_Y(_point(x, y - h))) / (2.0 * h)
            return _five_point(y1, x, y, h) + 2.0 * dy

        for order in _orders([residual(h) for h in _STEPS]):
            assert 1.8 <= order <= 2.2


class TestXEta:
    def test_boundary_value_on_segment(self):
        assert specfun.eval_X_eta(_point(0.3, 0.0), 0.5) == pytest.approx(math.log(math.sin(0.5)), abs=1e-12)

    def test_boundary_value_between_segments(self):
        value = specfun.eval_X_eta(_point(math.pi / 2, 0.0), 0.5)

        assert value == pytest.approx(math.log(1.0 + math.cos(0.5)), abs=1e-12)

    @pytest.mark.parametrize("eta", [0.1, 0.5, 1.0, 1.4])
    def test_boundary_values_are_folded(self, eta: float):
        segment = (0.5 * eta, math.pi - 0.5 * eta, -2.0 * math.pi + 0.5 * eta)
        between = (math.pi / 2, -math.pi / 2, 1.5 * math.pi)

        np.testing.assert_allclose(
            [specfun.eval_X_eta(_point(xi1, 0.0), eta) for xi1 in segment],
            math.log(math.sin(eta)),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            [specfun.eval_X_eta(_point(xi1, 0.0), eta) for xi1 in between],
            math.log(1.0 + math.cos(eta)),
            atol=1e-12,
        )

    @pytest.mark.parametrize("eta", [0.1, 0.5])
    def test_bounded_by_segment_value(self, eta: float):
        xi1, xi2 = np.meshgrid(np.linspace(-3.0, 3.0, 61), np.linspace(0.0, 4.0, 41))
        values = specfun.x_eta_values(xi1, xi2, eta)

        assert np.max(np.abs(values)) <= abs(math.log(math.sin(eta))) + 1e-12

    @pytest.mark.parametrize("eta", [0.1, 0.5, 1.0, 1.4])
    def test_supremum_attained_on_the_boundary(self, eta: float):
        xi1, xi2 = np.meshgrid(np.linspace(0.0, math.pi, 121), np.linspace(0.0, 4.0, 81))
        supremum = float(np.max(np.abs(specfun.x_eta_values(xi1, xi2, eta))))
        expected = max(abs(math.log(math.sin(eta))), math.log(1.0 + math.cos(eta)))

        assert supremum == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("eta", [1.0, 1.4])
    def test_wide_segments_exceed_segment_value(self, eta: float):
        between = specfun.eval_X_eta(_point(math.pi / 2, 0.0), eta)

        assert between > abs(math.log(math.sin(eta)))

    @pytest.mark.parametrize("eta", [0.0, math.pi / 2, -0.1])
    def test_eta_out_of_range(self, eta: float):
        with pytest.raises(errors.ParameterError):
            specfun.eval_X_eta(_point(0.3, 0.0), eta)

    def test_derivatives_need_the_interior(self):
        with pytest.raises(errors.ParameterError):
            specfun.eval_X_eta_derivatives(_point(0.3, 0.0), 0.5)

    def test_first_derivative_matches_difference_quotient(self):
        h = 1e-5
        first, _ = specfun.eval_X_eta_derivatives(_point(0.3, 0.4), 0.5)
        quotient = (
            specfun.eval_X_eta(_point(0.3, 0.4 + h), 0.5) - specfun.eval_X_eta(_point(0.3, 0.4 - h), 0.5)
        ) / (2.0 * h)

        assert first == pytest.approx(quotient, abs=1e-6)


class TestZ:
    def test_reduces_to_x(self):
        result = specfun.eval_Z(_point(0.3, 0.7), 0.0, 0.0, _CTL)

        assert result.value == pytest.approx(specfun.eval_X(_point(0.3, 0.7)), abs=1e-10)

    @pytest.mark.parametrize(("xi1", "xi2"), [(0.3, 0.7), (-2.0, 0.05), (1.2, 2.5)])
    def test_coincides_with_x_series(self, xi1: float, xi2: float):
        ctl = models.SeriesControl(max_terms=200_000, tail_bound=1e-12)
        z = specfun.eval_Z(_point(xi1, xi2), 0.0, 0.0, ctl)
        x = specfun.eval_X_series(_point(xi1, xi2), ctl)

        assert z.value == x.value
        assert z.terms == x.terms

    def test_vectorized_form_agrees(self):
        point = _point(0.0, 1.0)
        result = specfun.eval_Z(point, 0.01, 0.1, _CTL)
        values, tail = specfun.z_values(np.array([0.0]), np.array([1.0]), 0.01, 0.1)

        assert float(values[0]) == pytest.approx(result.value, abs=1e-8)
        assert tail < 1e-3

    @pytest.mark.parametrize(("eps_b", "beta"), [(0.0, 2.0), (-2.0, 0.0)])
    def test_divergent_parameters(self, eps_b: float, beta: float):
        with pytest.raises(errors.ParameterError):
            specfun.eval_Z(_point(0.3, 0.7), eps_b, beta, _CTL)

    def test_l2_norm_within_uniform_bound(self):
        assert specfun.z_l2_norm_exact(0.1, 0.5) <= specfun.z_l2_bound()


class TestTheta:
    def test_vanishes_at_origin(self):
        result = specfun.eval_theta(models.ThetaArguments(0.0, 0.0), _CTL)

        assert result.value == 0.0
        assert result.terms == 0

    def test_first_derivative(self):
        h = 1e-5
        forward = specfun.eval_theta(models.ThetaArguments(h, 0.0), _CTL).value
        backward = specfun.eval_theta(models.ThetaArguments(-h, 0.0), _CTL).value

        assert (forward - backward) / (2.0 * h) == pytest.approx(math.pi**2 / 12.0, abs=1e-6)

    def test_second_derivative(self):
        h = 1e-5
        forward = specfun.eval_theta(models.ThetaArguments(0.0, h), _CTL).value
        backward = specfun.eval_theta(models.ThetaArguments(0.0, -h), _CTL).value
        expected = -float(special.zeta(3.0)) / 8.0

        assert (forward - backward) / (2.0 * h) == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize(("t1", "t2"), [(0.0, 4.0), (2.0, 0.0)])
    def test_outside_domain(self, t1: float, t2: float):
        with pytest.raises(errors.ParameterError):
            models.ThetaArguments(t1, t2)
