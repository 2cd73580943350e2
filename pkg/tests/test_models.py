import math
import typing

import numpy as np
import pytest

from alterna import errors
from alterna import models


class TestPrimitives:
    def test_plane_point_unpacks(self):
        first, second = models.PlanePoint(1, 2)

        assert (first, second) == (1.0, 2.0)
        assert models.PlanePoint(1.0, 2.0).as_complex() == 1.0 + 2.0j

    def test_lower_half_plane_rejected(self):
        with pytest.raises(errors.ParameterError):
            models.PlanePoint(0.0, -0.1)

    def test_parameter_errors_are_value_errors(self):
        with pytest.raises(ValueError, match="tail bound"):
            models.SeriesControl(tail_bound=0.0)

    def test_robin_coefficient(self):
        coefficient = models.RobinCoefficient(b=-1.0, K=3.0, mu=0.5)

        assert coefficient.c == 2.5
        assert coefficient.strength == 3.5

    @pytest.mark.parametrize(("K", "mu"), [(-1.0, 0.0), (1.0, -0.5)])
    def test_robin_coefficient_signs(self, K: float, mu: float):
        with pytest.raises(errors.ParameterError):
            models.RobinCoefficient(K=K, mu=mu)


class TestPhysics:
    def test_unsupported_kinds(self):
        with pytest.raises(errors.ParameterError):
            models.MagneticPotential(kind=models.FieldKind.COSINE)

        with pytest.raises(errors.ParameterError):
            models.ScalarPotential(kind=models.FieldKind.GRADIENT)

    def test_free(self):
        assert models.PhysicsConfig(b=2.0).is_free
        assert models.PhysicsConfig(potential=models.ScalarPotential(kind="constant", amplitude=0.0)).is_free
        assert not models.PhysicsConfig(potential=models.ScalarPotential(kind="cosine", amplitude=1.0)).is_free

    def test_gradient_gauge(self):
        magnetic = models.MagneticPotential(kind="gradient", amplitude=0.5, wavenumber=2.0)
        h = 1e-6
        x1, x2 = 0.3, 0.7
        a1, a2 = magnetic(x1, x2)

        d1 = (magnetic.gauge(x1 + h, x2) - magnetic.gauge(x1 - h, x2)) / (2.0 * h)
        d2 = (magnetic.gauge(x1, x2 + h) - magnetic.gauge(x1, x2 - h)) / (2.0 * h)
        assert float(a1) == pytest.approx(float(d1), abs=1e-8)
        assert float(a2) == pytest.approx(float(d2), abs=1e-8)

    def test_uniform_field_has_no_gauge(self):
        with pytest.raises(errors.ParameterError):
            models.MagneticPotential(kind="uniform_field", amplitude=1.0).gauge(0.0, 0.0)

    def test_potential_minimum(self):
        assert models.ScalarPotential(kind="cosine", amplitude=-2.0).minimum == -2.0
        assert models.ScalarPotential(kind="constant", amplitude=1.5).minimum == 1.5


class TestRecords:
    def test_sort_key_orders_descending_epsilon(self):
        records = [
            models.ConvergenceRecord(epsilon=e, observable="x", error=0.0, theory_bound=0.0, mesh_n1=8, mesh_n2=8, seed=0)
            for e in (0.05, 0.2, 0.1)
        ]

        assert [r.epsilon for r in sorted(records, key=lambda r: r.sort_key)] == [0.2, 0.1, 0.05]

    def test_csv_names(self):
        assert models.ExperimentKind.BAND_SWEEP.csv_name == "band.csv"
        assert models.ExperimentKind.ROBIN_RESOLVENT.csv_name == "robin_resolvent.csv"


class TestMeshPolicy:
    def test_minimum_nodes(self):
        with pytest.raises(errors.ParameterError):
            models.MeshPolicy(n1=4)

    def test_cell_nodes_follow_the_half_length(self):
        policy = models.MeshPolicy(n1=64, segment_nodes=16)

        assert policy.cell_nodes(1.0) == 64
        assert policy.cell_nodes(0.1) == 252

    def test_refinement(self):
        policy = models.MeshPolicy(n1=64, n2=48, refinement=2)

        assert policy.cell_nodes(1.0) == 128
        assert policy.x2_intervals == 96

    def test_node_limit(self):
        with pytest.raises(errors.ParameterError):
            models.MeshPolicy(max_n1=128).cell_nodes(0.01)

    def test_coarse_cells_keep_the_policy_grading(self):
        policy = models.MeshPolicy()

        assert policy.cell_x2(0.2 * math.pi / 64) == (48, 3.0)

    def test_fine_cells_resolve_the_boundary_layer(self):
        policy = models.MeshPolicy()
        x1_step = 0.05 * math.pi / 188
        intervals, grading = policy.cell_x2(x1_step)

        def steps(n: int, g: float) -> np.ndarray[typing.Any, np.dtype[np.float64]]:
            return np.diff(math.pi * np.sinh(g * np.linspace(0.0, 1.0, n + 1)) / math.sinh(g))

        layered = steps(intervals, grading)
        assert grading > 3.0
        assert intervals > 48
        assert layered[0] <= 1.01 * policy.layer_aspect * x1_step
        assert layered[-1] <= 1.05 * steps(48, 3.0)[-1]

    def test_refinement_keeps_the_layer_grading(self):
        x1_step = 0.05 * math.pi / 188
        intervals, grading = models.MeshPolicy().cell_x2(x1_step)
        refined_intervals, refined_grading = models.MeshPolicy(refinement=2).cell_x2(0.5 * x1_step)

        assert refined_grading == pytest.approx(grading)
        assert abs(refined_intervals - 2 * intervals) <= 1

    @pytest.mark.parametrize("levels", [0, 2])
    def test_extrapolation_needs_three_levels(self, levels: int):
        with pytest.raises(errors.ParameterError):
            models.MeshPolicy(extrapolation_levels=levels)


class TestSweepPlan:
    def test_defaults(self):
        plan = models.SweepPlan(experiment="robin-resolvent")

        assert plan.epsilons == (0.2, 0.15, 0.1, 0.07, 0.05)
        assert plan.sorted_taus == (0.0, 0.25, 0.5)

    def test_epsilons_descend(self):
        with pytest.raises(errors.ParameterError):
            models.SweepPlan(experiment="robin-resolvent", epsilons=(0.1, 0.2))

    def test_quasimomentum_margin(self):
        with pytest.raises(errors.ParameterError):
            models.SweepPlan(experiment="band-sweep", kappa=0.5, taus=(0.75,))

    def test_band_sweep_needs_periodic_geometry(self):
        with pytest.raises(errors.ParameterError):
            models.SweepPlan(
                experiment="band-sweep",
                geometry=models.GeometryTemplate(kind="warped", delta=0.2),
            )

    def test_band_sweep_needs_free_physics(self):
        with pytest.raises(errors.ParameterError):
            models.SweepPlan(
                experiment="bottom-asymptotics",
                physics=models.PhysicsConfig(potential=models.ScalarPotential(kind="constant", amplitude=1.0)),
            )

    def test_regime_must_match(self):
        with pytest.raises(errors.RegimeError):
            models.SweepPlan(experiment="dirichlet-resolvent")

    def test_dirichlet_template_needs_eta(self):
        with pytest.raises(errors.ParameterError):
            models.GeometryTemplate(regime=models.Regime.dirichlet())

    def test_sorted_taus_include_zero(self):
        plan = models.SweepPlan(experiment="band-sweep", taus=(0.5, -0.25))

        assert plan.sorted_taus == (-0.25, 0.0, 0.5)

    def test_kappa_range(self):
        with pytest.raises(errors.ParameterError):
            models.SweepPlan(experiment="band-sweep", kappa=1.0, taus=(0.0,))

    def test_explicit_template_needs_points(self):
        with pytest.raises(errors.ParameterError):
            models.GeometryTemplate(kind="explicit", eta=math.pi / 4)
