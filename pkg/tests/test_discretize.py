import csv
import math
import pathlib

import numpy as np
import pytest

from alterna import discretize
from alterna import errors
from alterna import geometry
from alterna import model1d
from alterna import models


@pytest.fixture
def periodic() -> geometry.AlternationGeometry:
    return geometry.build_periodic_geometry(0.1, 0.3, models.Regime.robin(10.0))


def _surrogate_cell(epsilon: float = 0.5, n1: int = 8, n2: int = 8) -> discretize.CellMesh:
    return discretize.build_cell_mesh(None, n1, n2, epsilon=epsilon)


class TestMeshes:
    def test_minimum_size(self):
        with pytest.raises(errors.MeshError):
            discretize.build_cell_mesh(None, 4, 16, epsilon=0.1)

    def test_cell_needs_periodic_geometry(self):
        warped = geometry.build_warped_geometry(0.1, 0.3, 0.2, 1)

        with pytest.raises(errors.MeshError):
            discretize.build_cell_mesh(warped, 64, 16)

    def test_cell_gamma_nodes(self, periodic: geometry.AlternationGeometry):
        mesh = discretize.build_cell_mesh(periodic, 256, 16)

        assert mesh.shape == (256, 17)
        assert int(np.sum(mesh.kinds[:, 0] == discretize.NodeKind.GAMMA)) == 49
        assert np.all(mesh.kinds[:, -1] == discretize.NodeKind.TOP)
        assert mesh.refined

    def test_cell_norms(self):
        mesh = _surrogate_cell(epsilon=0.1, n1=16, n2=16)
        ones = np.ones(mesh.size)

        assert discretize.norms(ones, mesh) == pytest.approx(math.sqrt(0.1 * math.pi**2))
        assert discretize.norms(ones, mesh, discretize.NormKind.L2_BOTTOM) == pytest.approx(math.sqrt(0.1 * math.pi))
        assert discretize.norms(ones, mesh, discretize.NormKind.H1) == pytest.approx(math.sqrt(0.1 * math.pi**2))

    def test_robin_norm_skips_segments(self, periodic: geometry.AlternationGeometry):
        mesh = discretize.build_cell_mesh(periodic, 256, 16)
        ones = np.ones(mesh.size)

        robin = discretize.norms(ones, mesh, discretize.NormKind.L2_ROBIN)
        bottom = discretize.norms(ones, mesh, discretize.NormKind.L2_BOTTOM)
        assert 0.0 < robin < bottom

    def test_graded_nodes_cluster_at_the_bottom(self):
        mesh = discretize.build_cell_mesh(None, 8, 16, epsilon=0.1, x2_grading=3.0)
        steps = np.diff(mesh.x2)

        assert mesh.x2[0] == 0.0
        assert mesh.x2[-1] == math.pi
        assert steps[0] < steps[-1]

    def test_strip_has_at_least_eight_cells(self):
        mesh = discretize.build_strip_mesh(None, 0.1, 8, 8, epsilon=0.1)

        assert mesh.half_length == pytest.approx(8 * 0.1 * math.pi)
        assert mesh.x1.size == 2 * 8 * 8 + 1
        assert np.all(mesh.kinds[0] == discretize.NodeKind.LATERAL)

    def test_strip_window_must_cover(self):
        warped = geometry.build_warped_geometry(0.1, 0.3, 0.2, 1, n_points=5)

        with pytest.raises(errors.MeshError):
            discretize.build_strip_mesh(warped, 3.0, 16, 8)

    def test_grid_function_size(self):
        mesh = _surrogate_cell()

        with pytest.raises(errors.ParameterError):
            mesh.as_grid(np.ones(mesh.size + 1))


class TestAssembly:
    def test_quasimomentum_range(self):
        with pytest.raises(errors.ParameterError):
            discretize.assemble_cell(_surrogate_cell(), 1.5, models.PhysicsConfig())

    def test_unresolved_alternation(self, periodic: geometry.AlternationGeometry):
        mesh = discretize.build_cell_mesh(periodic, 8, 8)

        with pytest.raises(errors.MeshError):
            discretize.assemble_cell(mesh, 0.0, models.PhysicsConfig())

    def test_hermitian(self):
        physics = models.PhysicsConfig(
            b=1.0,
            magnetic=models.MagneticPotential(kind=models.FieldKind.UNIFORM_FIELD, amplitude=0.7),
        )
        op = discretize.assemble_cell(_surrogate_cell(), 0.5, physics)
        difference = op.matrix - op.matrix.conj().T

        assert abs(difference).max() == 0.0

    def test_free_nodes(self, periodic: geometry.AlternationGeometry):
        mesh = discretize.build_cell_mesh(periodic, 256, 16)
        physics = models.PhysicsConfig()

        perturbed = discretize.assemble_cell(mesh, 0.0, physics)
        robin = discretize.assemble_cell(mesh, 0.0, physics, kind=discretize.OperatorKind.ROBIN_HOMOGENIZED)
        dirichlet = discretize.assemble_cell(mesh, 0.0, physics, kind=discretize.OperatorKind.DIRICHLET_HOMOGENIZED)

        assert robin.dimension == 256 * 16
        assert perturbed.dimension == 256 * 16 - 49
        assert dirichlet.dimension == 256 * 15

    def test_strip_geometry_must_match(self, periodic: geometry.AlternationGeometry):
        mesh = discretize.build_strip_mesh(periodic, 3.0, 16, 8)
        other = geometry.build_periodic_geometry(0.1, 0.3, models.Regime.robin(10.0))

        with pytest.raises(errors.MeshError):
            discretize.assemble_strip(mesh, models.PhysicsConfig(), other, discretize.OperatorKind.PERTURBED)

    def test_robin_homogenization_needs_robin_regime(self):
        dirichlet = geometry.build_periodic_geometry(0.1, 0.3, models.Regime.dirichlet())
        mesh = discretize.build_strip_mesh(dirichlet, 3.0, 16, 8)

        with pytest.raises(errors.RegimeError):
            discretize.assemble_strip(
                mesh,
                models.PhysicsConfig(),
                dirichlet,
                discretize.OperatorKind.ROBIN_HOMOGENIZED,
            )


class TestEigensolve:
    def test_count_range(self):
        op = discretize.assemble_cell(_surrogate_cell(), 0.0, models.PhysicsConfig())

        with pytest.raises(errors.ParameterError):
            discretize.eigensolve_lowest(op, op.dimension)

    def test_unshifted_adds_the_quasimomentum(self):
        op = discretize.assemble_cell(_surrogate_cell(), 0.5, models.PhysicsConfig(b=0.5))
        shifted = discretize.eigensolve_lowest(op, 3).eigenvalues
        unshifted = discretize.eigensolve_lowest(op.unshifted(), 3).eigenvalues

        np.testing.assert_allclose(unshifted - shifted, 1.0, atol=1e-9)

    def test_constant_potential_shifts_the_spectrum(self):
        mesh = _surrogate_cell()
        free = discretize.eigensolve_lowest(discretize.assemble_cell(mesh, 0.0, models.PhysicsConfig()), 3)
        shifted = discretize.eigensolve_lowest(
            discretize.assemble_cell(
                mesh,
                0.0,
                models.PhysicsConfig(potential=models.ScalarPotential(kind=models.FieldKind.CONSTANT, amplitude=2.5)),
            ),
            3,
        )

        np.testing.assert_allclose(shifted.eigenvalues - free.eigenvalues, 2.5, atol=1e-9)

    def test_mass_normalized(self):
        result = discretize.eigensolve_lowest(
            discretize.assemble_cell(_surrogate_cell(), 0.0, models.PhysicsConfig()),
            2,
        )
        mesh = result.operator.mesh

        assert discretize.norms(result.grid_vector(0), mesh) == pytest.approx(1.0)
        assert np.all(result.residuals <= 1e-6)

    def test_surrogate_matches_the_one_dimensional_model(self):
        mesh = discretize.build_cell_mesh(None, 16, 200, epsilon=0.1)
        op = discretize.assemble_cell(mesh, 0.0, models.PhysicsConfig(b=1.0))
        result = discretize.eigensolve_lowest(op, 1)
        expected = model1d.lambda_n(models.RobinCoefficient(b=1.0, K=0.0, mu=0.0), 1).value

        assert result.applications > 0
        assert result.eigenvalues[0] == pytest.approx(expected, abs=2e-3)

    def test_all_dirichlet_cell_converges_at_second_order(self):
        errors_by_size = []
        for n2 in (16, 32, 64):
            op = discretize.assemble_cell(
                _surrogate_cell(n2=n2),
                0.0,
                models.PhysicsConfig(),
                kind=discretize.OperatorKind.DIRICHLET_HOMOGENIZED,
            )
            errors_by_size.append(abs(discretize.eigensolve_lowest(op, 1).eigenvalues[0] - 1.0))

        assert errors_by_size[-1] < 1e-3
        for coarse, fine in zip(errors_by_size, errors_by_size[1:]):
            assert 1.8 <= math.log2(coarse / fine) <= 2.2

    def test_uniform_robin_cell_converges_at_second_order(self):
        expected = model1d.lambda_n(models.RobinCoefficient(b=1.0, K=0.0, mu=0.0), 1).value
        errors_by_size = []
        for n2 in (50, 100, 200):
            op = discretize.assemble_cell(_surrogate_cell(n2=n2), 0.0, models.PhysicsConfig(b=1.0))
            errors_by_size.append(abs(discretize.eigensolve_lowest(op, 1).eigenvalues[0] - expected))

        assert expected == pytest.approx(0.620, abs=1e-3)
        for coarse, fine in zip(errors_by_size, errors_by_size[1:]):
            assert 1.8 <= math.log2(coarse / fine) <= 2.2

    def test_dirichlet_strip(self):
        mesh = discretize.build_strip_mesh(None, 10.0, 8, 40, epsilon=1.0)
        op = discretize.assemble_strip(
            mesh,
            models.PhysicsConfig(),
            None,
            discretize.OperatorKind.DIRICHLET_HOMOGENIZED,
        )
        lowest = discretize.eigensolve_lowest(op, 1).eigenvalues[0]

        assert 0.99 < lowest < 1.02


class TestResolvent:
    def test_contraction(self):
        mesh = discretize.build_strip_mesh(None, 3.0, 8, 8, epsilon=0.2)
        op = discretize.assemble_strip(mesh, models.PhysicsConfig(b=0.5), None, discretize.OperatorKind.PERTURBED)
        solve = discretize.resolvent_solver(op)

        for name, f in discretize.probe_functions(mesh).items():
            u = solve(f)
            assert discretize.norms(u, mesh) <= 1.0 + 1e-12, name

    def test_solves_the_system(self):
        mesh = _surrogate_cell()
        op = discretize.assemble_cell(mesh, 0.0, models.PhysicsConfig(b=1.0))
        f = discretize.probe_functions(mesh)["bump"]
        u = discretize.resolvent_solve(op, f)

        residual = op.matrix @ op.restrict(u) + 1j * op.mass * op.restrict(u) - op.mass * op.restrict(f)
        assert np.linalg.norm(residual) < 1e-10

    def test_graded_strip_is_backward_stable(self):
        mesh = discretize.build_strip_mesh(None, 3.0, 32, 48, epsilon=0.05, x2_grading=6.0)
        op = discretize.assemble_strip(mesh, models.PhysicsConfig(b=0.5), None, discretize.OperatorKind.PERTURBED)
        system = op.matrix + 1j * op.mass_matrix
        scale = abs(system).sum(axis=1).max()
        solve = discretize.resolvent_solver(op)

        for name, f in discretize.probe_functions(mesh).items():
            u = op.restrict(solve(f))
            rhs = op.mass * op.restrict(f)
            residual = np.max(np.abs(system @ u - rhs))

            assert residual <= 1e-12 * (scale * np.max(np.abs(u)) + np.max(np.abs(rhs))), name

    def test_cell_resolvent_needs_shifted_operator(self):
        op = discretize.assemble_cell(_surrogate_cell(), 0.5, models.PhysicsConfig(), shifted=False)

        with pytest.raises(errors.ParameterError):
            discretize.cell_resolvent_solve(op, np.ones(op.mesh.size))


class TestProbes:
    def test_unit_norm(self):
        mesh = discretize.build_strip_mesh(None, 3.0, 8, 8, epsilon=0.2)
        probes = discretize.probe_functions(mesh, seed=3)

        assert list(probes) == ["eigenvector", "bump", "oscillatory", "boundary", "random"]
        for f in probes.values():
            assert discretize.norms(f, mesh) == pytest.approx(1.0)

    def test_support(self):
        mesh = discretize.build_strip_mesh(None, 3.0, 8, 8, epsilon=0.2)
        probes = discretize.probe_functions(mesh, support=1.0)

        outside = np.abs(mesh.x1) >= 1.0
        for f in probes.values():
            np.testing.assert_array_equal(f[outside], 0.0)

    def test_support_inside_half_strip(self):
        mesh = discretize.build_strip_mesh(None, 3.0, 8, 8, epsilon=0.2)

        with pytest.raises(errors.MeshError):
            discretize.probe_functions(mesh, support=mesh.half_length)

    def test_seeded(self):
        mesh = _surrogate_cell()

        np.testing.assert_array_equal(
            discretize.probe_functions(mesh, seed=5)["random"],
            discretize.probe_functions(mesh, seed=5)["random"],
        )


class TestQuasimode:
    def test_geometry_must_match(self, periodic: geometry.AlternationGeometry):
        mesh = discretize.build_cell_mesh(periodic, 64, 8)
        other = geometry.build_periodic_geometry(0.1, 0.3, models.Regime.robin(10.0))

        with pytest.raises(errors.ParameterError):
            discretize.quasimode_rayleigh(mesh, other, 0.0)

    def test_rayleigh_quotient_above_the_bottom(self):
        epsilon = 0.3
        scheduled = geometry.build_periodic_geometry(
            epsilon,
            geometry.eta_schedule(epsilon, 10.0),
            models.Regime.robin(10.0),
        )
        mesh = discretize.build_cell_mesh(scheduled, 32, 16)
        rayleigh, gap = discretize.quasimode_rayleigh(mesh, scheduled, 0.0)
        bottom = discretize.eigensolve_lowest(discretize.assemble_cell(mesh, 0.0, models.PhysicsConfig()), 1)

        assert math.isfinite(gap)
        assert rayleigh >= bottom.eigenvalues[0] - 1e-9


class TestSnapshot:
    def test_columns(self, tmp_path: pathlib.Path):
        mesh = _surrogate_cell()
        path = tmp_path / "snapshot.csv"
        discretize.export_snapshot(mesh, np.arange(mesh.size) * (1.0 + 1.0j), path)

        with path.open(encoding="utf-8") as file:
            rows = list(csv.reader(file))

        assert rows[0] == ["x1", "x2", "kind", "re", "im"]
        assert len(rows) == mesh.size + 1
        assert rows[1][2] == "robin"
        assert float(rows[2][3]) == float(rows[2][4]) == 1.0
