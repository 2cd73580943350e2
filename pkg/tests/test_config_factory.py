import math
import pathlib

import numpy as np
import pytest

from alterna import errors
from alterna import geometry
from alterna import models
from alterna.impl import config_factory
from alterna.internal import data_binding


@pytest.fixture
def factory() -> config_factory.ConfigFactory:
    return config_factory.ConfigFactory()


def _config_error(factory: config_factory.ConfigFactory, payload: data_binding.JSONObject) -> errors.ConfigError:
    with pytest.raises(errors.ConfigError) as info:
        factory.deserialize_run_config(payload)

    return info.value


class TestRunConfig:
    def test_defaults(self, factory: config_factory.ConfigFactory):
        config = factory.deserialize_run_config({"experiment": "band-sweep"})

        assert config.plan.experiment is models.ExperimentKind.BAND_SWEEP
        assert config.plan == models.SweepPlan(experiment="band-sweep")
        assert config.output_directory == pathlib.Path("results")
        assert config.workers is None

    def test_full_document(self, factory: config_factory.ConfigFactory):
        config = factory.deserialize_run_config(
            {
                "experiment": "robin-resolvent",
                "geometry": {"regime": "robin", "K": 5, "delta": 0.2, "c2": 0.7},
                "physics": {"b": -0.5, "potential": {"kind": "cosine", "amplitude": 1.5, "wavenumber": 2}},
                "sweep": {"epsilons": [0.2, 0.1], "strip_check": False},
                "mesh": {"n1": 32, "half_length": 4},
                "output_directory": "out",
                "seed": 7,
                "workers": 2,
            },
        )
        plan = config.plan

        assert plan.geometry.kind is models.GeometryKind.WARPED
        assert plan.geometry.regime == models.Regime.robin(5.0)
        assert plan.geometry.spread == 0.7
        assert plan.physics.potential == models.ScalarPotential(kind="cosine", amplitude=1.5, wavenumber=2.0)
        assert plan.epsilons == (0.2, 0.1)
        assert not plan.strip_check
        assert plan.mesh.n1 == 32
        assert plan.mesh.half_length == 4.0
        assert plan.seed == 7
        assert config.output_directory == pathlib.Path("out")
        assert config.workers == 2

    def test_dirichlet_defaults(self, factory: config_factory.ConfigFactory):
        template = factory.deserialize_run_config({"experiment": "dirichlet-resolvent"}).plan.geometry

        assert template.regime.kind is models.RegimeKind.DIRICHLET
        assert template.eta == 0.3

    def test_explicit_kind_is_inferred(self, factory: config_factory.ConfigFactory):
        template = factory.deserialize_geometry_template(
            {"points": [0.0, math.pi], "half_lengths": [[0.3, 0.3], [0.2, 0.4]], "eta": 0.4},
        )

        assert template.kind is models.GeometryKind.EXPLICIT
        assert template.minus == (0.3, 0.2)
        assert template.plus == (0.3, 0.4)


class TestConfigErrors:
    def test_missing_experiment(self, factory: config_factory.ConfigFactory):
        assert _config_error(factory, {}).key == "experiment"

    def test_unknown_experiment(self, factory: config_factory.ConfigFactory):
        assert _config_error(factory, {"experiment": "flux-capacitor"}).key == "experiment"

    def test_unknown_key(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "band-sweep", "sweep": {"epsilonz": [0.1]}})

        assert error.key == "sweep.epsilonz"
        assert str(error).startswith("Invalid configuration key 'sweep.epsilonz'")

    def test_list_entries_are_located(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "band-sweep", "sweep": {"epsilons": [0.2, "x"]}})

        assert error.key == "sweep.epsilons[1]"

    def test_regime_constant_names(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "robin-resolvent", "geometry": {"c3": 1.5}})

        assert error.key == "geometry.c3"

    def test_model_validation_is_located(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "band-sweep", "sweep": {"epsilons": [0.1, 0.2]}})

        assert error.key == "sweep"
        assert isinstance(error.__cause__, errors.ParameterError)

    def test_regime_mismatch(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "band-sweep", "geometry": {"regime": "dirichlet"}})

        assert error.key == "sweep"

    def test_booleans_are_not_numbers(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "band-sweep", "physics": {"b": True}})

        assert error.key == "physics.b"

    def test_integer_mesh_sizes(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "band-sweep", "mesh": {"n1": 32.5}})

        assert error.key == "mesh.n1"

    def test_unsupported_field(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "robin-resolvent", "physics": {"magnetic": {"kind": "cosine"}}})

        assert error.key == "physics.magnetic"

    def test_half_length_pairs(self, factory: config_factory.ConfigFactory):
        error = _config_error(
            factory,
            {"experiment": "robin-resolvent", "geometry": {"points": [0.0], "half_lengths": [[0.3]], "eta": 0.3}},
        )

        assert error.key == "geometry.half_lengths"

    def test_sections_are_objects(self, factory: config_factory.ConfigFactory):
        assert _config_error(factory, {"experiment": "band-sweep", "mesh": [1, 2]}).key == "mesh"

    def test_strip_check_flag(self, factory: config_factory.ConfigFactory):
        error = _config_error(factory, {"experiment": "robin-resolvent", "sweep": {"strip_check": 1}})

        assert error.key == "sweep.strip_check"


class TestGeometryDocuments:
    def test_periodic(self, factory: config_factory.ConfigFactory):
        built = factory.deserialize_geometry({"epsilon": 0.1, "eta": 0.3})

        assert built.periodic
        assert built.eta == 0.3

    def test_needs_epsilon(self, factory: config_factory.ConfigFactory):
        with pytest.raises(errors.ConfigError) as info:
            factory.deserialize_geometry({"eta": 0.3})

        assert info.value.key == "epsilon"

    def test_overlap_becomes_config_error(self, factory: config_factory.ConfigFactory):
        with pytest.raises(errors.ConfigError) as info:
            factory.deserialize_geometry(
                {"epsilon": 0.1, "eta": 1.7, "points": [0.0, math.pi], "half_lengths": [[1.7, 1.7], [1.7, 1.7]]},
            )

        assert isinstance(info.value.__cause__, errors.GeometryError)

    def test_serialized_periodic(self, factory: config_factory.ConfigFactory):
        payload = factory.serialize_geometry(geometry.build_periodic_geometry(0.1, 0.3))

        assert payload["kind"] == "periodic"
        assert payload["c2"] == 1.0
        assert "points" not in payload

    def test_warped_geometries_serialize_explicitly(self, factory: config_factory.ConfigFactory):
        warped = geometry.build_warped_geometry(0.1, 0.3, 0.2, 5, n_points=6)
        payload = factory.serialize_geometry(warped)
        rebuilt = factory.deserialize_geometry(payload)

        assert payload["kind"] == "explicit"
        assert payload["seed"] == 5
        assert rebuilt.first_index == warped.first_index
        np.testing.assert_allclose(rebuilt.points, warped.points)
        np.testing.assert_allclose(rebuilt.minus, warped.minus)
