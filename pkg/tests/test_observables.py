import math

import pytest

from alterna import errors
from alterna import models
from alterna import observables


class TestRegistry:
    def test_by_name(self):
        assert observables.by_name("corrector_h1") is observables.CORRECTOR_H1

    def test_unknown_name(self):
        with pytest.raises(KeyError, match="nope"):
            observables.by_name("nope")

    def test_names_are_unique(self):
        names = [o.name for o in observables.ALL]

        assert len(names) == len(set(names))

    def test_for_experiment(self):
        names = [o.name for o in observables.for_experiment(models.ExperimentKind.DIRICHLET_RESOLVENT)]

        assert names == ["dirichlet_h1", "strip_truncation"]

    def test_band_sweep_observables(self):
        names = {o.name for o in observables.for_experiment(models.ExperimentKind.BAND_SWEEP)}

        assert {"cell_resolvent", "band_eigenvalue", "band_span", "band_bottom", "band_overlap"} <= names
        assert "resolvent_l2_mu" not in names


class TestBounds:
    def test_log_rate(self):
        scales = observables.Scales(epsilon=0.1, strength=5.0, mu=0.0)

        assert observables.RESOLVENT_L2_MU.estimate(scales) == pytest.approx(0.5 * abs(math.log(0.5)))

    def test_log_rate_adds_mu(self):
        scales = observables.Scales(epsilon=0.1, strength=5.0, mu=0.25)
        expected = observables.RESOLVENT_L2_MU.estimate(scales) + 0.25

        assert observables.RESOLVENT_L2_ZERO.estimate(scales) == pytest.approx(expected)

    def test_log_rate_vanishes_without_strength(self):
        assert observables.CORRECTOR_H1.estimate(observables.Scales(epsilon=0.1)) == 0.0

    def test_dirichlet_rate(self):
        scales = observables.Scales(epsilon=0.0625, eta=0.3)
        expected = 0.5 * (abs(math.log(math.sin(0.3))) + math.cos(0.3)) ** 0.25

        assert observables.DIRICHLET_H1.estimate(scales) == pytest.approx(expected)

    def test_band_rate_grows_with_the_index(self):
        first = observables.Scales(epsilon=0.1, strength=10.0, index=1)
        third = observables.Scales(epsilon=0.1, strength=10.0, index=3)

        assert observables.BAND_EIGENVALUE.estimate(third) == pytest.approx(
            81.0 * observables.BAND_EIGENVALUE.estimate(first),
        )
        assert observables.BAND_EIGENVALUE.estimate(first) == pytest.approx(
            observables.CELL_RESOLVENT.estimate(first),
        )

    def test_band_span(self):
        assert observables.BAND_SPAN.estimate(observables.Scales(epsilon=0.1, tau=0.5)) == pytest.approx(25.0)

    def test_constants(self):
        scales = observables.Scales(epsilon=0.1)

        assert observables.BAND_BOTTOM.estimate(scales) == 1e-8
        assert observables.BAND_OVERLAP.estimate(scales) == 0.0
        assert observables.STRIP_TRUNCATION.estimate(scales) == 0.01


class TestRecords:
    def test_record(self):
        scales = observables.Scales(epsilon=0.1, strength=5.0, mu=0.0, eta=0.13)
        record = observables.RESOLVENT_L2_MU.record(scales, error=0.02, mesh=(64, 48), seed=3, probe="max")

        assert record.observable == "resolvent_l2_mu"
        assert record.epsilon == 0.1
        assert record.theory_bound == pytest.approx(0.5 * abs(math.log(0.5)))
        assert (record.mesh_n1, record.mesh_n2, record.seed) == (64, 48, 3)
        assert record.eta == 0.13
        assert record.mu == 0.0

    def test_headline(self):
        scales = observables.Scales(epsilon=0.1)
        headline = observables.CELL_RESOLVENT.record(scales, error=0.1, mesh=(8, 8), seed=0, tau=0.0, probe="max")
        shifted = observables.CELL_RESOLVENT.record(scales, error=0.1, mesh=(8, 8), seed=0, tau=0.5, probe="max")
        probe = observables.CELL_RESOLVENT.record(scales, error=0.1, mesh=(8, 8), seed=0, tau=0.0, probe="bump")

        assert observables.CELL_RESOLVENT.is_headline(headline)
        assert not observables.CELL_RESOLVENT.is_headline(shifted)
        assert not observables.CELL_RESOLVENT.is_headline(probe)
        assert not observables.BAND_EIGENVALUE.is_headline(headline)

    def test_negative_errors_rejected(self):
        with pytest.raises(errors.ParameterError):
            observables.BAND_SPAN.record(observables.Scales(epsilon=0.1), error=-1.0, mesh=(8, 8), seed=0)
