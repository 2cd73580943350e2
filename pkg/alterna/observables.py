"""Registry of the quantities recorded by the experiments, with their constant-free bounds."""

from __future__ import annotations

import math
import sys
import typing

import attr

from alterna import models

__all__: typing.Sequence[str] = (
    "Scales",
    "Observable",
    "PROBE_MAX",
    "RESOLVENT_L2_MU",
    "RESOLVENT_L2_ZERO",
    "RESOLVENT_H1_ZERO",
    "RESOLVENT_H1_MU",
    "CORRECTOR_H1",
    "DIRICHLET_H1",
    "CELL_RESOLVENT",
    "BAND_EIGENVALUE",
    "BAND_SPAN",
    "BAND_BOTTOM",
    "BAND_OVERLAP",
    "BOTTOM_ROOT",
    "BOTTOM_LEADING",
    "QUASIMODE",
    "STRIP_TRUNCATION",
    "ALL",
    "by_name",
    "for_experiment",
)


PROBE_MAX: typing.Final[str] = sys.intern("max")
"""Probe label of the maximum over the probe family, the stand-in for an operator norm."""


@attr.define(frozen=True, kw_only=True, weakref_slot=False)
class Scales:
    """The parameters a theory bound depends on at one sweep point."""

    epsilon: float = attr.field()

    strength: float = attr.field(default=0.0)
    """K + μ."""

    mu: float | None = attr.field(default=None)

    eta: float | None = attr.field(default=None)

    kappa: float = attr.field(default=0.5)

    tau: float = attr.field(default=0.0)
    """Largest |τ| of the sweep, for band lengths."""

    index: int = attr.field(default=1)
    """Band number n."""


_Estimate = typing.Callable[[Scales], float]


@attr.define(frozen=True, weakref_slot=False)
class Observable:
    name: str = attr.field()

    experiment: models.ExperimentKind | None = attr.field()
    """``None`` for observables shared by several experiments."""

    estimate: _Estimate = attr.field(eq=False)
    """Right-hand side of the corresponding estimate, without its unknown constant."""

    headline: str | None = attr.field(default=None)
    """Probe label of the records that rate fits use."""

    def record(
        self,
        scales: Scales,
        *,
        error: float,
        mesh: tuple[int, int],
        seed: int,
        tau: float | None = None,
        probe: str | None = None,
    ) -> models.ConvergenceRecord:
        return models.ConvergenceRecord(
            epsilon=scales.epsilon,
            observable=self.name,
            error=float(error),
            theory_bound=float(self.estimate(scales)),
            mesh_n1=mesh[0],
            mesh_n2=mesh[1],
            seed=seed,
            tau=tau,
            probe=probe,
            eta=scales.eta,
            mu=scales.mu,
        )

    def is_headline(self, record: models.ConvergenceRecord) -> bool:
        return (
            record.observable == self.name
            and record.probe == self.headline
            and (record.tau is None or record.tau == 0.0)
        )

    def __str__(self) -> str:
        return self.name


# Bounds...


def _log_rate(scales: Scales) -> float:
    """ε(K + μ)|ln ε(K + μ)|.

    The bound vanishes where ε(K + μ) = 1, for example at ε = 0.1 with K = 10 and μ = 0, so
    records there carry no bound ratio.
    """
    product = scales.epsilon * scales.strength
    return product * abs(math.log(product)) if product > 0.0 else 0.0


def _log_rate_plus_mu(scales: Scales) -> float:
    return _log_rate(scales) + (scales.mu or 0.0)


def _root_strength(scales: Scales) -> float:
    return math.sqrt(scales.strength)


def _dirichlet_rate(scales: Scales) -> float:
    eta = typing.cast(float, scales.eta)
    return scales.epsilon**0.25 * (abs(math.log(math.sin(eta))) + math.cos(eta)) ** 0.25


def _cell_rate(scales: Scales) -> float:
    product = scales.epsilon * scales.strength
    logarithm = abs(math.log(product)) if product > 0.0 else 0.0
    return math.sqrt(scales.epsilon) * scales.strength * (scales.kappa**-0.5 + logarithm)


def _band_rate(scales: Scales) -> float:
    return scales.index**4 * _cell_rate(scales)


def _band_length(scales: Scales) -> float:
    return scales.tau**2 / scales.epsilon**2


def _bottom_envelope(scales: Scales) -> float:
    eta = typing.cast(float, scales.eta)
    strength = scales.strength
    return (
        strength * math.exp(-2.0 / scales.epsilon)
        + math.sqrt(eta) * strength
        + math.sqrt(scales.epsilon * eta * strength)
    )


def _constant(value: float) -> _Estimate:
    return lambda _: value


# Robin regime resolvents.
RESOLVENT_L2_MU: typing.Final[Observable] = Observable(
    "resolvent_l2_mu",
    models.ExperimentKind.ROBIN_RESOLVENT,
    _log_rate,
    PROBE_MAX,
)
RESOLVENT_L2_ZERO: typing.Final[Observable] = Observable(
    "resolvent_l2_zero",
    models.ExperimentKind.ROBIN_RESOLVENT,
    _log_rate_plus_mu,
    PROBE_MAX,
)
RESOLVENT_H1_ZERO: typing.Final[Observable] = Observable(
    "resolvent_h1_zero",
    models.ExperimentKind.ROBIN_RESOLVENT,
    _root_strength,
    PROBE_MAX,
)
RESOLVENT_H1_MU: typing.Final[Observable] = Observable(
    "resolvent_h1_mu",
    models.ExperimentKind.ROBIN_RESOLVENT,
    _root_strength,
    PROBE_MAX,
)
CORRECTOR_H1: typing.Final[Observable] = Observable(
    "corrector_h1",
    models.ExperimentKind.ROBIN_RESOLVENT,
    _log_rate,
    PROBE_MAX,
)

# Dirichlet regime.
DIRICHLET_H1: typing.Final[Observable] = Observable(
    "dirichlet_h1",
    models.ExperimentKind.DIRICHLET_RESOLVENT,
    _dirichlet_rate,
    PROBE_MAX,
)

# Band functions.
CELL_RESOLVENT: typing.Final[Observable] = Observable(
    "cell_resolvent",
    models.ExperimentKind.BAND_SWEEP,
    _cell_rate,
    PROBE_MAX,
)
BAND_EIGENVALUE: typing.Final[Observable] = Observable(
    "band_eigenvalue",
    models.ExperimentKind.BAND_SWEEP,
    _band_rate,
    "n1",
)
BAND_SPAN: typing.Final[Observable] = Observable(
    "band_span",
    models.ExperimentKind.BAND_SWEEP,
    _band_length,
)
BAND_BOTTOM: typing.Final[Observable] = Observable(
    "band_bottom",
    models.ExperimentKind.BAND_SWEEP,
    _constant(1e-8),
)
BAND_OVERLAP: typing.Final[Observable] = Observable(
    "band_overlap",
    models.ExperimentKind.BAND_SWEEP,
    _constant(0.0),
    "n1",
)

# Bottom of the essential spectrum.
BOTTOM_ROOT: typing.Final[Observable] = Observable(
    "bottom_root",
    models.ExperimentKind.BOTTOM_ASYMPTOTICS,
    _bottom_envelope,
)
BOTTOM_LEADING: typing.Final[Observable] = Observable(
    "bottom_leading",
    models.ExperimentKind.BOTTOM_ASYMPTOTICS,
    _bottom_envelope,
)
QUASIMODE: typing.Final[Observable] = Observable(
    "quasimode",
    models.ExperimentKind.BOTTOM_ASYMPTOTICS,
    _bottom_envelope,
)

STRIP_TRUNCATION: typing.Final[Observable] = Observable(
    "strip_truncation",
    None,
    _constant(0.01),
)
"""Relative change of the largest-ε errors when the strip length is doubled."""

ALL: typing.Final[typing.Sequence[Observable]] = (
    RESOLVENT_L2_MU,
    RESOLVENT_L2_ZERO,
    RESOLVENT_H1_ZERO,
    RESOLVENT_H1_MU,
    CORRECTOR_H1,
    DIRICHLET_H1,
    CELL_RESOLVENT,
    BAND_EIGENVALUE,
    BAND_SPAN,
    BAND_BOTTOM,
    BAND_OVERLAP,
    BOTTOM_ROOT,
    BOTTOM_LEADING,
    QUASIMODE,
    STRIP_TRUNCATION,
)

_BY_NAME: typing.Final[typing.Mapping[str, Observable]] = {o.name: o for o in ALL}


def by_name(name: str) -> Observable:
    try:
        return _BY_NAME[name]
    except KeyError:
        msg = f"Unknown observable {name!r}."
        raise KeyError(msg) from None


def for_experiment(kind: models.ExperimentKind) -> list[Observable]:
    return [o for o in ALL if o.experiment is kind or o.experiment is None]
