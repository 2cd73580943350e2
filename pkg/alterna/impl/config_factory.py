from __future__ import annotations

import math
import typing

from alterna import errors
from alterna import geometry as geometry_
from alterna import models
from alterna.api import config_factory_trait
from alterna.internal import data_binding

__all__: typing.Sequence[str] = ("ConfigFactory",)


_DEFAULT_DIRICHLET_ETA: typing.Final[float] = 0.3

_RUN_KEYS: typing.Final[frozenset[str]] = frozenset(
    {"experiment", "geometry", "physics", "sweep", "mesh", "output_directory", "seed", "workers"},
)
_TEMPLATE_KEYS: typing.Final[frozenset[str]] = frozenset(
    {
        "kind",
        "regime",
        "K",
        "eta",
        "mu0",
        "delta",
        "seed",
        "c2",
        "c3",
        "points",
        "half_lengths",
        "first_index",
    },
)
_GEOMETRY_KEYS: typing.Final[frozenset[str]] = _TEMPLATE_KEYS | {"epsilon"}
_PHYSICS_KEYS: typing.Final[frozenset[str]] = frozenset({"b", "magnetic", "potential"})
_FIELD_KEYS: typing.Final[frozenset[str]] = frozenset({"kind", "amplitude", "wavenumber"})
_SWEEP_KEYS: typing.Final[frozenset[str]] = frozenset(
    {"epsilons", "kappa", "taus", "bands", "strip_check"},
)
_MESH_KEYS: typing.Final[frozenset[str]] = frozenset(
    {
        "n1",
        "n2",
        "x2_grading",
        "segment_nodes",
        "max_n1",
        "half_length",
        "refinement",
        "layer_aspect",
        "extrapolation_levels",
    },
)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _check_keys(payload: data_binding.JSONObject, allowed: frozenset[str], path: str) -> None:
    for key in sorted(payload):
        if key not in allowed:
            msg = f"Unknown key; expected one of {', '.join(sorted(allowed))}."
            raise errors.ConfigError(msg, key=_join(path, key))


def _section(payload: data_binding.JSONObject, key: str, path: str) -> data_binding.JSONObject:
    value = payload.get(key, {})
    if not isinstance(value, typing.Mapping):
        msg = "Expected an object."
        raise errors.ConfigError(msg, key=_join(path, key))

    return typing.cast(data_binding.JSONObject, value)


def _number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        msg = f"Expected a number, got {value!r}."
        raise errors.ConfigError(msg, key=path)

    if not math.isfinite(value):
        msg = f"Expected a finite number, got {value!r}."
        raise errors.ConfigError(msg, key=path)

    return float(value)


def _integer(value: object, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        msg = f"Expected an integer, got {value!r}."
        raise errors.ConfigError(msg, key=path)

    return value


def _numbers(value: object, path: str) -> tuple[float, ...]:
    if isinstance(value, (str, bytes)) or not isinstance(value, typing.Sequence):
        msg = f"Expected a list of numbers, got {value!r}."
        raise errors.ConfigError(msg, key=path)

    items = typing.cast(typing.Sequence[object], value)
    return tuple(_number(item, f"{path}[{i}]") for i, item in enumerate(items))


def _optional(
    payload: data_binding.JSONObject,
    key: str,
    path: str,
    convert: typing.Callable[[object, str], typing.Any],
) -> typing.Any:
    value = payload.get(key)
    return None if value is None else convert(value, _join(path, key))


_T = typing.TypeVar("_T")


def _build(path: str, factory: typing.Callable[[], _T]) -> _T:
    # Model validation errors become configuration errors located at ``path``.
    try:
        return factory()
    except (errors.ParameterError, errors.RegimeError, errors.GeometryError, ValueError) as exc:
        raise errors.ConfigError(str(exc), key=path) from exc


class ConfigFactory(config_factory_trait.ConfigFactory):
    __slots__ = ()

    def deserialize_run_config(self, payload: data_binding.JSONObject) -> models.RunConfig:
        _check_keys(payload, _RUN_KEYS, "")

        if "experiment" not in payload:
            msg = "The experiment kind is required."
            raise errors.ConfigError(msg, key="experiment")

        experiment = _build(
            "experiment",
            lambda: models.ExperimentKind(typing.cast(str, payload["experiment"])),
        )
        seed = _integer(payload.get("seed", 0), "seed")
        plan = self._deserialize_plan(payload, experiment=experiment, seed=seed)

        output_directory = payload.get("output_directory", "results")
        if not isinstance(output_directory, str):
            msg = "Expected a path string."
            raise errors.ConfigError(msg, key="output_directory")

        workers = _optional(payload, "workers", "", _integer)
        return models.RunConfig(plan=plan, output_directory=output_directory, workers=workers)

    def _deserialize_plan(
        self,
        payload: data_binding.JSONObject,
        *,
        experiment: models.ExperimentKind,
        seed: int,
    ) -> models.SweepPlan:
        template = self._deserialize_template(
            _section(payload, "geometry", ""),
            "geometry",
            experiment=experiment,
        )
        physics = self._deserialize_physics(_section(payload, "physics", ""), "physics")
        mesh = self._deserialize_mesh(_section(payload, "mesh", ""), "mesh")
        sweep = _section(payload, "sweep", "")
        _check_keys(sweep, _SWEEP_KEYS, "sweep")

        options: dict[str, typing.Any] = {}
        if "epsilons" in sweep:
            options["epsilons"] = _numbers(sweep["epsilons"], "sweep.epsilons")
        if "taus" in sweep:
            options["taus"] = _numbers(sweep["taus"], "sweep.taus")
        if "kappa" in sweep:
            options["kappa"] = _number(sweep["kappa"], "sweep.kappa")
        if "bands" in sweep:
            options["bands"] = _integer(sweep["bands"], "sweep.bands")
        if "strip_check" in sweep:
            strip_check = sweep["strip_check"]
            if not isinstance(strip_check, bool):
                msg = "Expected true or false."
                raise errors.ConfigError(msg, key="sweep.strip_check")

            options["strip_check"] = strip_check

        return _build(
            "sweep",
            lambda: models.SweepPlan(
                experiment=experiment,
                geometry=template,
                physics=physics,
                mesh=mesh,
                seed=seed,
                **options,
            ),
        )

    def deserialize_sweep_plan(
        self,
        payload: data_binding.JSONObject,
        *,
        experiment: models.ExperimentKind,
        seed: int,
    ) -> models.SweepPlan:
        """A plan from the ``geometry``, ``physics``, ``sweep`` and ``mesh`` sections of a run."""
        _check_keys(payload, _RUN_KEYS - {"experiment", "output_directory", "seed", "workers"}, "")
        return self._deserialize_plan(payload, experiment=experiment, seed=seed)

    # Geometry...

    def _deserialize_template(
        self,
        payload: data_binding.JSONObject,
        path: str,
        *,
        experiment: models.ExperimentKind | None = None,
        allowed: frozenset[str] = _TEMPLATE_KEYS,
    ) -> models.GeometryTemplate:
        _check_keys(payload, allowed, path)

        dirichlet_default = experiment is models.ExperimentKind.DIRICHLET_RESOLVENT
        regime_name = typing.cast(
            str,
            payload.get("regime", "dirichlet" if dirichlet_default else "robin"),
        )
        regime_kind = _build(_join(path, "regime"), lambda: models.RegimeKind(regime_name))
        K = _number(payload.get("K", 10.0), _join(path, "K"))
        regime = _build(_join(path, "K"), lambda: models.Regime(kind=regime_kind, K=K))

        eta = _optional(payload, "eta", path, _number)
        if eta is None and regime_kind is models.RegimeKind.DIRICHLET:
            eta = _DEFAULT_DIRICHLET_ETA

        spread_key = "c2" if regime_kind is models.RegimeKind.ROBIN else "c3"
        other_key = "c3" if spread_key == "c2" else "c2"
        if other_key in payload:
            msg = f"The {regime_kind.value} regime takes its half-length constant as {spread_key!r}."
            raise errors.ConfigError(msg, key=_join(path, other_key))

        points = _optional(payload, "points", path, _numbers)
        minus: tuple[float, ...] | None = None
        plus: tuple[float, ...] | None = None
        if "half_lengths" in payload:
            minus, plus = self._deserialize_half_lengths(
                payload["half_lengths"],
                _join(path, "half_lengths"),
            )

        default_kind = "periodic"
        if points is not None:
            default_kind = "explicit"
        elif payload.get("delta", 0.0) != 0.0 or "seed" in payload:
            default_kind = "warped"

        kind_name = typing.cast(str, payload.get("kind", default_kind))
        kind = _build(_join(path, "kind"), lambda: models.GeometryKind(kind_name))
        seed = _optional(payload, "seed", path, _integer)
        first_index = _integer(payload.get("first_index", 0), _join(path, "first_index"))

        return _build(
            path,
            lambda: models.GeometryTemplate(
                kind=kind,
                regime=regime,
                eta=eta,
                mu0=_number(payload.get("mu0", 0.0), _join(path, "mu0")),
                delta=_number(payload.get("delta", 0.0), _join(path, "delta")),
                seed=seed,
                spread=_optional(payload, spread_key, path, _number),
                points=points,
                minus=minus,
                plus=plus,
                first_index=first_index,
            ),
        )

    def _deserialize_half_lengths(
        self,
        value: object,
        path: str,
    ) -> tuple[tuple[float, ...], tuple[float, ...]]:
        if isinstance(value, (str, bytes)) or not isinstance(value, typing.Sequence):
            msg = "Expected a list of [a_minus, a_plus] pairs."
            raise errors.ConfigError(msg, key=path)

        entries = typing.cast(typing.Sequence[object], value)
        pairs = [_numbers(pair, f"{path}[{i}]") for i, pair in enumerate(entries)]
        if any(len(pair) != 2 for pair in pairs):  # noqa: PLR2004
            msg = "Every half-length entry is an [a_minus, a_plus] pair."
            raise errors.ConfigError(msg, key=path)

        return tuple(pair[0] for pair in pairs), tuple(pair[1] for pair in pairs)

    def deserialize_geometry_template(
        self,
        payload: data_binding.JSONObject,
    ) -> models.GeometryTemplate:
        return self._deserialize_template(payload, "geometry")

    def deserialize_geometry(self, payload: data_binding.JSONObject) -> geometry_.AlternationGeometry:
        """A geometry document: a template together with its ``epsilon``."""
        _check_keys(payload, _GEOMETRY_KEYS, "")
        if "epsilon" not in payload:
            msg = "Geometry documents need an epsilon."
            raise errors.ConfigError(msg, key="epsilon")

        epsilon = _number(payload["epsilon"], "epsilon")
        template = self._deserialize_template(payload, "", allowed=_GEOMETRY_KEYS)
        return _build("", lambda: geometry_.build_from_template(template, epsilon))

    def serialize_geometry(self, geometry: geometry_.AlternationGeometry) -> data_binding.JSONObject:
        regime = geometry.regime
        spread_key = "c2" if regime.kind is models.RegimeKind.ROBIN else "c3"
        payload: dict[str, data_binding.JSONish] = {
            "kind": "periodic" if geometry.periodic else "explicit",
            "epsilon": geometry.epsilon,
            "eta": geometry.eta,
            "regime": regime.kind.value,
            "K": regime.K,
            "delta": geometry.diffeomorphism.delta,
            spread_key: geometry.spread,
        }
        if geometry.seed is not None:
            payload["seed"] = geometry.seed

        if not geometry.periodic:
            payload["first_index"] = geometry.first_index
            payload["points"] = data_binding.to_jsonish(geometry.points)
            payload["half_lengths"] = [
                [float(minus), float(plus)] for minus, plus in zip(geometry.minus, geometry.plus)
            ]

        return payload

    # Physics and meshes...

    def _deserialize_field(
        self,
        payload: data_binding.JSONObject,
        path: str,
        model: type[models.MagneticPotential] | type[models.ScalarPotential],
    ) -> typing.Any:
        _check_keys(payload, _FIELD_KEYS, path)
        kind = typing.cast(str, payload.get("kind", "zero"))
        amplitude = _number(payload.get("amplitude", 0.0), _join(path, "amplitude"))
        wavenumber = _number(payload.get("wavenumber", 1.0), _join(path, "wavenumber"))
        return _build(path, lambda: model(kind=kind, amplitude=amplitude, wavenumber=wavenumber))

    def _deserialize_physics(self, payload: data_binding.JSONObject, path: str) -> models.PhysicsConfig:
        _check_keys(payload, _PHYSICS_KEYS, path)
        magnetic = typing.cast(
            models.MagneticPotential,
            self._deserialize_field(
                _section(payload, "magnetic", path),
                _join(path, "magnetic"),
                models.MagneticPotential,
            ),
        )
        potential = typing.cast(
            models.ScalarPotential,
            self._deserialize_field(
                _section(payload, "potential", path),
                _join(path, "potential"),
                models.ScalarPotential,
            ),
        )
        b = _number(payload.get("b", 0.0), _join(path, "b"))
        return models.PhysicsConfig(b=b, magnetic=magnetic, potential=potential)

    def deserialize_physics(self, payload: data_binding.JSONObject) -> models.PhysicsConfig:
        return self._deserialize_physics(payload, "physics")

    def _deserialize_mesh(self, payload: data_binding.JSONObject, path: str) -> models.MeshPolicy:
        _check_keys(payload, _MESH_KEYS, path)
        options: dict[str, typing.Any] = {}
        for key in ("n1", "n2", "segment_nodes", "max_n1", "refinement", "extrapolation_levels"):
            if key in payload:
                options[key] = _integer(payload[key], _join(path, key))

        for key in ("x2_grading", "half_length", "layer_aspect"):
            if key in payload:
                options[key] = _number(payload[key], _join(path, key))

        return _build(path, lambda: models.MeshPolicy(**options))

    def deserialize_mesh_policy(self, payload: data_binding.JSONObject) -> models.MeshPolicy:
        return self._deserialize_mesh(payload, "mesh")
