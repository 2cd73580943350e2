import typing

from alterna import geometry
from alterna import models
from alterna.internal import data_binding

__all__: typing.Sequence[str] = ("ConfigFactory",)


@typing.runtime_checkable
class ConfigFactory(typing.Protocol):
    __slots__: typing.Sequence[str] = ()

    def deserialize_run_config(self, payload: data_binding.JSONObject) -> models.RunConfig:
        ...

    def deserialize_sweep_plan(
        self,
        payload: data_binding.JSONObject,
        *,
        experiment: models.ExperimentKind,
        seed: int,
    ) -> models.SweepPlan:
        ...

    def deserialize_geometry_template(
        self,
        payload: data_binding.JSONObject,
    ) -> models.GeometryTemplate:
        ...

    def deserialize_geometry(self, payload: data_binding.JSONObject) -> geometry.AlternationGeometry:
        ...

    def deserialize_physics(self, payload: data_binding.JSONObject) -> models.PhysicsConfig:
        ...

    def deserialize_mesh_policy(self, payload: data_binding.JSONObject) -> models.MeshPolicy:
        ...

    def serialize_geometry(self, geometry: geometry.AlternationGeometry) -> data_binding.JSONObject:
        ...
