import typing

from alterna import models
from alterna.internal import data_binding

__all__: typing.Sequence[str] = ("RecordSink",)


@typing.runtime_checkable
class RecordSink(typing.Protocol):
    __slots__: typing.Sequence[str] = ()

    def write_records(
        self,
        experiment: models.ExperimentKind,
        records: typing.Sequence[models.ConvergenceRecord],
    ) -> None:
        ...

    def write_summary(self, summary: data_binding.JSONObject) -> None:
        ...
