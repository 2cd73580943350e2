import typing

from alterna.api import record_sink_trait
from alterna.api import solver_trait

__all__: typing.Sequence[str] = (
    "SolverAware",
    "RecordSinkAware",
    "Runnable",
    "SweepRunnerAware",
)


@typing.runtime_checkable
class SolverAware(typing.Protocol):
    __slots__: typing.Sequence[str] = ()

    @property
    def solver(self) -> solver_trait.SpectralSolver:
        ...


@typing.runtime_checkable
class RecordSinkAware(typing.Protocol):
    __slots__: typing.Sequence[str] = ()

    @property
    def record_sink(self) -> record_sink_trait.RecordSink:
        ...


@typing.runtime_checkable
class Runnable(typing.Protocol):
    __slots__: typing.Sequence[str] = ()

    @property
    def is_alive(self) -> bool:
        ...

    async def close(self) -> None:
        ...

    async def start(self) -> None:
        ...


@typing.runtime_checkable
class SweepRunnerAware(
    SolverAware,
    RecordSinkAware,
    Runnable,
    typing.Protocol,
):
    __slots__: typing.Sequence[str] = ()
