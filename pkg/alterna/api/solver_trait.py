import typing

from alterna import discretize

__all__: typing.Sequence[str] = ("SpectralSolver",)


@typing.runtime_checkable
class SpectralSolver(typing.Protocol):
    __slots__: typing.Sequence[str] = ()

    def eigensolve(
        self,
        op: discretize.AssembledOperator,
        count: int,
    ) -> discretize.SpectrumResult:
        ...

    def resolvent(
        self,
        op: discretize.AssembledOperator,
        *,
        z: complex = -1j,
    ) -> discretize.ResolventSolve:
        ...
