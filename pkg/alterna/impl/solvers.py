from __future__ import annotations

import logging
import typing

from alterna import discretize
from alterna.api import solver_trait

__all__: typing.Sequence[str] = ("SparseDirectSolver",)


_LOGGER = logging.getLogger("alterna.solvers")


class SparseDirectSolver(solver_trait.SpectralSolver):
    """Sparse LU for resolvents and shift-and-invert Lanczos for eigenpairs."""

    __slots__: typing.Sequence[str] = ("_tol", "_seed", "_max_iterations")

    _tol: float
    _seed: int
    _max_iterations: int | None

    def __init__(
        self,
        tol: float = 1e-10,
        *,
        seed: int = 0,
        max_iterations: int | None = None,
    ) -> None:
        self._tol = tol
        self._seed = seed
        self._max_iterations = max_iterations

    @property
    def tol(self) -> float:
        return self._tol

    @property
    def seed(self) -> int:
        return self._seed

    def eigensolve(
        self,
        op: discretize.AssembledOperator,
        count: int,
    ) -> discretize.SpectrumResult:
        result = discretize.eigensolve_lowest(
            op,
            count,
            self._tol,
            seed=self._seed,
            max_iterations=self._max_iterations,
        )
        _LOGGER.debug(
            "%d eigenpairs of a %d-dimensional %s operator (worst residual %.2e).",
            count,
            op.dimension,
            op.kind.value,
            float(result.residuals.max()),
        )
        return result

    def resolvent(
        self,
        op: discretize.AssembledOperator,
        *,
        z: complex = -1j,
    ) -> discretize.ResolventSolve:
        return discretize.resolvent_solver(op, z=z)
