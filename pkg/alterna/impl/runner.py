from __future__ import annotations

import asyncio
import concurrent.futures
import functools
import logging
import time
import typing

import typing_extensions

from alterna import experiments
from alterna import traits
from alterna.impl import record_sink as record_sink_
from alterna.impl import solvers
from alterna.internal import async_utils

if typing.TYPE_CHECKING:
    from alterna import models
    from alterna.api import record_sink_trait
    from alterna.api import solver_trait
    from alterna.internal import data_binding

__all__: typing.Sequence[str] = ("SweepRunner",)


_LOGGER = logging.getLogger("alterna.runner")


class SweepRunner(traits.SweepRunnerAware):
    """Runs the points of sweep plans concurrently on a thread pool.

    SciPy's sparse factorizations and ARPACK release the GIL, so threads give real parallelism
    for the expensive part of every point.
    """

    __slots__: typing.Sequence[str] = ("_solver", "_record_sink", "_workers", "_executor")

    _solver: solver_trait.SpectralSolver
    _record_sink: record_sink_trait.RecordSink
    _workers: int | None
    _executor: concurrent.futures.ThreadPoolExecutor | None

    def __init__(
        self,
        solver_impl: solver_trait.SpectralSolver | None = None,
        record_sink_impl: record_sink_trait.RecordSink | None = None,
        *,
        output_directory: str = "results",
        seed: int = 0,
        workers: int | None = None,
    ) -> None:
        self._solver = solver_impl if solver_impl is not None else solvers.SparseDirectSolver(seed=seed)
        self._record_sink = (
            record_sink_impl
            if record_sink_impl is not None
            else record_sink_.CSVRecordSink(output_directory)
        )
        self._workers = workers
        self._executor = None

    @classmethod
    def from_config(cls, config: models.RunConfig) -> SweepRunner:
        return cls(
            output_directory=str(config.output_directory),
            seed=config.plan.seed,
            workers=config.workers,
        )

    async def start(self) -> None:
        if self._executor is not None:
            msg = "Cannot start an already running sweep runner."
            raise RuntimeError(msg)

        self._executor = concurrent.futures.ThreadPoolExecutor(
            max_workers=self._workers,
            thread_name_prefix="alterna-sweep",
        )
        _LOGGER.debug("Started a sweep pool with %s workers.", self._workers or "default")

    async def close(self) -> None:
        if self._executor is None:
            msg = "Cannot close an inactive sweep runner."
            raise RuntimeError(msg)

        executor, self._executor = self._executor, None
        await asyncio.get_running_loop().run_in_executor(
            None,
            functools.partial(executor.shutdown, wait=True, cancel_futures=True),
        )
        _LOGGER.debug("Sweep pool closed.")

    async def __aenter__(self) -> typing_extensions.Self:
        await self.start()
        return self

    async def __aexit__(self, *_: object) -> None:
        await self.close()

    @property
    def is_alive(self) -> bool:
        return self._executor is not None

    @property
    def solver(self) -> solver_trait.SpectralSolver:
        return self._solver

    @property
    def record_sink(self) -> record_sink_trait.RecordSink:
        return self._record_sink

    async def run(self, plan: models.SweepPlan) -> list[models.ConvergenceRecord]:
        """Run every point of ``plan``; records are sorted independently of completion order."""
        if self._executor is None:
            msg = "Start the sweep runner before running plans."
            raise RuntimeError(msg)

        started = time.monotonic()
        calls = [
            functools.partial(experiments.run_point, plan, point, self._solver)
            for point in experiments.sweep_points(plan)
        ]
        results = await async_utils.gather_blocking(self._executor, calls)
        records = experiments.finalize(plan, results)

        _LOGGER.info(
            "Finished %s in approximately %.2f [s].",
            plan.experiment.value,
            time.monotonic() - started,
        )
        return records

    async def run_and_write(self, plan: models.SweepPlan) -> data_binding.JSONObject:
        """Run ``plan`` and hand its records and summary to the record sink."""
        records = await self.run(plan)
        summary = experiments.summarize(plan, records)
        self._record_sink.write_records(plan.experiment, records)
        self._record_sink.write_summary(summary)
        return summary
