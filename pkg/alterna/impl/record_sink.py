from __future__ import annotations

import csv
import logging
import pathlib
import typing

from alterna.api import record_sink_trait
from alterna.internal import data_binding

if typing.TYPE_CHECKING:
    import os

    from alterna import models

__all__: typing.Sequence[str] = ("COLUMNS", "SUMMARY_NAME", "CSVRecordSink")


_LOGGER = logging.getLogger("alterna.record_sink")

COLUMNS: typing.Final[typing.Sequence[str]] = (
    "epsilon",
    "tau",
    "observable",
    "probe",
    "error",
    "theory_bound",
    "mesh_n1",
    "mesh_n2",
    "eta",
    "mu",
    "seed",
)

SUMMARY_NAME: typing.Final[str] = "rates.json"


def _cell(value: object) -> str:
    if value is None:
        return ""

    if isinstance(value, float):
        # repr round-trips, so identical runs give identical files.
        return repr(value)

    return str(value)


class CSVRecordSink(record_sink_trait.RecordSink):
    """Writes one CSV table per experiment and a JSON summary into a directory."""

    __slots__: typing.Sequence[str] = ("_directory",)

    _directory: pathlib.Path

    def __init__(self, directory: str | os.PathLike[str]) -> None:
        self._directory = pathlib.Path(directory)

    @property
    def directory(self) -> pathlib.Path:
        return self._directory

    def write_records(
        self,
        experiment: models.ExperimentKind,
        records: typing.Sequence[models.ConvergenceRecord],
    ) -> None:
        self._directory.mkdir(parents=True, exist_ok=True)
        path = self._directory / experiment.csv_name

        with path.open("w", newline="", encoding="utf-8") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(COLUMNS)
            for record in sorted(records, key=lambda r: r.sort_key):
                writer.writerow([_cell(getattr(record, column)) for column in COLUMNS])

        _LOGGER.info("Wrote %d records to %s.", len(records), path)

    def write_summary(self, summary: data_binding.JSONObject) -> None:
        self._directory.mkdir(parents=True, exist_ok=True)
        path = self._directory / SUMMARY_NAME
        path.write_text(data_binding.dump_json(summary) + "\n", encoding="utf-8")
        _LOGGER.info("Wrote the summary to %s.", path)
