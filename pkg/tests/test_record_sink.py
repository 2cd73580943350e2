import csv
import json
import pathlib

from alterna import models
from alterna.impl import record_sink


def _record(epsilon: float, tau: float | None = None, probe: str | None = None) -> models.ConvergenceRecord:
    return models.ConvergenceRecord(
        epsilon=epsilon,
        observable="cell_resolvent",
        error=0.125,
        theory_bound=0.5,
        mesh_n1=16,
        mesh_n2=17,
        seed=3,
        tau=tau,
        probe=probe,
        eta=0.1,
    )


class TestCSVRecordSink:
    def test_table(self, tmp_path: pathlib.Path):
        sink = record_sink.CSVRecordSink(tmp_path / "out")
        sink.write_records(
            models.ExperimentKind.BAND_SWEEP,
            [_record(0.1, 0.25, "max"), _record(0.2, 0.0, "bump"), _record(0.1, 0.0, "max")],
        )

        with (tmp_path / "out" / "band.csv").open(encoding="utf-8") as file:
            rows = list(csv.reader(file))

        assert rows[0] == list(record_sink.COLUMNS)
        assert [(row[0], row[1]) for row in rows[1:]] == [("0.2", "0.0"), ("0.1", "0.0"), ("0.1", "0.25")]
        assert rows[1] == ["0.2", "0.0", "cell_resolvent", "bump", "0.125", "0.5", "16", "17", "0.1", "", "3"]

    def test_file_name_follows_experiment(self, tmp_path: pathlib.Path):
        sink = record_sink.CSVRecordSink(tmp_path)
        sink.write_records(models.ExperimentKind.DIRICHLET_RESOLVENT, [_record(0.1)])

        assert (tmp_path / "dirichlet_resolvent.csv").exists()

    def test_reproducible(self, tmp_path: pathlib.Path):
        records = [_record(0.1, 0.0, "max"), _record(0.2, 0.0, "max")]
        record_sink.CSVRecordSink(tmp_path / "a").write_records(models.ExperimentKind.BAND_SWEEP, records)
        record_sink.CSVRecordSink(tmp_path / "b").write_records(models.ExperimentKind.BAND_SWEEP, records[::-1])

        first = (tmp_path / "a" / "band.csv").read_bytes()
        assert first == (tmp_path / "b" / "band.csv").read_bytes()

    def test_summary(self, tmp_path: pathlib.Path):
        sink = record_sink.CSVRecordSink(tmp_path)
        sink.write_summary({"seed": 0, "experiment": "band-sweep", "observables": []})

        text = (tmp_path / record_sink.SUMMARY_NAME).read_text(encoding="utf-8")
        assert text.endswith("\n")
        assert json.loads(text) == {"seed": 0, "experiment": "band-sweep", "observables": []}
        assert text.index('"experiment"') < text.index('"seed"')
