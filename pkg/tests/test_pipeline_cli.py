import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from remsdenoise.cli import main
from remsdenoise.errors import ConfigurationError, IngestionError
from remsdenoise.pipeline import (ColumnMapping, PipelineConfig, emit_plot,
                                  ingest, parse_mapping_file, run_pipeline)
from synth import gapped_rows


def write_csv(path, ts, columns, header=None):
    with path.open("w") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for i in range(len(ts)):
            fh.write(",".join([f"{ts[i]:.3f}"]
                              + [f"{c[i]:.6f}" for c in columns]) + "\n")


@pytest.fixture
def fixture_files(tmp_path):
    """Gap-containing two-channel file plus its mapping file."""
    ts, v1 = gapped_rows(seed=0)
    _, v2 = gapped_rows(seed=1)
    data = tmp_path / "data.csv"
    write_csv(data, ts, [v1, v2], header=["time", "t1", "t2"])
    mapping = tmp_path / "map.txt"
    mapping.write_text(
        "# column mapping\ntimestamp=time\nch1=t1\nch2=t2\n"
        "boom1=t1\nboom2=t2\n")
    return data, mapping, ts, v1, v2


class TestMapping:
    def test_parse(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text("timestamp=0\nch1=1\nch3=name\nsentinel=-9999\n")
        m = parse_mapping_file(p)
        assert m.timestamp == 0
        assert m.channels == {1: 1, 3: "name"}
        assert m.sentinel == -9999.0

    def test_missing_timestamp(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text("ch1=1\n")
        with pytest.raises(ConfigurationError):
            parse_mapping_file(p)

    def test_bad_line(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text("timestamp=0\nch1 1\n")
        with pytest.raises(ConfigurationError):
            parse_mapping_file(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            parse_mapping_file(tmp_path / "nope.txt")

    def test_no_series_columns(self):
        with pytest.raises(ConfigurationError):
            ColumnMapping(timestamp=0)

    def test_bad_channel_index(self):
        with pytest.raises(ConfigurationError):
            ColumnMapping(timestamp=0, channels={9: 1})


class TestIngest:
    def test_three_columns_two_channels(self, tmp_path):
        ts = np.arange(50.0)
        write_csv(tmp_path / "d.csv", ts, [ts + 200, ts + 210])
        res = ingest(tmp_path / "d.csv",
                     ColumnMapping(timestamp=0, channels={1: 1, 2: 2}))
        assert set(res.signals) == {1, 2}
        assert len(res.signals[1]) == len(res.signals[2]) == 50
        assert res.dropped_rows == 0

    def test_sentinel_rows_dropped(self, tmp_path):
        ts = np.arange(40.0)
        vals = ts + 230.0
        vals[5:10] = -9999.0
        write_csv(tmp_path / "d.csv", ts, [vals])
        res = ingest(tmp_path / "d.csv",
                     ColumnMapping(timestamp=0, channels={1: 1},
                                   sentinel=-9999.0))
        assert res.dropped_rows == 5
        assert len(res.signals[1]) == 35

    def test_unparseable_rows_dropped_whole(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,230.0\n1,banana\n2,231.0\n")
        res = ingest(p, ColumnMapping(timestamp=0, channels={1: 1}))
        assert res.dropped_rows == 1
        assert len(res.signals[1]) == 2

    def test_non_increasing_timestamp_dropped(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,230.0\n2,231.0\n1,232.0\n3,233.0\n")
        res = ingest(p, ColumnMapping(timestamp=0, channels={1: 1}))
        assert res.dropped_rows == 1
        np.testing.assert_array_equal(res.signals[1].timestamps, [0, 2, 3])

    def test_header_name_resolution(self, fixture_files):
        data, mapping, ts, v1, _ = fixture_files
        res = ingest(data, parse_mapping_file(mapping))
        np.testing.assert_allclose(res.signals[1].samples, v1, atol=1e-6)
        assert res.boom1 is not None and res.boom2 is not None

    def test_unknown_column_name(self, tmp_path):
        ts = np.arange(10.0)
        write_csv(tmp_path / "d.csv", ts, [ts], header=["time", "t1"])
        with pytest.raises(ConfigurationError):
            ingest(tmp_path / "d.csv",
                   ColumnMapping(timestamp="time", channels={1: "missing"}))

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestionError):
            ingest(tmp_path / "nope.csv",
                   ColumnMapping(timestamp=0, channels={1: 1}))

    def test_all_rows_invalid(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("a,b\nc,d\n")
        with pytest.raises(IngestionError):
            ingest(p, ColumnMapping(timestamp=0, channels={1: 1}))


class TestRunPipeline:
    def test_single_channel_outputs(self, tmp_path):
        ts, vals = gapped_rows(seed=2, n_runs=2, n_short=0)
        data = tmp_path / "d.csv"
        write_csv(data, ts, [vals])
        out = tmp_path / "out"
        cfg = PipelineConfig(
            method="dwt", input_path=data,
            mapping=ColumnMapping(timestamp=0, channels={1: 1}),
            out_dir=out)
        manifest = run_pipeline(cfg)
        assert (out / "channel_1_dwt.csv").exists()
        assert (out / "channel_1_dwt_residual.csv").exists()
        assert (out / "report.jsonl").exists()
        assert (out / "manifest.json").exists()
        assert manifest.total_rows == len(ts)
        assert len(manifest.input_digest) == 64
        records = [json.loads(line)
                   for line in (out / "report.jsonl").read_text().splitlines()]
        assert len(records) == 2
        assert all(r["method"] == "dwt" and r["prd"] >= 0 for r in records)

    def test_boom_combination_written(self, fixture_files, tmp_path):
        data, mapping, *_ = fixture_files
        out = tmp_path / "out"
        cfg = PipelineConfig(method="ma", input_path=data,
                             mapping=parse_mapping_file(mapping), out_dir=out)
        manifest = run_pipeline(cfg)
        assert "combined_min_ma.csv" in manifest.outputs
        body = (out / "combined_min_ma.csv").read_text().splitlines()
        assert body[0] == "timestamp,boom1_denoised,boom2_denoised,combined_min"
        rows = np.array([[float(v) for v in line.split(",")]
                         for line in body[1:]])
        np.testing.assert_allclose(rows[:, 3],
                                   np.minimum(rows[:, 1], rows[:, 2]),
                                   atol=0)

    def test_only_short_runs_all_skipped(self, tmp_path):
        ts, vals = gapped_rows(seed=3, n_runs=0, n_short=4, short_len=10)
        data = tmp_path / "d.csv"
        write_csv(data, ts, [vals])
        out = tmp_path / "out"
        manifest = run_pipeline(PipelineConfig(
            method="ma", input_path=data,
            mapping=ColumnMapping(timestamp=0, channels={1: 1}),
            out_dir=out))
        assert all(o["status"] == "skipped" for o in manifest.outcomes)
        assert len(manifest.outcomes) == 4
        assert not (out / "channel_1_ma.csv").exists()

    def test_unknown_method_rejected(self, tmp_path):
        with pytest.raises(ConfigurationError):
            PipelineConfig(method="fft", input_path=tmp_path / "x",
                           mapping=ColumnMapping(timestamp=0, channels={1: 1}),
                           out_dir=tmp_path)


class TestEmitPlot:
    def test_writes_wellformed_svg(self, tmp_path, rng):
        x = rng.normal(230.0, 0.5, 1000)
        path = tmp_path / "overlay.svg"
        assert emit_plot(x, x, np.zeros_like(x), path)
        assert path.stat().st_size > 0
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")

    def test_empty_series_noop(self, tmp_path):
        path = tmp_path / "overlay.svg"
        assert emit_plot([], [], [], path) is False
        assert not path.exists()

    def test_two_methods_two_files(self, fixture_files, tmp_path):
        data, mapping, *_ = fixture_files
        names = set()
        for method in ("ma", "dwt"):
            out = tmp_path / method
            run_pipeline(PipelineConfig(
                method=method, input_path=data,
                mapping=parse_mapping_file(mapping), out_dir=out, plot=True))
            svgs = sorted(p.name for p in out.glob("*.svg"))
            assert svgs
            names.add(tuple(svgs))
        assert len(names) == 2


class TestCli:
    def test_successful_run(self, fixture_files, tmp_path, capsys):
        data, mapping, *_ = fixture_files
        out = tmp_path / "out"
        code = main(["--method", "ma", "--input", str(data),
                     "--map", str(mapping), "--out", str(out)])
        assert code == 0
        assert "processed" in capsys.readouterr().out
        assert (out / "manifest.json").exists()

    def test_missing_input_exits_2(self, fixture_files, tmp_path, capsys):
        _, mapping, *_ = fixture_files
        code = main(["--method", "ma", "--input", str(tmp_path / "nope.csv"),
                     "--map", str(mapping), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_bad_levels_exits_2(self, fixture_files, tmp_path, capsys):
        data, mapping, *_ = fixture_files
        code = main(["--method", "dwt", "--input", str(data),
                     "--map", str(mapping), "--out", str(tmp_path / "o"),
                     "--levels", "0"])
        assert code == 2

    def test_levels_clamped_to_depth(self, fixture_files, tmp_path):
        data, mapping, *_ = fixture_files
        out = tmp_path / "out"
        code = main(["--method", "dwt", "--input", str(data),
                     "--map", str(mapping), "--out", str(out),
                     "--levels", "12", "--wavelet", "db4"])
        assert code == 0

    def test_module_entry_point(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "remsdenoise.cli", "--help"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "--method" in proc.stdout
