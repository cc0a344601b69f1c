"""Batch front end: ingest delimited telemetry, segment, denoise, report.

Input is plain delimited text (comma or whitespace) with an explicit
column mapping, so any archive export can be processed without a
format-specific parser. Rows with sentinel or unparseable values are
dropped as whole rows (keeping channels aligned) and counted in the run
manifest. Outputs are deterministic for a fixed input and configuration.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import __version__
from .errors import ConfigurationError, IngestionError
from .ma_filter import MaConfig, moving_average
from .emd_denoise import SiftConfig, denoise_hht
from .metrics_bench import prd, residual_sigma
from .signal_core import (BoomTemperaturePair, DenoiseResult, Signal,
                          min_combine, segment)
from .wavelet_denoise import denoise_dwt, max_level
from .wavelet_filters import parse_wavelet_name

_CHANNEL_KEYS = tuple(f"ch{k}" for k in range(1, 7))


@dataclass(frozen=True)
class ColumnMapping:
    """Maps file columns to the timestamp, channels and boom series.

    Column references are either 0-based integer indices or header names.
    ``sentinel`` marks a missing-value fill literal (besides empty fields).
    """

    timestamp: object
    channels: dict = field(default_factory=dict)   # k (1..6) -> column ref
    boom1: Optional[object] = None
    boom2: Optional[object] = None
    sentinel: Optional[float] = None

    def __post_init__(self):
        if not self.channels and (self.boom1 is None or self.boom2 is None):
            raise ConfigurationError(
                "mapping must name at least one channel column or both booms"
            )
        for k in self.channels:
            if not 1 <= int(k) <= 6:
                raise ConfigurationError(f"channel index {k} outside 1..6")


def parse_mapping_file(path) -> ColumnMapping:
    """Read a plain-text ``key=value`` mapping file.

    Recognized keys: ``timestamp``, ``ch1``..``ch6``, ``boom1``, ``boom2``,
    ``sentinel``. Lines starting with ``#`` are comments.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"mapping file not found: {path}")
    entries = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(
                f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        entries[key.strip().lower()] = value.strip()
    if "timestamp" not in entries:
        raise ConfigurationError(f"{path}: mapping must define 'timestamp'")

    def column_ref(text):
        try:
            return int(text)
        except ValueError:
            return text

    channels = {int(key[2]): column_ref(val) for key, val in entries.items()
                if key in _CHANNEL_KEYS}
    sentinel = float(entries["sentinel"]) if "sentinel" in entries else None
    return ColumnMapping(
        timestamp=column_ref(entries["timestamp"]),
        channels=channels,
        boom1=column_ref(entries["boom1"]) if "boom1" in entries else None,
        boom2=column_ref(entries["boom2"]) if "boom2" in entries else None,
        sentinel=sentinel,
    )


@dataclass(frozen=True)
class IngestResult:
    signals: dict                      # channel k -> Signal
    boom_timestamps: Optional[np.ndarray]
    boom1: Optional[np.ndarray]
    boom2: Optional[np.ndarray]
    total_rows: int
    dropped_rows: int


def _split_rows(text: str):
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([f.strip() for f in line.split(",")] if "," in line
                    else line.split())
    return rows


def _resolve(ref, header, path):
    if isinstance(ref, int):
        return ref
    if header is None or ref not in header:
        raise ConfigurationError(
            f"{path}: mapping references column {ref!r} not present in header")
    return header.index(ref)


def ingest(path, mapping: ColumnMapping) -> IngestResult:
    """Read one delimited file into per-channel signals.

    Rows where any mapped field is missing, unparseable, equal to the
    sentinel, or whose timestamp does not increase, are dropped whole and
    counted.
    """
    path = Path(path)
    if not path.exists():
        raise IngestionError(f"input file not found: {path}")
    rows = _split_rows(path.read_text())
    if not rows:
        raise IngestionError(f"{path}: no rows")

    named_refs = [r for r in ([mapping.timestamp, mapping.boom1, mapping.boom2]
                              + list(mapping.channels.values()))
                  if isinstance(r, str)]
    header = None
    first_is_header = False
    if named_refs:
        header = rows[0]
        first_is_header = True
    else:
        # all refs are indices; peek at row 0 to see if it is a header line
        try:
            for ref in [mapping.timestamp] + list(mapping.channels.values()):
                float(rows[0][ref])
        except (ValueError, IndexError):
            header = rows[0]
            first_is_header = True
    data_rows = rows[1:] if first_is_header else rows

    ts_col = _resolve(mapping.timestamp, header, path)
    chan_cols = {k: _resolve(ref, header, path)
                 for k, ref in sorted(mapping.channels.items())}
    boom_cols = None
    if mapping.boom1 is not None and mapping.boom2 is not None:
        boom_cols = (_resolve(mapping.boom1, header, path),
                     _resolve(mapping.boom2, header, path))

    needed = [ts_col] + list(chan_cols.values()) + list(boom_cols or ())
    timestamps, dropped = [], 0
    columns = {c: [] for c in needed if c != ts_col}
    last_ts = -np.inf
    for row in data_rows:
        try:
            values = {c: float(row[c]) for c in needed}
        except (ValueError, IndexError):
            dropped += 1
            continue
        if any(not np.isfinite(v) for v in values.values()):
            dropped += 1
            continue
        if mapping.sentinel is not None and any(
                v == mapping.sentinel for c, v in values.items() if c != ts_col):
            dropped += 1
            continue
        if values[ts_col] <= last_ts:
            dropped += 1
            continue
        last_ts = values[ts_col]
        timestamps.append(values[ts_col])
        for c in columns:
            columns[c].append(values[c])
    if not timestamps:
        raise IngestionError(f"{path}: no valid rows after filtering")

    ts = np.asarray(timestamps)
    signals = {k: Signal(channel_id=k, timestamps=ts,
                         samples=np.asarray(columns[c]))
               for k, c in chan_cols.items()}
    boom1 = boom2 = boom_ts = None
    if boom_cols:
        boom_ts = ts
        boom1 = np.asarray(columns[boom_cols[0]])
        boom2 = np.asarray(columns[boom_cols[1]])
    return IngestResult(signals=signals, boom_timestamps=boom_ts,
                        boom1=boom1, boom2=boom2,
                        total_rows=len(data_rows), dropped_rows=dropped)


@dataclass(frozen=True)
class PipelineConfig:
    method: str
    input_path: Path
    mapping: ColumnMapping
    out_dir: Path
    report_path: Optional[Path] = None
    plot: bool = False
    gap_threshold: float = 1.5
    min_segment_len: int = 64
    span: int = 9
    ma_mode: str = "centered"
    wavelet: str = "coif5"
    levels: Optional[int] = None       # None = automatic (maximum) depth
    emd_theta1: float = 0.05
    emd_theta2: float = 0.5
    emd_alpha: float = 0.05
    max_siftings: int = 1000

    def __post_init__(self):
        if self.method not in ("ma", "dwt", "hht"):
            raise ConfigurationError(f"unknown method {self.method!r}")


@dataclass
class RunManifest:
    config: dict
    version: str
    input_digest: str
    total_rows: int = 0
    dropped_rows: int = 0
    outcomes: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def _make_denoiser(cfg: PipelineConfig) -> Callable[[np.ndarray], DenoiseResult]:
    if cfg.method == "ma":
        ma_cfg = MaConfig(span=cfg.span, mode=cfg.ma_mode)
        return lambda x: moving_average(x, ma_cfg)
    if cfg.method == "dwt":
        spec = parse_wavelet_name(cfg.wavelet)

        def run(x):
            levels = cfg.levels
            if levels is not None:
                levels = min(levels, max_level(len(x), spec))
            return denoise_dwt(x, spec, levels)[0]
        return run
    sift_cfg = SiftConfig(theta1=cfg.emd_theta1, theta2=cfg.emd_theta2,
                          alpha=cfg.emd_alpha, max_siftings=cfg.max_siftings)
    return lambda x: denoise_hht(x, sift_cfg)[0]


def _write_delimited(path: Path, header, columns) -> None:
    rows = np.column_stack(columns)
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.12g}" for v in row) + "\n")


def emit_plot(x, y, epsilon, path, timestamps=None) -> bool:
    """Write an SVG overlay of raw, denoised and residual traces.

    Returns False (no-op) for empty input.
    """
    x = np.asarray(x, dtype=np.float64)
    if len(x) == 0:
        return False
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    t = np.asarray(timestamps) if timestamps is not None else np.arange(len(x))
    fig, (ax0, ax1) = plt.subplots(
        2, 1, sharex=True, figsize=(10, 6),
        gridspec_kw={"height_ratios": [3, 1]})
    ax0.plot(t, x, lw=0.6, alpha=0.6, label="raw")
    ax0.plot(t, y, lw=0.9, label="denoised")
    ax0.set_ylabel("temperature [K]")
    ax0.legend(loc="best")
    ax1.plot(t, epsilon, lw=0.5, color="tab:red", label="residual")
    ax1.set_xlabel("time [s]")
    ax1.set_ylabel("residual [K]")
    ax1.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return True


def _process_series(label, ts, samples, cfg, denoise, manifest, records):
    """Segment one series, denoise each segment, return concatenated output."""
    sig_like = Signal(channel_id=1, timestamps=ts, samples=samples)
    seg_result = segment(sig_like, cfg.gap_threshold, cfg.min_segment_len)
    for run in seg_result.skipped:
        manifest.outcomes.append({
            "series": label, "start": run.start_index, "end": run.end_index,
            "status": "skipped", "reason": run.reason,
        })
    kept_ts, kept_raw, kept_den, kept_res = [], [], [], []
    for seg in seg_result.segments:
        try:
            t0 = time.perf_counter()
            result = denoise(seg.samples)
            elapsed = time.perf_counter() - t0
        except Exception as exc:  # record and continue with other segments
            manifest.outcomes.append({
                "series": label, "start": seg.start_index,
                "end": seg.end_index, "status": "error",
                "reason": f"{type(exc).__name__}: {exc}",
            })
            continue
        manifest.outcomes.append({
            "series": label, "start": seg.start_index, "end": seg.end_index,
            "status": "processed",
        })
        records.append({
            "method": cfg.method, "series": label,
            "segment_start": seg.start_index, "segment_end": seg.end_index,
            "n_samples": len(seg), "prd": prd(seg.samples, result.denoised),
            "residual_sigma": residual_sigma(result.residual),
            "elapsed": elapsed, "config": result.details,
        })
        kept_ts.append(seg.timestamps)
        kept_raw.append(seg.samples)
        kept_den.append(result.denoised)
        kept_res.append(result.residual)
    if not kept_ts:
        return None
    return tuple(np.concatenate(a) for a in (kept_ts, kept_raw,
                                             kept_den, kept_res))


def run_pipeline(cfg: PipelineConfig) -> RunManifest:
    """Run the full batch chain and write all outputs.

    Returns the manifest (also written to ``<out>/manifest.json``).
    """
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ingest_result = ingest(cfg.input_path, cfg.mapping)
    digest = hashlib.sha256(Path(cfg.input_path).read_bytes()).hexdigest()

    cfg_echo = asdict(cfg)
    cfg_echo["input_path"] = str(cfg.input_path)
    cfg_echo["out_dir"] = str(cfg.out_dir)
    cfg_echo["report_path"] = (str(cfg.report_path)
                               if cfg.report_path else None)
    manifest = RunManifest(config=cfg_echo, version=__version__,
                           input_digest=digest,
                           total_rows=ingest_result.total_rows,
                           dropped_rows=ingest_result.dropped_rows)
    denoise = _make_denoiser(cfg)
    records = []

    for k, sig in sorted(ingest_result.signals.items()):
        out = _process_series(f"ch{k}", sig.timestamps, sig.samples,
                              cfg, denoise, manifest, records)
        if out is None:
            continue
        ts, raw, den, res = out
        base = out_dir / f"channel_{k}_{cfg.method}"
        _write_delimited(base.with_suffix(".csv"),
                         ("timestamp", "raw", "denoised", "residual"),
                         (ts, raw, den, res))
        manifest.outputs.append(base.with_suffix(".csv").name)
        res_path = out_dir / f"channel_{k}_{cfg.method}_residual.csv"
        _write_delimited(res_path, ("timestamp", "residual"), (ts, res))
        manifest.outputs.append(res_path.name)
        if cfg.plot:
            plot_path = base.with_suffix(".svg")
            if emit_plot(raw, den, res, plot_path, timestamps=ts):
                manifest.outputs.append(plot_path.name)
            else:
                manifest.notes.append(f"plot skipped for ch{k}: empty series")

    if ingest_result.boom1 is not None and ingest_result.boom2 is not None:
        combined = _combine_booms(ingest_result, cfg, denoise, manifest,
                                  records, out_dir)
        if combined:
            manifest.outputs.append(combined)

    report_path = (Path(cfg.report_path) if cfg.report_path
                   else out_dir / "report.jsonl")
    with report_path.open("w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    manifest.outputs.append(report_path.name)

    with (out_dir / "manifest.json").open("w") as fh:
        json.dump(manifest.to_dict(), fh, indent=2, sort_keys=True)
    return manifest


def _combine_booms(ingest_result, cfg, denoise, manifest, records, out_dir):
    ts = ingest_result.boom_timestamps
    out1 = _process_series("boom1", ts, ingest_result.boom1, cfg, denoise,
                           manifest, records)
    out2 = _process_series("boom2", ts, ingest_result.boom2, cfg, denoise,
                           manifest, records)
    if out1 is None or out2 is None:
        manifest.notes.append("boom combination skipped: no processed segments")
        return None
    ts1, _, den1, _ = out1
    ts2, _, den2, _ = out2
    if len(ts1) != len(ts2) or not np.array_equal(ts1, ts2):
        manifest.notes.append("boom combination skipped: series not aligned "
                              "after per-segment processing")
        return None
    combined = min_combine(BoomTemperaturePair(t1=den1, t2=den2))
    path = out_dir / f"combined_min_{cfg.method}.csv"
    _write_delimited(path, ("timestamp", "boom1_denoised", "boom2_denoised",
                            "combined_min"), (ts1, den1, den2, combined))
    return path.name
