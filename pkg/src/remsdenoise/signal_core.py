"""Canonical signal containers, gap-aware segmentation and boom combination.

Temperature series are kept in kelvin throughout. Data arrives in
discontinuous observation sessions, so a series is split into segments at
timestamp gaps before any filtering; runs too short to filter are reported,
never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import AlignmentError, EmptyInputError

DEFAULT_GAP_THRESHOLD = 1.5   # seconds; nominal 1 Hz sampling plus jitter
DEFAULT_MIN_SEGMENT_LEN = 64  # > 2x the longest filter support


def _as_readonly_f64(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Signal:
    """A uniformly sampled temperature series from one measurement channel.

    Parameters
    ----------
    channel_id : int
        Channel index, 1..6 (three sensors per boom).
    timestamps : array-like
        Sample times in seconds, strictly increasing, nominally 1 s apart.
    samples : array-like
        Temperatures in kelvin; must be finite.
    sol : int, optional
        Martian day label carried as metadata.
    """

    channel_id: int
    timestamps: np.ndarray
    samples: np.ndarray
    sol: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "timestamps", _as_readonly_f64(self.timestamps))
        object.__setattr__(self, "samples", _as_readonly_f64(self.samples))
        if self.samples.ndim != 1 or self.timestamps.ndim != 1:
            raise ValueError("timestamps and samples must be 1-D")
        if len(self.samples) != len(self.timestamps):
            raise AlignmentError(
                f"samples ({len(self.samples)}) and timestamps "
                f"({len(self.timestamps)}) differ in length"
            )
        if len(self.samples) < 1:
            raise EmptyInputError("signal must contain at least one sample")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples contain NaN/inf")
        if not np.all(np.isfinite(self.timestamps)):
            raise ValueError("timestamps contain NaN/inf")
        if len(self.timestamps) > 1 and not np.all(np.diff(self.timestamps) > 0):
            raise ValueError("timestamps must be strictly increasing")
        if not 1 <= int(self.channel_id) <= 6:
            raise ValueError(f"channel_id must be in 1..6, got {self.channel_id}")

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class Segment:
    """A gap-free run of samples inside a parent :class:`Signal`.

    ``start_index``/``end_index`` are a half-open slice into the parent.
    """

    channel_id: int
    start_index: int
    end_index: int
    timestamps: np.ndarray
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "timestamps", _as_readonly_f64(self.timestamps))
        object.__setattr__(self, "samples", _as_readonly_f64(self.samples))
        if self.end_index - self.start_index != len(self.samples):
            raise ValueError("segment index range inconsistent with sample count")

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class SkippedRun:
    """A gap-free run too short to process, kept for manifest accounting."""

    channel_id: int
    start_index: int
    end_index: int
    reason: str

    def __len__(self) -> int:
        return self.end_index - self.start_index


@dataclass(frozen=True)
class SegmentationResult:
    segments: tuple
    skipped: tuple

    def covered_samples(self) -> int:
        return sum(len(s) for s in self.segments) + sum(len(r) for r in self.skipped)


@dataclass(frozen=True)
class BoomTemperaturePair:
    """Aligned ambient-temperature estimates from the two booms."""

    t1: np.ndarray
    t2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t1", _as_readonly_f64(self.t1))
        object.__setattr__(self, "t2", _as_readonly_f64(self.t2))
        if len(self.t1) != len(self.t2):
            raise AlignmentError(
                f"boom series lengths differ: {len(self.t1)} vs {len(self.t2)}"
            )


@dataclass(frozen=True)
class DenoiseResult:
    """Output of one denoising method on one series.

    ``denoised + residual`` reproduces the input exactly (the decompositions
    are additive identities).
    """

    method: str
    denoised: np.ndarray
    residual: np.ndarray
    thresholds: tuple = ()
    sigmas: tuple = ()
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "denoised", _as_readonly_f64(self.denoised))
        object.__setattr__(self, "residual", _as_readonly_f64(self.residual))
        if len(self.denoised) != len(self.residual):
            raise AlignmentError("denoised and residual lengths differ")


def segment(signal: Signal,
            gap_threshold: float = DEFAULT_GAP_THRESHOLD,
            min_segment_len: int = DEFAULT_MIN_SEGMENT_LEN) -> SegmentationResult:
    """Split a signal into gap-free runs, reporting runs below the minimum.

    Every sample ends up either in a segment or in a skipped-run report;
    concatenating the segments and skipped runs in order reproduces the
    parent signal index range exactly.
    """
    if gap_threshold <= 0:
        raise ValueError("gap_threshold must be positive")
    if min_segment_len < 1:
        raise ValueError("min_segment_len must be >= 1")
    ts = signal.timestamps
    breaks = np.flatnonzero(np.diff(ts) > gap_threshold) + 1
    bounds = np.concatenate(([0], breaks, [len(ts)]))
    segments = []
    skipped = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        a, b = int(a), int(b)
        if b - a >= min_segment_len:
            segments.append(Segment(
                channel_id=signal.channel_id,
                start_index=a, end_index=b,
                timestamps=ts[a:b], samples=signal.samples[a:b],
            ))
        else:
            skipped.append(SkippedRun(
                channel_id=signal.channel_id,
                start_index=a, end_index=b,
                reason=f"run of {b - a} samples below min_segment_len="
                       f"{min_segment_len}",
            ))
    return SegmentationResult(segments=tuple(segments), skipped=tuple(skipped))


def min_combine(pair: BoomTemperaturePair) -> np.ndarray:
    """Elementwise minimum of the two boom estimates (the coolest reading)."""
    return np.minimum(pair.t1, pair.t2)
