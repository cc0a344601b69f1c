"""Span-9 moving-average FIR filter, the mission's baseline denoiser.

The strict causal form delays the output by (span-1)/2 samples, which
misaligns features in overlay plots, so the default is a centered
equal-weight window that shrinks symmetrically at the edges (weights
renormalized to the in-range count). The causal variant pads the left edge
by reflection instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInputError
from .signal_core import DenoiseResult

DEFAULT_SPAN = 9


@dataclass(frozen=True)
class MaConfig:
    span: int = DEFAULT_SPAN
    mode: str = "centered"  # "centered" or "causal"

    def __post_init__(self):
        if self.span < 1:
            raise ValueError("span must be >= 1")
        if self.mode not in ("centered", "causal"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "centered" and self.span % 2 == 0:
            raise ValueError("centered mode requires an odd span")


def moving_average(x, cfg: MaConfig = MaConfig()) -> DenoiseResult:
    """Apply the moving-average filter and return the smoothed/residual pair."""
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    if n == 0:
        raise EmptyInputError("moving_average: empty input")
    span = cfg.span
    if cfg.mode == "centered":
        # centered slice of the full convolution ("same" would return the
        # longer operand's length whenever n < span)
        window = np.ones(span)
        lo = (span - 1) // 2
        y = np.convolve(x, window, mode="full")[lo:lo + n]
        counts = np.convolve(np.ones(n), window, mode="full")[lo:lo + n]
        y /= counts
    else:
        # reflect-pad the left edge so the output keeps the input length
        xp = np.pad(x, (span - 1, 0), mode="reflect") if span > 1 else x
        y = np.convolve(xp, np.ones(span) / span, mode="valid")
    return DenoiseResult(
        method="ma",
        denoised=y,
        residual=x - y,
        details={"span": span, "mode": cfg.mode},
    )
