"""Empirical-mode-decomposition shrinkage denoising.

Sifting extracts oscillatory modes (IMFs) by iteratively subtracting the
mean of the cubic-spline envelopes through the local maxima and minima.
The stopping rule is the tri-threshold amplitude criterion: with
a(n) = (upper - lower)/2 and e(n) = |mean(n) / a(n)|, sifting stops once
e < theta1 on at least a (1 - alpha) fraction of samples and e < theta2
everywhere. Denoising estimates a per-mode noise scale (MAD / 0.6745),
soft-thresholds the modes up to the index selected by the consecutive
mean-square-error rule, and reassembles the series; modes beyond that
index and the residual pass through untouched.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import EmptyInputError, InputTooShortError
from .signal_core import DenoiseResult
from .wavelet_denoise import ThresholdReport, soft_threshold, universal_threshold

# samples with envelope half-amplitude below this are excluded from the
# stopping-criterion evaluation (division guard)
_AMPLITUDE_FLOOR = 1e-12


@dataclass(frozen=True)
class SiftConfig:
    theta1: float = 0.05
    theta2: float = 0.5
    alpha: float = 0.05
    max_siftings: int = 1000
    max_imfs: int = 32

    def __post_init__(self):
        if not 0 < self.theta1 < self.theta2:
            raise ValueError("need 0 < theta1 < theta2")
        if not 0 < self.alpha < 1:
            raise ValueError("need 0 < alpha < 1")
        if self.max_siftings < 1 or self.max_imfs < 1:
            raise ValueError("iteration caps must be >= 1")


@dataclass(frozen=True)
class EmdDecomposition:
    """Ordered IMFs (finest first) plus the monotonic residual."""

    imfs: tuple
    residual: np.ndarray
    sift_counts: tuple

    @property
    def n_modes(self) -> int:
        return len(self.imfs)

    def reconstruct(self) -> np.ndarray:
        out = np.array(self.residual, dtype=np.float64, copy=True)
        for c in self.imfs:
            out += c
        return out


@dataclass(frozen=True)
class CmseSelection:
    """Per-mode mean-square values and the argmin index (1-based)."""

    per_mode_cmse: tuple
    j: int


def find_extrema(x):
    """Indices of strict local maxima and minima.

    A plateau of equal values counts as a single extremum at its midpoint
    (rounded down). Endpoints are never extrema.
    """
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 3:
        raise InputTooShortError("find_extrema needs at least 3 samples")
    d = np.diff(x)
    nzi = np.flatnonzero(d)
    if len(nzi) < 2:
        empty = np.asarray([], dtype=np.intp)
        return empty, empty
    s = np.sign(d[nzi])
    changes = np.flatnonzero(s[1:] != s[:-1])
    # plateau midpoint between the bracketing slopes, rounded down
    idx = (nzi[changes] + 1 + nzi[changes + 1]) // 2
    rising = s[changes] > 0
    return idx[rising].astype(np.intp), idx[~rising].astype(np.intp)


def envelope(x, extrema_indices) -> np.ndarray:
    """Natural cubic spline through the extrema, evaluated at every sample.

    The two extrema nearest each end are mirrored across the end points so
    the spline is supported over the whole index range.
    """
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    idx = np.asarray(extrema_indices, dtype=np.intp)
    if len(idx) < 1:
        raise InputTooShortError("envelope needs at least one extremum")
    left = idx[:2]
    right = idx[-2:]
    knots = np.concatenate([-left[::-1], idx, 2 * (n - 1) - right[::-1]])
    values = np.concatenate([x[left[::-1]], x[idx], x[right[::-1]]])
    knots, unique_pos = np.unique(knots, return_index=True)
    values = values[unique_pos]
    t = np.arange(n)
    if len(knots) < 2:
        return np.full(n, values[0])
    if len(knots) == 2:
        return np.interp(t, knots, values)
    return CubicSpline(knots, values, bc_type="natural")(t)


def _envelope_mean(x):
    """Mean envelope and half-amplitude, or None if too few extrema."""
    maxima, minima = find_extrema(x)
    if len(maxima) < 2 or len(minima) < 2:
        return None
    upper = envelope(x, maxima)
    lower = envelope(x, minima)
    return (upper + lower) / 2.0, (upper - lower) / 2.0


def sift(x, cfg: SiftConfig = SiftConfig()):
    """Extract one IMF; returns (imf, number_of_sifting_iterations)."""
    h = np.asarray(x, dtype=np.float64).copy()
    n_iter = 0
    for _ in range(cfg.max_siftings):
        em = _envelope_mean(h)
        if em is None:
            break
        mean, amp = em
        valid = np.abs(amp) >= _AMPLITUDE_FLOOR
        if valid.any():
            e = np.abs(mean[valid] / amp[valid])
            met = (np.mean(e < cfg.theta1) >= 1.0 - cfg.alpha
                   and np.all(e < cfg.theta2))
        else:
            met = True
        h -= mean
        n_iter += 1
        if met:
            break
    else:
        warnings.warn(
            f"sifting stopped at max_siftings={cfg.max_siftings} "
            "before meeting the stopping criterion",
            stacklevel=2,
        )
    return h, n_iter


def _count_zero_crossings(x) -> int:
    s = np.sign(x[x != 0])
    return int(np.sum(s[1:] != s[:-1])) if len(s) > 1 else 0


def emd(x, cfg: SiftConfig = SiftConfig()) -> EmdDecomposition:
    """Decompose into IMFs plus a monotonic (extrema-poor) residual.

    Completeness holds by construction: modes are pure subtractions from the
    running residual, so imfs + residual reassembles the input exactly.
    """
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 8:
        raise InputTooShortError("emd needs at least 8 samples")
    residual = x.copy()
    imfs, counts = [], []
    while len(imfs) < cfg.max_imfs:
        maxima, minima = find_extrema(residual)
        if len(maxima) < 2 or len(minima) < 2:
            break
        imf, n_iter = sift(residual, cfg)
        if n_iter == 0:
            break
        imfs.append(imf)
        counts.append(n_iter)
        residual = residual - imf
    else:
        warnings.warn(f"decomposition stopped at max_imfs={cfg.max_imfs}",
                      stacklevel=2)
    decomp = EmdDecomposition(imfs=tuple(imfs), residual=residual,
                              sift_counts=tuple(counts))
    _warn_on_imf_violations(decomp)
    return decomp


def _warn_on_imf_violations(decomp: EmdDecomposition) -> None:
    """Check the extrema / zero-crossing count property of each mode."""
    bad = []
    for m, c in enumerate(decomp.imfs, start=1):
        maxima, minima = find_extrema(c)
        extrema = len(maxima) + len(minima)
        if abs(extrema - _count_zero_crossings(c)) > 1:
            bad.append(m)
    if bad and len(bad) > max(1, 0.01 * decomp.n_modes):
        warnings.warn(
            f"IMF extrema/zero-crossing property violated at modes {bad}",
            stacklevel=3,
        )


def cmse(c_k) -> float:
    """Mean square of one mode; equals the squared distance between the two
    partial reconstructions that differ by it, divided by N."""
    c_k = np.asarray(c_k, dtype=np.float64)
    if len(c_k) == 0:
        raise EmptyInputError("cmse: empty mode")
    return float(np.mean(c_k ** 2))


def select_index(decomp: EmdDecomposition) -> CmseSelection:
    """Noise/signal mode boundary: argmin of cmse over modes 1..M-1.

    Ties resolve to the smallest index. With fewer than two modes the
    selection degenerates to j = M (threshold everything), with a warning.
    """
    m_total = decomp.n_modes
    if m_total < 2:
        warnings.warn(
            f"only {m_total} mode(s); CMSE selection degenerates to j={m_total}",
            stacklevel=2,
        )
        values = tuple(cmse(c) for c in decomp.imfs)
        return CmseSelection(per_mode_cmse=values, j=m_total)
    values = tuple(cmse(c) for c in decomp.imfs[:-1])
    j = int(np.argmin(values)) + 1
    return CmseSelection(per_mode_cmse=values, j=j)


def denoise_hht(x, cfg: Optional[SiftConfig] = None):
    """Full EMD shrinkage chain.

    Returns the :class:`DenoiseResult` plus one :class:`ThresholdReport` per
    thresholded mode. Modes 1..j get individual universal thresholds from
    their own MAD-based noise scales; modes j+1..M and the residual pass
    through bit-identically.
    """
    if cfg is None:
        cfg = SiftConfig()
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    decomp = emd(x, cfg)
    if decomp.n_modes == 0:
        result = DenoiseResult(
            method="hht", denoised=x.copy(), residual=np.zeros(n),
            details={"n_modes": 0, "selected_index": 0,
                     "sift_counts": decomp.sift_counts},
        )
        return result, []
    selection = select_index(decomp)
    reports = []
    denoised = decomp.residual.copy()
    for m, c in enumerate(decomp.imfs, start=1):
        if m <= selection.j:
            mad = np.median(np.abs(c - np.median(c)))
            sigma = float(mad / 0.6745)
            theta = universal_threshold(sigma, n)
            denoised += soft_threshold(c, theta)
            reports.append(ThresholdReport(sigma=sigma, theta=theta,
                                           levels_thresholded=(m,)))
        else:
            denoised += c
    result = DenoiseResult(
        method="hht",
        denoised=denoised,
        residual=x - denoised,
        thresholds=tuple(r.theta for r in reports),
        sigmas=tuple(r.sigma for r in reports),
        details={"n_modes": decomp.n_modes, "selected_index": selection.j,
                 "sift_counts": decomp.sift_counts,
                 "per_mode_cmse": selection.per_mode_cmse},
    )
    return result, reports
