"""Denoising toolkit for 1 Hz air-temperature telemetry.

Three methods over a common signal model: the baseline span-9 moving
average, wavelet shrinkage with a universal soft threshold, and
EMD-based per-mode shrinkage; plus comparison metrics and a batch CLI.
"""

__version__ = "0.1.0"

from .errors import (AlignmentError, ConfigurationError, EmptyInputError,
                     IngestionError, InputTooShortError, RemsDenoiseError,
                     UnsupportedWaveletError)
from .signal_core import (BoomTemperaturePair, DenoiseResult, Segment,
                          SegmentationResult, Signal, SkippedRun,
                          min_combine, segment)
from .ma_filter import MaConfig, moving_average
from .wavelet_filters import WaveletSpec, build_wavelet, parse_wavelet_name
from .wavelet_denoise import (ThresholdReport, WaveletDecomposition,
                              denoise_dwt, dwt_forward, dwt_inverse,
                              estimate_sigma, max_level, soft_threshold,
                              universal_threshold)
from .emd_denoise import (CmseSelection, EmdDecomposition, SiftConfig, cmse,
                          denoise_hht, emd, envelope, find_extrema,
                          select_index, sift)
from .metrics_bench import (MetricsReport, compare_against_reference,
                            format_reference_table, prd, residual_sigma,
                            run_benchmark)

__all__ = [
    "AlignmentError", "BoomTemperaturePair", "CmseSelection",
    "ConfigurationError", "DenoiseResult", "EmdDecomposition",
    "EmptyInputError", "IngestionError", "InputTooShortError", "MaConfig",
    "MetricsReport", "RemsDenoiseError", "Segment", "SegmentationResult",
    "SiftConfig", "Signal", "SkippedRun", "ThresholdReport",
    "UnsupportedWaveletError", "WaveletDecomposition", "WaveletSpec",
    "build_wavelet", "cmse", "compare_against_reference", "denoise_dwt",
    "denoise_hht", "dwt_forward", "dwt_inverse", "emd", "envelope",
    "estimate_sigma", "find_extrema", "format_reference_table", "max_level",
    "min_combine", "moving_average", "parse_wavelet_name", "prd",
    "residual_sigma", "run_benchmark", "segment", "select_index", "sift",
    "soft_threshold", "universal_threshold",
]
