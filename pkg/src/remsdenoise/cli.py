"""Command-line batch denoiser.

    denoise --method {ma|dwt|hht} --input data.csv --map mapping.txt \
            --out results/ [--report report.jsonl] [--plot] ...

Exit code 0 on success, 2 on configuration/ingestion failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigurationError, IngestionError, RemsDenoiseError
from .pipeline import PipelineConfig, parse_mapping_file, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="denoise",
        description="Batch-denoise delimited temperature telemetry.",
    )
    p.add_argument("--method", required=True, choices=("ma", "dwt", "hht"))
    p.add_argument("--input", required=True, type=Path,
                   help="delimited input file (comma or whitespace)")
    p.add_argument("--map", required=True, type=Path, dest="mapping",
                   help="key=value column-mapping file")
    p.add_argument("--out", required=True, type=Path,
                   help="output directory")
    p.add_argument("--report", type=Path, default=None,
                   help="machine-readable report path (default <out>/report.jsonl)")
    p.add_argument("--plot", action="store_true",
                   help="also write SVG overlay plots")
    p.add_argument("--gap-threshold", type=float, default=1.5,
                   help="max inter-sample spacing in seconds (default 1.5)")
    p.add_argument("--min-segment", type=int, default=64,
                   help="minimum processable run length (default 64)")
    # method parameters
    p.add_argument("--span", type=int, default=9,
                   help="moving-average span (default 9)")
    p.add_argument("--ma-mode", choices=("centered", "causal"),
                   default="centered")
    p.add_argument("--wavelet", default="coif5",
                   help="wavelet name, e.g. coif5, db4, sym8")
    p.add_argument("--levels", default="auto",
                   help="decomposition depth: 'auto' or an integer")
    p.add_argument("--emd-theta1", type=float, default=0.05)
    p.add_argument("--emd-theta2", type=float, default=0.5)
    p.add_argument("--emd-alpha", type=float, default=0.05)
    p.add_argument("--max-siftings", type=int, default=1000)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.levels == "auto":
            levels = None
        else:
            levels = int(args.levels)
            if levels < 1:
                raise ConfigurationError("--levels must be >= 1 or 'auto'")
        cfg = PipelineConfig(
            method=args.method,
            input_path=args.input,
            mapping=parse_mapping_file(args.mapping),
            out_dir=args.out,
            report_path=args.report,
            plot=args.plot,
            gap_threshold=args.gap_threshold,
            min_segment_len=args.min_segment,
            span=args.span,
            ma_mode=args.ma_mode,
            wavelet=args.wavelet,
            levels=levels,
            emd_theta1=args.emd_theta1,
            emd_theta2=args.emd_theta2,
            emd_alpha=args.emd_alpha,
            max_siftings=args.max_siftings,
        )
        manifest = run_pipeline(cfg)
    except ValueError as exc:
        print(f"denoise: error: {exc}", file=sys.stderr)
        return 2
    except (ConfigurationError, IngestionError, RemsDenoiseError) as exc:
        print(f"denoise: error: {exc}", file=sys.stderr)
        return 2
    processed = sum(1 for o in manifest.outcomes if o["status"] == "processed")
    skipped = len(manifest.outcomes) - processed
    print(f"denoise: {processed} segment(s) processed, {skipped} skipped/failed; "
          f"{manifest.dropped_rows} row(s) dropped; outputs in {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
