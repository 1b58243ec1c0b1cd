"""Batch command line: extract features, render spectrogram images, score trials.

Exit codes: 0 success, 1 any I/O or processing failure, 2 bad flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .audio import load_wav
from .featio import (
    parse_config_file,
    parse_score_file,
    read_feature_file,
    render_grayscale,
    write_feature_csv,
    write_feature_file,
    write_pgm,
)
from .metrics import det_curve, eer, min_dcf
from .pipeline import FEATURE_TYPES, PipelineConfig, extract

_EXTENSIONS = {"bin": ".feat", "csv": ".csv"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cepfront",
        description="Acoustic feature extraction and verification scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract features for WAV files")
    p_extract.add_argument("--feature", required=True, choices=FEATURE_TYPES)
    p_extract.add_argument(
        "--in", dest="input", required=True,
        help="a .wav file, or a text file listing one wav path per line",
    )
    p_extract.add_argument("--out-dir", required=True)
    p_extract.add_argument("--config", help="pipeline config file")
    p_extract.add_argument("--format", choices=("bin", "csv"), default="bin")
    p_extract.add_argument("--no-dct", action="store_true", help="keep mel channels, skip the DCT")
    p_extract.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_extract.set_defaults(func=cmd_extract)

    p_render = sub.add_parser("render", help="render a feature matrix as a PGM image")
    p_render.add_argument("--feature", required=True, choices=FEATURE_TYPES)
    p_render.add_argument("--in", dest="input", required=True, help="input wav")
    p_render.add_argument("--out", required=True, help="output PGM path")
    p_render.add_argument("--config", help="pipeline config file")
    p_render.set_defaults(func=cmd_render)

    p_eval = sub.add_parser("eval", help="score a trial file (EER and minDCF)")
    p_eval.add_argument("--scores", required=True)
    p_eval.add_argument("--p-tar", type=float, default=0.01)
    p_eval.add_argument("--c-miss", type=float, default=1.0)
    p_eval.add_argument("--c-fa", type=float, default=1.0)
    p_eval.add_argument("--det", help="also dump DET points to this CSV path")
    p_eval.set_defaults(func=cmd_eval)

    p_info = sub.add_parser("info", help="print the header of a feature file")
    p_info.add_argument("path")
    p_info.set_defaults(func=cmd_info)
    return parser


def _load_config(args) -> PipelineConfig:
    cfg = parse_config_file(args.config) if args.config else PipelineConfig()
    if getattr(args, "no_dct", False):
        cfg = dataclasses.replace(cfg, apply_dct=False)
    return cfg


def _manifest(input_path: str) -> list[Path]:
    path = Path(input_path)
    if path.suffix.lower() == ".wav":
        return [path]
    entries = []
    for line in path.read_text().splitlines():
        text = line.split("#", 1)[0].strip()
        if text:
            entries.append(Path(text))
    return entries


def _extract_job(job) -> None:
    in_path, out_path, feature, cfg, fmt = job
    features = extract(load_wav(in_path), feature, cfg)
    if fmt == "csv":
        write_feature_csv(out_path, features)
    else:
        write_feature_file(out_path, features)


def cmd_extract(args) -> int:
    try:
        cfg = _load_config(args)
        inputs = _manifest(args.input)
    except Exception as exc:  # noqa: BLE001 - reported on stderr with exit 1
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not inputs:
        print("error: empty input list", file=sys.stderr)
        return 1

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    extension = _EXTENSIONS[args.format]
    outputs = [out_dir / (p.stem + extension) for p in inputs]
    if len(set(outputs)) != len(outputs):
        print("error: duplicate output paths in manifest", file=sys.stderr)
        return 1

    jobs = [(str(i), str(o), args.feature, cfg, args.format) for i, o in zip(inputs, outputs)]
    failures: list[tuple[str, str]] = []
    if args.jobs <= 1:
        for job in jobs:
            try:
                _extract_job(job)
            except Exception as exc:  # noqa: BLE001
                failures.append((job[0], str(exc)))
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_extract_job, job) for job in jobs]
            for job, future in zip(jobs, futures):
                try:
                    future.result()
                except Exception as exc:  # noqa: BLE001
                    failures.append((job[0], str(exc)))
    for in_path, message in failures:
        print(f"error: {in_path}: {message}", file=sys.stderr)
    return 1 if failures else 0


def cmd_render(args) -> int:
    try:
        cfg = dataclasses.replace(_load_config(args), apply_dct=False)
        features = extract(load_wav(args.input), args.feature, cfg)
        write_pgm(args.out, render_grayscale(features.values))
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_eval(args) -> int:
    try:
        labels, scores = parse_score_file(args.scores)
        eer_value = eer(labels, scores)
        dcf_value = min_dcf(labels, scores, p_tar=args.p_tar, c_miss=args.c_miss, c_fa=args.c_fa)
        if args.det:
            curve = det_curve(labels, scores)
            with open(args.det, "w", encoding="ascii") as handle:
                handle.write("threshold,p_miss,p_fa\n")
                for row in zip(curve.thresholds, curve.p_miss, curve.p_fa):
                    handle.write("{:.12g},{:.12g},{:.12g}\n".format(*row))
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"EER(%) {100.0 * eer_value:.4f}")
    print(f"minDCF {dcf_value:.4f}")
    return 0


def cmd_info(args) -> int:
    try:
        features = read_feature_file(args.path)
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"feature {features.feature_type}")
    print(f"frames {features.num_frames}")
    print(f"coeffs {features.num_coeffs}")
    print(f"fingerprint {features.fingerprint:016x}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
