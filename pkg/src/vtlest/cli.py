"""Command-line front end.

Subcommands mirror the library's workflow stages::

    vtlest synth     --out corpus/ [--pair-demo]        make a synthetic corpus
    vtlest analyze   in.wav --rep Ep_SSI --out spec.csv one spectrum as CSV
    vtlest estimate  manifest.csv --rep Ep_SSI --out d/ lengths + shift matrices
    vtlest evaluate  --manifest m.csv --out d/          accuracy report + trials
    vtlest sweep     --manifest m.csv --out d/          taper-knee sweep table

Every numeric output is written at full precision; all writes are atomic.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileio, synth
from .errors import ConfigurationError, VtlestError
from .evaluate import EvalConfig, report_from_estimation, run_evaluation, run_sweep
from .pipeline import AnalysisParams, analyze_wav, load_corpus, parse_representation

DEFAULT_VOWELS = "a,i,u,e,o"


def _parse_f0(value: str):
    """``auto`` -> None, a number -> fixed override, anything else -> CSV path."""
    if value == "auto":
        return None
    try:
        return float(value)
    except ValueError:
        return fileio.read_f0_csv(value)


def _parse_speakers(value: str):
    """Speaker list like ``182:1.0667,101:0.8649`` into (f0, alpha) pairs."""
    pairs = []
    for item in value.split(","):
        f0_s, sep, alpha_s = item.partition(":")
        if not sep:
            raise ConfigurationError(f"speaker {item!r} must look like F0:ALPHA")
        try:
            f0, alpha = float(f0_s), float(alpha_s)
        except ValueError:
            raise ConfigurationError(f"speaker {item!r}: f0 and alpha must be numbers")
        if alpha <= 0:
            raise ConfigurationError(f"speaker {item!r}: alpha must be positive, got {alpha}")
        pairs.append((f0, alpha))
    return pairs


def cmd_synth(args) -> int:
    if args.pair_demo:
        speakers = synth.pair_demo_speakers()
        vowels = args.vowels.split(",") if args.vowels else ["a"]
    else:
        speakers = _parse_speakers(args.speakers) if args.speakers else synth.default_speakers()
        vowels = (args.vowels or DEFAULT_VOWELS).split(",")
    records = synth.make_corpus(speakers, vowels, args.out, duration=args.duration, fs=args.fs)
    print(f"wrote {len(records)} utterances and manifest.csv to {args.out}")
    return 0


def cmd_analyze(args) -> int:
    f0 = _parse_f0(args.f0)
    if isinstance(f0, dict):
        raise ConfigurationError("analyze takes --f0 auto or a number, not a CSV file")
    spectrum = analyze_wav(args.wav, args.rep, AnalysisParams(), args.hmax, f0)
    fileio.write_spectrum_csv(args.out, spectrum)
    print(f"wrote {spectrum.axis.channels}-channel {args.rep} spectrum to {args.out}")
    return 0


def cmd_estimate(args) -> int:
    corpus = load_corpus(args.manifest, f0_overrides=_parse_f0(args.f0),
                         external_dir=args.external_dir)
    rep = parse_representation(args.rep)
    result = corpus.estimate(rep, args.hmax)
    out = Path(args.out)
    fileio.write_csv(
        out / "estimates.csv",
        ["speaker_id", "vowel", "S_channels", "L_est_cm", "L_meas_cm"],
        [[r.speaker_id, r.vowel, r.shift, r.l_est_cm, r.l_meas_cm] for r in result.rows],
    )
    for vowel in corpus.vowels:
        matrix = corpus.shift_matrix(vowel, rep, result.h_max)
        fileio.write_csv(out / f"shifts_{vowel}.csv", None, matrix.values.tolist())
    report = report_from_estimation(result)
    print(
        f"{result.representation_id}: n={report.n_points} q={result.q:.6g} "
        f"r_all={report.all_r:.4f} rms={report.rms_cm:.4g} cm -> {out}/estimates.csv"
    )
    return 0


def _config_from_args(args) -> EvalConfig:
    if args.config:
        config = EvalConfig.from_json(args.config)
    elif args.manifest:
        config = EvalConfig(manifest=args.manifest)
    else:
        raise ConfigurationError("provide --config or --manifest")
    if args.manifest:
        config.manifest = args.manifest
    if args.rep:
        config.representations = tuple(args.rep.split(","))
    if args.hmax is not None:
        config.h_max = args.hmax
    if args.seed is not None:
        config.seed = args.seed
    if args.trials is not None:
        config.trials = args.trials
    if args.exclude is not None:
        config.exclude = args.exclude
    if args.f0 is not None:
        try:
            config.f0 = float(args.f0)
        except ValueError:
            config.f0 = args.f0  # "auto" or an overrides CSV path
    if args.out:
        config.out_dir = args.out
    if args.external_dir:
        config.external_dir = args.external_dir
    Path(config.out_dir).mkdir(parents=True, exist_ok=True)
    return config


def cmd_evaluate(args) -> int:
    config = _config_from_args(args)
    reports = run_evaluation(config)
    for rep in reports:
        print(
            f"{rep.representation_id}: r_all={rep.all_r:.4f} rms={rep.rms_cm:.4g} cm "
            f"(n={rep.n_points}, h_max={rep.h_max:g})"
        )
    print(f"wrote report.csv, scatter.csv{', trials.csv' if config.trials else ''} to {config.out_dir}")
    return 0


def cmd_sweep(args) -> int:
    config = _config_from_args(args)
    reports = run_sweep(config)
    print(f"wrote sweep.csv with {len(reports)} rows to {config.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vtlest",
        description="Vocal tract length estimation from vowel sounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a ground-truth vowel corpus")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--pair-demo", action="store_true",
                   help="two-speaker corpus: 15.0 cm at 182 Hz vs 18.5 cm at 101 Hz")
    p.add_argument("--speakers", help="custom ladder as F0:ALPHA,F0:ALPHA,...")
    p.add_argument("--vowels", help=f"comma-separated vowels (default {DEFAULT_VOWELS})")
    p.add_argument("--duration", type=float, default=0.5, help="utterance length in s")
    p.add_argument("--fs", type=float, default=48000.0, help="sample rate in Hz")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("analyze", help="write one representation spectrum as CSV")
    p.add_argument("wav", help="input WAV file (mono)")
    p.add_argument("--rep", default="Ep_SSI", help="representation id (default Ep_SSI)")
    p.add_argument("--hmax", type=float, default=None, help="weight taper knee (default 3.5)")
    p.add_argument("--f0", default="auto", help="'auto' or a fixed pitch in Hz")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("estimate", help="estimate lengths for a corpus manifest")
    p.add_argument("manifest", help="corpus manifest CSV")
    p.add_argument("--rep", default="Ep_SSI", help="representation id (default Ep_SSI)")
    p.add_argument("--hmax", type=float, default=None)
    p.add_argument("--f0", default="auto", help="'auto', a fixed Hz value, or an overrides CSV")
    p.add_argument("--external-dir", dest="external_dir", default=None,
                   help="directory of external spectrogram CSVs for W representations")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_estimate)

    for name, func, extra_help in (
        ("evaluate", cmd_evaluate, "accuracy report plus random-exclusion trials"),
        ("sweep", cmd_sweep, "evaluate across a grid of weight taper knees"),
    ):
        p = sub.add_parser(name, help=extra_help)
        p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--manifest", help="corpus manifest CSV (overrides config)")
        p.add_argument("--rep", help="comma-separated representation ids")
        p.add_argument("--hmax", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--exclude", type=int, default=None)
        p.add_argument("--f0", default=None)
        p.add_argument("--external-dir", dest="external_dir", default=None,
                       help="directory of external spectrogram CSVs for W representations")
        p.add_argument("--out", help="output directory")
        p.set_defaults(func=func)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VtlestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
