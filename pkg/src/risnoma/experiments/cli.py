"""Command-line entry point.

Verbs: ``point``, ``sweep``, ``fig2``, ``fig3``, ``fig4``, ``validate``.
Exit codes: 0 success, 1 configuration error, 2 runtime or quadrature
error, 3 validation report has flagged points.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from risnoma.analytic import QuadratureError
from risnoma.channel import SecondMomentMode
from risnoma.experiments import presets
from risnoma.experiments.config import ConfigError, load_config
from risnoma.experiments.output import emit_csv, format_csv
from risnoma.experiments.report import validate_report
from risnoma.experiments.runner import override, run_configs

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_VALIDATION = 0, 1, 2, 3

log = logging.getLogger("risnoma")


def _common(suppress: bool) -> argparse.ArgumentParser:
    # Subcommand copies must not reset flags given before the verb.
    d = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", default=d, help="flat key = value configuration file")
    p.add_argument("--seed", type=int, default=d, help="master seed (unsigned 64-bit)")
    p.add_argument("--trials", type=int, default=d, help="Monte-Carlo trials per point")
    p.add_argument("--mode", default=d, choices=[m.value for m in SecondMomentMode],
                   help="analytic evaluation mode")
    p.add_argument("--out", default=d, help="output path (default: stdout)")
    p.add_argument("--workers", type=int, default=d, help="worker processes for Monte-Carlo trials")
    p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS if suppress else False)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(prog="risnoma", description=__doc__.splitlines()[0],
                                     parents=[_common(suppress=False)])
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("point", parents=[common], help="analytic and MC BER at system.snr_db")
    sub.add_parser("sweep", parents=[common], help="sweep the configured variable")
    sub.add_parser("fig2", parents=[common], help="BER vs SNR, k=0.15, L=3, N in {16,32,64} + no RIS")
    sub.add_parser("fig3", parents=[common], help="fig2 analytically, plus ideal series")
    sub.add_parser("fig4", parents=[common], help="system BER vs altitude, NOMA vs TDMA")
    sub.add_parser("validate", parents=[common], help="analytic vs MC report on the fig2 set")
    return parser


def _configs(args):
    mode = SecondMomentMode(args.mode) if args.mode else None
    if args.verb in ("point", "sweep"):
        cfg = load_config(args.config)
        if args.verb == "point":
            cfg = replace(cfg, sweep_variable="snr", sweep_values=(cfg.snr_db,))
        return [override(cfg, mode=mode, trials=args.trials, seed=args.seed)], cfg
    cfg = load_config(args.config) if args.config else None
    kw = {}
    if cfg is not None:
        kw = dict(trials=cfg.trials, seed=cfg.seed)
    if args.trials is not None:
        kw["trials"] = args.trials
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.verb == "fig2":
        return presets.preset_fig2(mode or "paper", **kw), cfg
    if args.verb == "fig3":
        return presets.preset_fig3(mode or "paper", **kw), cfg
    if args.verb == "fig4":
        return presets.preset_fig4(mode or "paper", **kw), cfg
    return presets.preset_fig2(mode or "consistent", **kw), cfg


def _write(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        configs, base = _configs(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("config error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_CONFIG
    workers = args.workers or (base.workers if base is not None else 1)
    out = args.out or (base.output if base is not None else None)

    try:
        if args.verb == "validate":
            report = validate_report(configs, workers)
            _write(report.format(), out)
            return EXIT_OK if report.ok else EXIT_VALIDATION
        rows = run_configs(configs, workers)
        if not rows:
            raise RuntimeError("no result rows produced")
        if out:
            emit_csv(rows, out)
        else:
            sys.stdout.write(format_csv(rows))
    except (QuadratureError, RuntimeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
