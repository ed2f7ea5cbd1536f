"""Command line entry point: ``python -m adaptive_bandits <command>``.

Exit status is 0 on success, 1 on a configuration error and 2 when the
verification suite reports a failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from .harness import ConfigError, ExperimentConfig, build_instance, run_experiment
from .presets import PRESETS, repro
from .verify import verify_suite


def _run(args) -> int:
    config = ExperimentConfig.load(args.config)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    out = args.out or config.out or "results"
    _, stats = run_experiment(config, out=out, workers=args.workers, raw=args.raw)
    for name in stats.stats:
        mean, se = stats.final(name)
        print(f"{config.name}: {name} cum_regret at t={config.horizon}: {mean:.6g} +- {se:.3g}")
    print(f"wrote {out}/{config.name}.csv")
    return 0


def _repro(args) -> int:
    report = repro(args.preset, trials=args.trials, out=args.out, horizon=args.horizon,
                   workers=args.workers)
    print(report.summary)
    return 0


def _verify(args) -> int:
    report = verify_suite(seed=args.seed, coverage_traces=args.traces)
    print(report.format())
    return 0 if report.passed else 2


def _dump(args) -> int:
    config = ExperimentConfig.load(args.config)
    text = json.dumps(build_instance(config, args.trial).to_dict(), indent=1)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adaptive_bandits",
                                     description="Noise-adaptive linear bandit simulator")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment from a TOML config")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--raw", action="store_true", help="also write per-step trial logs")
    p.set_defaults(func=_run)

    p = sub.add_parser("repro", help="reproduce a figure preset")
    p.add_argument("preset", choices=PRESETS)
    p.add_argument("--trials", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--out", default="results")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_repro)

    p = sub.add_parser("verify", help="run the numerical verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--traces", type=int, default=500, help="Monte Carlo coverage traces")
    p.set_defaults(func=_verify)

    p = sub.add_parser("dump-instance", help="print the instance of one trial as JSON")
    p.add_argument("--config", required=True)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_dump)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
