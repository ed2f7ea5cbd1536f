"""Named experiment configurations reproducing the reference figures.

Unstated details are fixed here:

* ``delta = 0.1`` throughout.
* ``fig1`` uses two-point noise ``+-sqrt(0.1)`` with ``R = 1`` and pulls
  ``x = (1, 0)`` at every step. The reported bound is the UCB of that arm
  after ``n`` observations.
* ``bo_*`` runs 500 steps per benchmark.
* ``appendix_d_easy`` runs 3000 steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .bo import BENCHMARKS
from .confidence import NoiseSpec
from .harness import ExperimentConfig, PolicyRecipe, run_experiment

PRESETS = ("fig1", "fig2a", "fig2b", "bo_gaussian", "bo_bounded", "appendix_d_hard", "appendix_d_easy")


def _cfg(name, instance, policies, horizon, trials, learner, log_every=1):
    return ExperimentConfig(name=name, instance=instance, policies=policies, horizon=horizon,
                            trials=trials, seed=0, learner=learner, log_every=log_every)


def preset_configs(preset: str, trials: Optional[int] = None,
                   horizon: Optional[int] = None) -> list:
    """Experiment configurations behind a preset (BO presets yield one per benchmark)."""
    if preset == "fig1":
        n = horizon or 500_000
        # one extra step: the UCB logged at step n+1 is computed from n observations
        cfgs = [_cfg("fig1",
                     {"generator": "fixed", "theta_star": [1.0, 0.0], "arms": [[1.0, 0.0]],
                      "noise": {"kind": "two_point", "scale": math.sqrt(0.1)}},
                     [PolicyRecipe("LOFAV", levels=9), PolicyRecipe("LOFAV", "LOFAV_plain", mode="plain", levels=9),
                      PolicyRecipe("OFUL", "SNCS")],
                     n + 1, 1, NoiseSpec(S=1.0, sigma0_sq=1.0, R=1.0, delta=0.1),
                     log_every=max(1, (n + 1) // 1000))]
    elif preset in ("fig2a", "fig2b"):
        gaussian = preset == "fig2a"
        cfgs = [_cfg(preset,
                     {"generator": "sphere", "d": 32, "S": 1.0, "num_arms": 128,
                      "noise": {"kind": "gaussian" if gaussian else "two_point", "scale": 0.01}},
                     [PolicyRecipe("LOSAN" if gaussian else "LOFAV"), PolicyRecipe("OFUL")],
                     horizon or 2000, trials or 50, NoiseSpec(S=1.0, sigma0_sq=1.0, R=1.0, delta=0.1))]
    elif preset in ("bo_gaussian", "bo_bounded"):
        gaussian = preset == "bo_gaussian"
        cfgs = [_cfg(f"{preset}_{name}",
                     {"generator": "bo", "benchmark": name, "num_arms": 512, "feature_dim": 128,
                      "noise": {"kind": "gaussian" if gaussian else "two_point", "scale": 0.01}},
                     [PolicyRecipe("LOSAN" if gaussian else "LOFAV"), PolicyRecipe("OFUL")],
                     horizon or 500, trials or 50, NoiseSpec(S=1.0, sigma0_sq=1.0, R=1.0, delta=0.1))
                for name in BENCHMARKS]
    elif preset == "appendix_d_hard":
        n = horizon or 50_000
        lam = 10.0
        cfgs = [_cfg(preset,
                     {"generator": "hard_gap", "d": 20, "n": n, "sigma0": 1.0, "S": 1.0,
                      "num_arms": 400, "noise": {"kind": "gaussian", "scale": 0.1}},
                     [PolicyRecipe("LOSAN", lam=lam), PolicyRecipe("OFUL_C", lam=lam),
                      PolicyRecipe("OFUL", lam=lam)],
                     n, trials or 20, NoiseSpec(S=1.0, sigma0_sq=1.0, delta=0.1),
                     log_every=max(1, n // 1000))]
    elif preset == "appendix_d_easy":
        S = 15.0
        lam = 10.0 / S**2
        cfgs = [_cfg(preset,
                     {"generator": "easy_sphere", "noise": {"kind": "gaussian", "scale": 1.0}},
                     [PolicyRecipe("LOSAN", lam=lam), PolicyRecipe("OFUL_C", lam=lam),
                      PolicyRecipe("OFUL", lam=lam)],
                     horizon or 3000, trials or 20, NoiseSpec(S=S, sigma0_sq=1.0, delta=0.1))]
    else:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")
    if trials is not None and preset == "fig1":
        cfgs = [replace(c, trials=trials) for c in cfgs]
    return cfgs


@dataclass
class PresetReport:
    preset: str
    stats: dict
    summary: str


def _regret_line(name, stats, metric) -> str:
    n = stats.horizon
    parts = [f"{p}={stats.final(p, metric)[0]:.4g}+-{stats.final(p, metric)[1]:.2g}"
             for p in stats.stats]
    return f"{name}: {metric} at t={n}: " + ", ".join(parts)


def repro(preset: str, trials: Optional[int] = None, out=None, horizon: Optional[int] = None,
          workers: int = 1) -> PresetReport:
    """Run a preset, write its CSVs under ``out`` and return a one-line summary."""
    all_stats = {}
    lines = []
    for cfg in preset_configs(preset, trials, horizon):
        _, stats = run_experiment(cfg, out=out and Path(out), workers=workers)
        all_stats[cfg.name] = stats
        if preset == "fig1":
            vals = {p: stats.final(p, "max_ucb")[0] for p in stats.stats}
            lines.append("fig1: UCB at x=(1,0) after {} steps: ".format(stats.horizon - 1)
                         + ", ".join(f"{p}={v:.4f}" for p, v in vals.items()))
        elif preset.startswith("bo_"):
            lines.append(_regret_line(cfg.name, stats, "simple_regret"))
        else:
            lines.append(_regret_line(cfg.name, stats, "cum_regret"))
    return PresetReport(preset=preset, stats=all_stats, summary="; ".join(lines))
