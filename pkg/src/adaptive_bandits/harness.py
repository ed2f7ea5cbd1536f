"""Seeded experiment runner: trials, aggregation and CSV output.

Randomness is drawn from numpy's Philox counter-based generator. A trial with
seed ``s`` uses key ``(s, 0)`` for the instance and key ``(s, 1)`` for the
reward noise; the noise sequence is drawn once per trial and shared by every
policy (common random numbers), so ``eta_t`` depends only on ``(trial, t)``.
"""

from __future__ import annotations

import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .bo import make_bo_instance
from .confidence import NoiseSpec
from .environments import (
    Instance,
    NoiseModel,
    make_easy_sphere_instance,
    make_hard_gap_instance,
    make_sphere_instance,
)
from .policies import KINDS, PolicyConfig, make_policy

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger(__name__)

METRICS = ("cum_regret", "simple_regret", "max_ucb")
RAW_HEADER = ["trial", "t", "policy", "arm", "reward", "inst_regret", "cum_regret",
              "simple_regret", "max_ucb"]
AGG_HEADER = ["t", "policy", "metric", "mean", "stderr"]


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class TrialError(RuntimeError):
    """A trial aborted; the message names trial, policy and step."""


@dataclass(frozen=True)
class PolicyRecipe:
    kind: str
    label: Optional[str] = None
    lam: Optional[float] = None
    mode: str = "practical"
    levels: Optional[int] = None

    @property
    def name(self) -> str:
        return self.label or self.kind


@dataclass
class ExperimentConfig:
    name: str
    instance: dict
    policies: list
    horizon: int
    trials: int = 1
    seed: int = 0
    learner: NoiseSpec = field(default_factory=NoiseSpec)
    out: Optional[str] = None
    log_every: int = 1

    def __post_init__(self):
        if self.trials < 1 or self.horizon < 1:
            raise ConfigError("trials and horizon must be positive")
        if not self.policies:
            raise ConfigError("at least one policy is required")
        names = [p.name for p in self.policies]
        if len(set(names)) != len(names):
            raise ConfigError(f"policy labels must be unique: {names}")
        for p in self.policies:
            if p.kind not in KINDS:
                raise ConfigError(f"unknown policy kind {p.kind!r}")
        if self.instance.get("generator") not in GENERATORS:
            raise ConfigError(f"unknown instance generator {self.instance.get('generator')!r}; "
                              f"expected one of {sorted(GENERATORS)}")

    def trial_seed(self, trial_index: int) -> int:
        return self.seed + trial_index

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        try:
            learner = NoiseSpec(**data.get("learner", {}))
            policies = [PolicyRecipe(kind=p["kind"], label=p.get("label"), lam=p.get("lambda"),
                                     mode=p.get("mode", "practical"), levels=p.get("levels"))
                        for p in data["policies"]]
            return cls(name=data.get("name", "experiment"), instance=dict(data["instance"]),
                       policies=policies, horizon=int(data["horizon"]),
                       trials=int(data.get("trials", 1)), seed=int(data.get("seed", 0)),
                       learner=learner, out=data.get("out"),
                       log_every=int(data.get("log_every", 1)))
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid config: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)


def _noise(recipe: dict) -> NoiseModel:
    return NoiseModel(**recipe.get("noise", {}))


def _fixed(recipe, seed):
    return Instance.linear(recipe["theta_star"], recipe["arms"], _noise(recipe), kind="fixed", seed=seed)


GENERATORS = {
    "sphere": lambda r, s: make_sphere_instance(r["d"], r.get("S", 1.0), r["num_arms"], s, _noise(r)),
    "hard_gap": lambda r, s: make_hard_gap_instance(r["d"], r["n"], r.get("sigma0", 1.0),
                                                    r.get("S", 1.0), r["num_arms"], s, _noise(r)),
    "easy_sphere": lambda r, s: make_easy_sphere_instance(s, _noise(r)),
    "bo": lambda r, s: make_bo_instance(r["benchmark"], r["num_arms"], s,
                                        r.get("feature_dim", 128), r.get("bandwidth"), _noise(r)),
    "fixed": _fixed,
}


def build_instance(config: ExperimentConfig, trial_index: int = 0) -> Instance:
    recipe = config.instance
    try:
        return GENERATORS[recipe["generator"]](recipe, config.trial_seed(trial_index))
    except KeyError as exc:
        raise ConfigError(f"instance recipe is missing {exc}") from exc


def policy_config(config: ExperimentConfig, recipe: PolicyRecipe, dim: int) -> PolicyConfig:
    return PolicyConfig(kind=recipe.kind, spec=config.learner, dim=dim, horizon=config.horizon,
                        lambda_override=recipe.lam, lofav_mode=recipe.mode, levels=recipe.levels)


@dataclass
class PolicyTrace:
    arm: np.ndarray
    reward: np.ndarray
    inst_regret: np.ndarray
    max_ucb: np.ndarray

    @property
    def cum_regret(self) -> np.ndarray:
        return np.cumsum(self.inst_regret)

    @property
    def simple_regret(self) -> np.ndarray:
        return np.minimum.accumulate(self.inst_regret)

    def metric(self, name: str) -> np.ndarray:
        return getattr(self, name)


@dataclass
class TrialResult:
    trial: int
    seed: int
    traces: dict

    @property
    def horizon(self) -> int:
        return len(next(iter(self.traces.values())).arm)


def run_policy(policy, instance: Instance, eta: np.ndarray) -> PolicyTrace:
    n = len(eta)
    arms, means = instance.arms, instance.means
    best = means.max()
    arm = np.empty(n, dtype=np.int64)
    reward = np.empty(n)
    max_ucb = np.empty(n)
    for t in range(n):
        i, u = policy.select_arm(arms)
        y = means[i] + eta[t]
        policy.update(arms[i], y)
        arm[t], reward[t], max_ucb[t] = i, y, u
    return PolicyTrace(arm=arm, reward=reward, inst_regret=best - means[arm], max_ucb=max_ucb)


def run_trial(config: ExperimentConfig, trial_index: int) -> TrialResult:
    seed = config.trial_seed(trial_index)
    instance = build_instance(config, trial_index)
    noise_rng = np.random.Generator(np.random.Philox(key=[seed, 1]))
    eta = np.asarray(instance.noise.sample(noise_rng, size=config.horizon), dtype=float)
    traces = {}
    for recipe in config.policies:
        try:
            policy = make_policy(policy_config(config, recipe, instance.dim))
            traces[recipe.name] = run_policy(policy, instance, eta)
        except Exception as exc:
            raise TrialError(f"trial {trial_index} (seed {seed}), policy {recipe.name}: {exc}") from exc
        log.debug("trial %d %s: regret %.4g", trial_index, recipe.name,
                  traces[recipe.name].cum_regret[-1])
    return TrialResult(trial=trial_index, seed=seed, traces=traces)


def run_trials(config: ExperimentConfig, workers: int = 1) -> list:
    """Run every trial; ``workers > 1`` parallelizes across trials only."""
    indices = range(config.trials)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(run_trial, [config] * config.trials, indices))
    return [run_trial(config, k) for k in indices]


@dataclass
class AggregateStats:
    """``stats[policy][metric] = (mean, stderr)``, each of shape ``(horizon,)``."""

    stats: dict
    trials: int

    def final(self, policy: str, metric: str = "cum_regret"):
        mean, se = self.stats[policy][metric]
        return float(mean[-1]), float(se[-1])

    @property
    def horizon(self) -> int:
        first = next(iter(self.stats.values()))
        return len(next(iter(first.values()))[0])


def aggregate(results, metrics=METRICS) -> AggregateStats:
    if not results:
        raise ValueError("no results to aggregate")
    horizons = {r.horizon for r in results}
    if len(horizons) != 1:
        raise ValueError(f"results have mismatched horizons {sorted(horizons)}")
    stats = {}
    for name in results[0].traces:
        stats[name] = {}
        for metric in metrics:
            values = np.stack([r.traces[name].metric(metric) for r in results])
            mean = values.mean(axis=0)
            if len(results) > 1:
                se = values.std(axis=0, ddof=1) / np.sqrt(len(results))
            else:
                se = np.zeros_like(mean)
            stats[name][metric] = (mean, se)
    return AggregateStats(stats=stats, trials=len(results))


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _steps(horizon: int, every: int):
    steps = list(range(every - 1, horizon, every))
    if not steps or steps[-1] != horizon - 1:
        steps.append(horizon - 1)
    return steps


def write_csv(data, path, every: int = 1) -> None:
    """Write aggregates (``AggregateStats``) or raw trial logs (list of ``TrialResult``).

    Rows are written for every ``every``-th step and always for the last step.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if isinstance(data, AggregateStats):
            writer.writerow(AGG_HEADER)
            if not data.stats:
                return
            for t in _steps(data.horizon, every):
                for name, metrics in data.stats.items():
                    for metric, (mean, se) in metrics.items():
                        writer.writerow([t + 1, name, metric, _fmt(mean[t]), _fmt(se[t])])
            return
        writer.writerow(RAW_HEADER)
        for result in data:
            for name, tr in result.traces.items():
                cum, simple = tr.cum_regret, tr.simple_regret
                for t in _steps(len(tr.arm), every):
                    writer.writerow([result.trial, t + 1, name, int(tr.arm[t]), _fmt(tr.reward[t]),
                                     _fmt(tr.inst_regret[t]), _fmt(cum[t]), _fmt(simple[t]),
                                     _fmt(tr.max_ucb[t])])


def run_experiment(config: ExperimentConfig, out=None, workers: int = 1, raw: bool = False):
    """Run all trials, aggregate, and write ``<out>/<name>.csv`` when an output directory is set."""
    results = run_trials(config, workers)
    stats = aggregate(results)
    out = out or config.out
    if out:
        write_csv(stats, Path(out) / f"{config.name}.csv", every=config.log_every)
        if raw:
            write_csv(results, Path(out) / f"{config.name}_raw.csv", every=config.log_every)
    return results, stats
