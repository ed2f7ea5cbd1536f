"""Numerical checks of the identities and coverage guarantees behind the sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .confidence import NoiseSpec, oful_c_radius, semi_gamma, sncs_radius
from .environments import NoiseModel, make_sphere_instance
from .estimation import LevelState
from .linalg import PrecisionState
from .policies import LOFAV, LOSAN, PolicyConfig, num_levels


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.value:.6g} {self.detail}".rstrip()


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, key: str) -> Check:
        for c in self.checks:
            if c.name.startswith(key):
                return c
        raise KeyError(key)

    def format(self) -> str:
        return "\n".join(c.line() for c in self.checks)


def _random_trace(rng, d, n):
    xs = rng.standard_normal((n, d))
    xs *= (rng.uniform(0, 1, size=(n, 1)) / np.linalg.norm(xs, axis=1, keepdims=True))
    theta = rng.standard_normal(d)
    ys = xs @ theta + rng.standard_normal(n)
    return xs, ys


def regret_equality_residual(xs, ys, rho, lam, probe) -> float:
    """Relative residual of the FTRL regret equality on one weighted trace."""
    level = LevelState(rho, lam, xs.shape[1])
    lhs = 0.0
    d_terms = 0.0
    for x, y in zip(xs, ys):
        w = float(level.compute_weight(x))
        d_sq, loss = level.observe(x, y)
        lhs += float(loss) - 0.5 * w * w * (x @ probe - y) ** 2
        d_terms += float(loss * d_sq)
    diff = probe - level.theta_hat
    neg = 0.5 * diff @ level.sigma.matrix @ diff
    rhs = 0.5 * lam * probe @ probe + d_terms - neg
    scale = max(1.0, abs(lhs), 0.5 * lam * probe @ probe, d_terms, neg)
    return abs(lhs - rhs) / scale


def check_regret_equality(rng, traces=100, n=100) -> Check:
    worst = 0.0
    for _ in range(traces):
        d = int(rng.integers(2, 6))
        xs, ys = _random_trace(rng, d, n)
        rho = float(rng.choice([1.0, 0.5, 0.125]))
        lam = float(rng.uniform(0.05, 2.0))
        worst = max(worst, regret_equality_residual(xs, ys, rho, lam, rng.standard_normal(d)))
    return Check("(a) regret equality max relative residual", worst <= 1e-6, worst)


def check_elliptical_potential(rng, traces=50, n=200) -> Check:
    worst_slack = np.inf
    for _ in range(traces):
        d = int(rng.integers(2, 6))
        xs, ys = _random_trace(rng, d, n)
        lam = float(rng.uniform(0.05, 2.0))
        level = LevelState(float(rng.choice([1.0, 0.25])), lam, d)
        total = 0.0
        x_max = 0.0
        for x, y in zip(xs, ys):
            w = float(level.compute_weight(x))
            x_max = max(x_max, w * np.linalg.norm(x))
            d_sq, _ = level.observe(x, y)
            total += float(d_sq)
        ratio = float(level.sigma.logdet) - d * math.log(lam)
        cap = d * math.log(1 + x_max**2 * n / (d * lam))
        worst_slack = min(worst_slack, ratio - total, cap - ratio)
    return Check("(b) elliptical potential chain min slack", worst_slack >= -1e-9, worst_slack)


def epc_count(xs, lam, threshold_sq) -> int:
    gram = PrecisionState(lam, xs.shape[1])
    count = 0
    for x in xs:
        if gram.mahalanobis_sq(x) >= threshold_sq:
            count += 1
        gram.rank_one_update(x, 1.0)
    return count


def epc_bound(d, threshold_sq, x_max, lam) -> float:
    return 3.0 * d / threshold_sq * math.log(1 + 2 * x_max**2 / (threshold_sq * lam))


def check_elliptical_count(rng, n=2000) -> Check:
    worst = -np.inf
    for d in (2, 5, 10):
        unit = rng.standard_normal((4, d))
        unit /= np.linalg.norm(unit, axis=1, keepdims=True)
        sequences = [
            np.repeat(unit[:1], n, axis=0),          # one arm forever
            np.tile(unit, (n // 4, 1)),               # cycling through a few arms
            _random_trace(rng, d, n)[0],
        ]
        for lam in (0.01, 0.1, 1.0):
            for xs in sequences:
                x_max = float(np.linalg.norm(xs, axis=1).max())
                for thr in (0.05, 0.1, 0.25, 0.5, 1.0):
                    worst = max(worst, epc_count(xs, lam, thr) / epc_bound(d, thr, x_max, lam))
    return Check("(c) elliptical potential count max count/bound", worst <= 1.0, worst)


def secondary_oracle(xs, ys, rho, lam):
    """Re-derive theta_bar from scratch with dense solves at every step."""
    d = xs.shape[1]
    gram = lam * np.eye(d)
    b = np.zeros(d)
    hess = lam * np.eye(d)
    lin = np.zeros(d)
    for x, y in zip(xs, ys):
        theta_prev = np.linalg.solve(gram, b)
        quad = x @ np.linalg.solve(gram, x)
        w2 = 1.0 if quad == 0 else min(1.0, rho / math.sqrt(quad)) ** 2
        gram += w2 * np.outer(x, x)
        b += w2 * y * x
        hess += 2 * w2 * np.outer(x, x)
        lin += w2 * y * x + w2 * (x @ theta_prev) * x
    return np.linalg.solve(hess, lin)


def check_secondary(rng, traces=50, n=50) -> Check:
    worst = 0.0
    for _ in range(traces):
        d = int(rng.integers(2, 6))
        xs, ys = _random_trace(rng, d, n)
        rho = float(rng.choice([1.0, 0.5, 0.125]))
        lam = float(rng.uniform(0.01, 1.0))
        level = LevelState(rho, lam, d)
        for x, y in zip(xs, ys):
            level.observe(x, y)
        oracle = secondary_oracle(xs, ys, rho, lam)
        worst = max(worst, np.abs(level.secondary_estimate() - oracle).max() / (1 + np.abs(oracle).max()))
    return Check("(d) secondary estimate vs dense minimizer", worst <= 1e-6, worst)


def check_dsq(rng, traces=20, n=300) -> Check:
    worst = -np.inf
    for _ in range(traces):
        d = int(rng.integers(1, 6))
        xs, ys = _random_trace(rng, d, n)
        rho = 2.0 ** -np.arange(0, 6)
        level = LevelState(rho, rho**2 * float(rng.uniform(0.01, 3.0)), d)
        cap = rho**2 / (1 + rho**2)
        for x, y in zip(xs, ys):
            d_sq, _ = level.observe(x, y)
            worst = max(worst, float(np.max(d_sq - cap)))
    return Check("(f) D^2 <= rho^2/(1+rho^2) <= 1/2, max excess", worst <= 1e-12, worst)


def check_radius_dominance(rng, count=10_000) -> Check:
    worst = -np.inf
    for _ in range(count):
        d = int(rng.integers(1, 50))
        lam = float(10 ** rng.uniform(-3, 2))
        spec = NoiseSpec(S=float(10 ** rng.uniform(-2, 2)), sigma0_sq=float(10 ** rng.uniform(-3, 1)),
                         delta=float(rng.uniform(1e-4, 0.999)))
        logdet = d * math.log(lam) + float(rng.uniform(0, 100))
        worst = max(worst, oful_c_radius(logdet, spec, lam, d) - sncs_radius(logdet, spec, lam, d))
    return Check("(g) OFUL-C radius - SNCS radius, max", worst <= 1e-12, worst)


def semi_coverage(seed, n=2000, d=3, delta=0.1) -> bool:
    """True if the semi-adaptive set holds theta* at every step of one LOSAN trace."""
    inst = make_sphere_instance(d, 1.0, 20, seed, NoiseModel("gaussian", 1.0))
    spec = NoiseSpec(S=1.0, sigma0_sq=1.0, delta=delta)
    policy = LOSAN(PolicyConfig("LOSAN", spec, d))
    rng = np.random.Generator(np.random.Philox(key=[seed, 1]))
    eta = inst.noise.sample(rng, size=n)
    for t in range(n):
        i, _ = policy.select_arm(inst.arms)
        policy.update(inst.arms[i], inst.means[i] + eta[t])
        diff = policy.level.theta_hat - inst.theta_star
        if 0.5 * diff @ policy.level.sigma.matrix @ diff > semi_gamma(policy.level, spec):
            return False
    return True


def full_coverage(seed, n=2000, d=3, delta=0.1):
    """(fully adaptive sets hold, extra practical sets hold) along one LOFAV trace."""
    inst = make_sphere_instance(d, 1.0, 20, seed, NoiseModel("two_point", 1.0))
    spec = NoiseSpec(S=1.0, R=1.0, delta=delta)
    policy = LOFAV(PolicyConfig("LOFAV", spec, d, horizon=n))
    rng = np.random.Generator(np.random.Philox(key=[seed, 1]))
    eta = inst.noise.sample(rng, size=n)
    full_ok = extra_ok = True
    for t in range(n):
        i, _ = policy.select_arm(inst.arms)
        policy.update(inst.arms[i], inst.means[i] + eta[t])
        lv = policy.levels
        diff = policy.theta_bar - inst.theta_star
        lhs = 0.5 * np.einsum("li,lij,lj->l", diff, lv.sigma_bar.matrix, diff)
        full_ok &= bool(np.all(lhs <= policy.width.beta))
        diff = lv.theta_hat - inst.theta_star
        lhs = 0.5 * np.einsum("li,lij,lj->l", diff, lv.sigma.matrix, diff)
        extra_ok &= bool(np.all(lhs <= policy.gamma))
        if not (full_ok or extra_ok):
            break
    return full_ok, extra_ok


def check_coverage(seed, traces=500, n=2000, d=3, delta=0.1):
    semi = np.mean([semi_coverage(seed + k, n, d, delta) for k in range(traces)])
    full = np.array([full_coverage(seed + k, n, d, delta) for k in range(traces)])
    info = f"({traces} traces, d={d}, n={n}, delta={delta}, L={num_levels(n, d)})"
    return [
        Check("(e1) semi-adaptive all-time coverage", semi >= 0.85, float(semi), info),
        Check("(e2) fully adaptive all-time coverage", full[:, 0].mean() >= 0.85, float(full[:, 0].mean()), info),
        Check("(e3) practical extra sets all-time coverage", full[:, 1].mean() >= 0.85,
              float(full[:, 1].mean()), info),
    ]


def verify_suite(seed: int = 0, coverage_traces: int = 500, coverage_horizon: int = 2000) -> VerifyReport:
    rng = np.random.Generator(np.random.Philox(key=[seed, 3]))
    report = VerifyReport()
    report.checks.append(check_regret_equality(rng))
    report.checks.append(check_elliptical_potential(rng))
    report.checks.append(check_elliptical_count(rng))
    report.checks.append(check_secondary(rng))
    if coverage_traces > 0:
        report.checks.extend(check_coverage(seed, coverage_traces, coverage_horizon))
    report.checks.append(check_dsq(rng))
    report.checks.append(check_radius_dominance(rng))
    return report
