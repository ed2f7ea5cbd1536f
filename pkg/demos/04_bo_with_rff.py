"""
Black-box optimization through random Fourier features
======================================================

A pool of 512 points from the Branin domain is lifted to 128 random
features. The mean reward of a point is -f rescaled into [-1, 1], and we
track simple regret: the best instantaneous regret seen so far.
"""

import numpy as np

from adaptive_bandits import NoiseModel, NoiseSpec, PolicyConfig, benchmark_eval, make_bo_instance
from adaptive_bandits.policies import make_policy

inst = make_bo_instance("branin", 512, seed=0, noise=NoiseModel("two_point", 0.01))
points = np.array(inst.info["points"])
print(f"bandwidth (median heuristic): {inst.info['bandwidth']:.3f}")
print(f"best pool point {points[inst.best_index]} with f = {benchmark_eval('branin', points[inst.best_index]):.4f}")

eta = inst.noise.sample(np.random.Generator(np.random.Philox(key=[0, 1])), size=300)
for kind in ("LOFAV", "OFUL"):
    policy = make_policy(PolicyConfig(kind, NoiseSpec(), inst.dim, horizon=300))
    simple = np.inf
    for t in range(300):
        i, _ = policy.select_arm(inst.arms)
        policy.update(inst.arms[i], inst.means[i] + eta[t])
        simple = min(simple, inst.gaps[i])
    print(f"{kind:6s} simple regret after 300 steps: {simple:.4f}  (last f = "
          f"{benchmark_eval('branin', points[i]):.3f})")
