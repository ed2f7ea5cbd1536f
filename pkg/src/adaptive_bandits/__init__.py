"""Noise-adaptive confidence sets and optimistic linear bandits.

LOSAN adapts its confidence width to the true sub-Gaussian noise level;
LOFAV adapts to the realized variances of bounded noise. OFUL and OFUL-C are
included as baselines, together with synthetic and random-Fourier-feature
benchmark environments and a seeded experiment harness.
"""

from .bo import BENCHMARKS, RffConfig, benchmark_eval, make_bo_instance, rff_map
from .confidence import (
    NoiseSpec,
    WidthState,
    full_beta,
    k_index,
    oful_c_radius,
    practical_gamma_level,
    semi_gamma,
    sncs_radius,
    ucb,
    xi_value,
)
from .environments import (
    Instance,
    InstanceError,
    NoiseModel,
    make_easy_sphere_instance,
    make_hard_gap_instance,
    make_sphere_instance,
    sample_noise,
)
from .estimation import LevelParams, LevelState
from .harness import (
    AggregateStats,
    ConfigError,
    ExperimentConfig,
    PolicyRecipe,
    TrialError,
    aggregate,
    run_experiment,
    run_trial,
    run_trials,
    write_csv,
)
from .linalg import PrecisionState, init_precision
from .policies import (
    LOFAV,
    LOSAN,
    OFUL,
    OFULC,
    PolicyConfig,
    anytime_schedule,
    make_policy,
    num_levels,
)

__version__ = "0.1.0"
