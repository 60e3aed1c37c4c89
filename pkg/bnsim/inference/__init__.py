"""推理模块。

包含穷举精确推理、图变换与四种随机模拟算法。
"""

from .oracle import exact_inference, joint_table, default_state_cap
from .transform import (
    reverse_arc,
    reverse_arc_step,
    replay_plan,
    integrate_evidence,
    condition_network,
    evidence_likelihood,
    likelihood_spread,
)
from .rng import RandomStream, derive_seed
from .sampling import draw_category, forward_sample, trial_weight
from .logic import run_logic_sampling
from .weighting import run_likelihood_weighting, run_lw_integrated
from .gibbs import markov_blanket_distribution, run_gibbs

__all__ = [
    "exact_inference",
    "joint_table",
    "default_state_cap",
    "reverse_arc",
    "reverse_arc_step",
    "replay_plan",
    "integrate_evidence",
    "condition_network",
    "evidence_likelihood",
    "likelihood_spread",
    "RandomStream",
    "derive_seed",
    "draw_category",
    "forward_sample",
    "trial_weight",
    "run_logic_sampling",
    "run_likelihood_weighting",
    "run_lw_integrated",
    "markov_blanket_distribution",
    "run_gibbs",
]
