from pathlib import Path
from typing import Sequence

import numpy as np

from bnsim.models import Cpt, Estimate, ExactResult, Network, RunStats, binary_variable

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

IDENTITY = ((1.0, 0.0), (0.0, 1.0))


def make_chain(
    n: int, root: Sequence[float], link=IDENTITY, leaf=IDENTITY, name: str = "chain"
) -> Network:
    """X0 -> X1 -> ... -> X{n-1} 的二值链"""
    ids = [f"X{i}" for i in range(n)]
    cpts = {ids[0]: Cpt(parents=(), rows=(tuple(root),))}
    for i in range(1, n):
        rows = leaf if i == n - 1 else link
        cpts[ids[i]] = Cpt(parents=(ids[i - 1],), rows=tuple(tuple(r) for r in rows))
    return Network.build([binary_variable(i) for i in ids], cpts, name=name)


def exact_estimate(truth: ExactResult, algorithm: str = "exact") -> Estimate:
    return Estimate(
        algorithm=algorithm,
        tallies={n: np.array(p, dtype=float) for n, p in truth.posterior.items()},
        total_weight=1.0,
        trials_run=1,
    )


def stats_with_error(trials: int, error: float) -> RunStats:
    return RunStats(
        algorithm="lw",
        trials_per_run=trials,
        runs=1,
        mean_error=error,
        error_spread=0.0,
        mean_time_per_trial=0.0,
        per_run_errors=[error],
    )
