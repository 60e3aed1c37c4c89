"""实验规模的验收测试（pytest -m slow）。"""

import numpy as np
import pytest

from bnsim.harness import compare_report, convergence_slope, experiment, generate_extremal_network
from bnsim.inference import RandomStream, run_logic_sampling
from bnsim.utils.constants import Algorithm

pytestmark = pytest.mark.slow

SEED = 20240601
TRIALS_LIST = [100, 200, 500, 1000, 2000]


def test_lw_error_follows_inverse_square_root(cancer_net, cancer_evidence):
    report = compare_report(cancer_net, cancer_evidence, [Algorithm.LW], TRIALS_LIST, 100, SEED)
    sweep = report.sweep(Algorithm.LW)
    assert sweep.trials == TRIALS_LIST
    assert all(b < a for a, b in zip(sweep.errors, sweep.errors[1:]))
    assert -0.65 <= convergence_slope(sweep) <= -0.35
    # 离散度随试验数下降，允许相邻点有统计噪声
    spreads = sweep.spreads
    assert all(b < a * 1.15 for a, b in zip(spreads, spreads[1:]))
    assert spreads[-1] < spreads[0] / 2


def test_logic_acceptance_rate_matches_evidence_probability(cancer_net, cancer_evidence):
    estimate = run_logic_sampling(cancer_net, cancer_evidence, 10_000, RandomStream(SEED))
    assert estimate.trials_accepted / estimate.trials_run == pytest.approx(0.4112, abs=0.02)


@pytest.mark.parametrize("algorithm", Algorithm.ALL)
def test_more_trials_less_error(cancer_net, cancer_evidence, algorithm):
    report = compare_report(cancer_net, cancer_evidence, [algorithm], [100, 2000], 30, SEED)
    small = report.cell(algorithm, 100).stats
    large = report.cell(algorithm, 2000).stats
    assert large.mean_error < small.mean_error


def _error_at_time(sweep, seconds):
    """在 log(运行时间)-log(误差) 上线性插值，超出范围时取端点"""
    times = np.log([stats.mean_run_time for _, stats in sweep.points])
    errors = np.log(sweep.errors)
    order = np.argsort(times)
    return float(np.exp(np.interp(np.log(seconds), times[order], errors[order])))


def test_algorithm_ordering(cancer_net, cancer_evidence):
    algorithms = [Algorithm.LOGIC, Algorithm.LW, Algorithm.LW_INT_FULL]
    report = compare_report(cancer_net, cancer_evidence, algorithms, [500, 1000, 2000], 100, SEED)
    logic = report.cell(Algorithm.LOGIC, 2000).stats
    for algorithm in (Algorithm.LW, Algorithm.LW_INT_FULL):
        assert report.cell(algorithm, 2000).stats.mean_error < logic.mean_error

    # 同样的运行时间预算下误差更小
    for trials in (1000, 2000):
        budget = report.cell(Algorithm.LOGIC, trials).stats
        for algorithm in (Algorithm.LW, Algorithm.LW_INT_FULL):
            matched = _error_at_time(report.sweep(algorithm), budget.mean_run_time)
            assert matched < budget.mean_error, (algorithm, trials)
    assert stats[Algorithm.LW_INT_FULL].mean_error < stats[Algorithm.LOGIC].mean_error


def test_gibbs_has_highest_cost_per_trial(cancer_net, cancer_evidence):
    report = compare_report(cancer_net, cancer_evidence, list(Algorithm.ALL), [2000], 20, SEED)
    times = {a: report.cell(a, 2000).stats.mean_time_per_trial for a in Algorithm.ALL}
    gibbs = times.pop(Algorithm.GIBBS)
    assert all(gibbs > t for t in times.values())


def test_partial_integration_beats_plain_weighting_on_extremal_likelihoods():
    net, evidence = generate_extremal_network(10, 1e-3)
    integrated = experiment(net, evidence, Algorithm.LW_INT_PARTIAL, 1000, 30, SEED)
    plain = experiment(net, evidence, Algorithm.LW, 1000, 30, SEED)
    assert integrated.mean_error <= plain.mean_error / 5
    plain_more = experiment(net, evidence, Algorithm.LW, 10_000, 30, SEED)
    assert plain_more.mean_error > integrated.mean_error
