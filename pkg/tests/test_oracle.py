import itertools

import numpy as np
import pytest

from bnsim.errors import CapacityError, ImpossibleEvidenceError
from bnsim.inference import default_state_cap, exact_inference, joint_table
from bnsim.models import Cpt, Network, Variable, binary_variable
from bnsim.network import joint_probability

from .helpers import make_chain


def _enumerate(net, evidence):
    """逐项枚举的独立实现"""
    totals = {n: np.zeros(net.cardinality(n)) for n in net.ids}
    evidence_probability = 0.0
    ranges = [range(net.cardinality(n)) for n in net.ids]
    for config in itertools.product(*ranges):
        full = dict(zip(net.ids, config))
        if any(full[n] != v for n, v in evidence.items()):
            continue
        p = joint_probability(net, full)
        evidence_probability += p
        for n, v in full.items():
            totals[n][v] += p
    return {n: t / evidence_probability for n, t in totals.items()}, evidence_probability


def test_cancer_posteriors(cancer_net, cancer_evidence):
    result = exact_inference(cancer_net, cancer_evidence)
    assert result.evidence_probability == pytest.approx(0.4112, abs=1e-12)
    assert result.probability("A", 0) == pytest.approx(0.097276, abs=1e-6)
    assert result.probability("B", 0) == pytest.approx(0.097276, abs=1e-6)
    assert result.probability("C", 0) == pytest.approx(0.031128, abs=1e-6)

    expected, probability = _enumerate(cancer_net, cancer_evidence)
    assert result.evidence_probability == pytest.approx(probability, abs=1e-12)
    for node in ("A", "B", "C"):
        np.testing.assert_allclose(result.posterior[node], expected[node], atol=1e-12)


def test_evidence_nodes_are_point_masses(cancer_net, cancer_evidence):
    result = exact_inference(cancer_net, cancer_evidence)
    assert result.posterior["E"].tolist() == [1.0, 0.0]
    assert result.posterior["D"].tolist() == [0.0, 1.0]


def test_priors_without_evidence(cancer_net):
    result = exact_inference(cancer_net, {})
    assert result.evidence_probability == pytest.approx(1.0, abs=1e-12)
    assert result.probability("A", 0) == pytest.approx(0.2, abs=1e-12)
    assert result.probability("B", 0) == pytest.approx(0.32, abs=1e-12)


def test_reverse_accumulation_agrees(cancer_net, cancer_evidence):
    forward = exact_inference(cancer_net, cancer_evidence)
    backward = exact_inference(cancer_net, cancer_evidence, reverse=True)
    for node in cancer_net.ids:
        np.testing.assert_allclose(forward.posterior[node], backward.posterior[node], atol=1e-12)
    assert joint_table(cancer_net).sum() == pytest.approx(1.0, abs=1e-12)


def test_impossible_evidence():
    net = make_chain(3, (1.0, 0.0))
    with pytest.raises(ImpossibleEvidenceError):
        exact_inference(net, {"X2": 1})


def test_capacity_cap(cancer_net, monkeypatch):
    with pytest.raises(CapacityError):
        exact_inference(cancer_net, {}, state_cap=16)
    monkeypatch.setenv("BNSIM_STATE_CAP", "8")
    assert default_state_cap() == 8
    with pytest.raises(CapacityError):
        exact_inference(cancer_net, {})


def _multi_valued():
    return Network.build(
        [Variable("W", ("lo", "mid", "hi")), binary_variable("Z"), Variable("V", ("a", "b", "c"))],
        {
            "W": Cpt((), ((0.1, 0.3, 0.6),)),
            "Z": Cpt(("W",), ((0.9, 0.1), (0.5, 0.5), (0.25, 0.75))),
            "V": Cpt(
                ("W", "Z"),
                (
                    (0.2, 0.3, 0.5),
                    (1.0, 0.0, 0.0),
                    (0.1, 0.1, 0.8),
                    (0.6, 0.2, 0.2),
                    (0.0, 0.5, 0.5),
                    (0.3, 0.3, 0.4),
                ),
            ),
        },
        name="multi",
    )


@pytest.mark.parametrize(
    "net",
    [_multi_valued(), make_chain(6, (0.3, 0.7), link=((0.6, 0.4), (0.1, 0.9)))],
    ids=["multi-valued", "chain"],
)
def test_joint_sums_to_one(net):
    joint = joint_table(net)
    assert joint.shape == tuple(net.cardinality(n) for n in net.ids)
    assert joint.sum() == pytest.approx(1.0, abs=1e-12)
    assert exact_inference(net, {}).evidence_probability == pytest.approx(1.0, abs=1e-12)


def test_multi_valued_posteriors_match_enumeration():
    net = _multi_valued()
    result = exact_inference(net, {"Z": 1})
    expected, probability = _enumerate(net, {"Z": 1})
    assert result.evidence_probability == pytest.approx(probability, abs=1e-12)
    for node in net.ids:
        np.testing.assert_allclose(result.posterior[node], expected[node], atol=1e-12)
