import json

import numpy as np
import pytest

from bnsim.errors import CycleError, PreconditionError, StructuralError
from bnsim.harness import generate_extremal_network
from bnsim.inference import (
    condition_network,
    evidence_likelihood,
    exact_inference,
    integrate_evidence,
    joint_table,
    likelihood_spread,
    replay_plan,
    reverse_arc,
    reverse_arc_step,
)
from bnsim.models import Cpt, Network, ReversalPlan, binary_variable
from bnsim.network import validate_network
from bnsim.utils.constants import ExtremalLayout, IntegrationMode


def _assert_same_posteriors(a, b, nodes):
    for node in nodes:
        np.testing.assert_allclose(a.posterior[node], b.posterior[node], atol=1e-12)


def test_reverse_c_to_e(cancer_net):
    net = reverse_arc(cancer_net, "C", "E")
    assert net.parents("E") == ("A",)
    assert net.parents("C") == ("A", "E")
    np.testing.assert_allclose(net.table("E"), [[0.64, 0.36], [0.61, 0.39]], atol=1e-12)
    # P(c | a, e)
    assert net.table("C")[net.config_index("C", {"A": 0, "E": 0})][0] == pytest.approx(
        0.25, abs=1e-12
    )
    assert validate_network(net) == []


def test_reversal_preserves_joint(cancer_net, cancer_evidence):
    net = reverse_arc(cancer_net, "C", "E")
    np.testing.assert_allclose(joint_table(net), joint_table(cancer_net), atol=1e-12)
    _assert_same_posteriors(
        exact_inference(net, cancer_evidence),
        exact_inference(cancer_net, cancer_evidence),
        cancer_net.ids,
    )


def test_reversal_step_records_parent_sets(cancer_net):
    _, step = reverse_arc_step(cancer_net, "C", "E")
    assert (step.from_id, step.to_id) == ("C", "E")
    assert step.to_parents_before == ("C",)
    assert step.from_parents_after == ("A", "E")
    assert step.uniform_rows == 0


def test_missing_arc(cancer_net):
    with pytest.raises(StructuralError):
        reverse_arc(cancer_net, "A", "D")


def test_alternate_path_would_close_cycle():
    net = Network.build(
        [binary_variable("X"), binary_variable("Y"), binary_variable("Z")],
        {
            "X": Cpt((), ((0.5, 0.5),)),
            "Y": Cpt(("X",), ((0.9, 0.1), (0.2, 0.8))),
            "Z": Cpt(("X", "Y"), ((0.9, 0.1), (0.5, 0.5), (0.3, 0.7), (0.1, 0.9))),
        },
    )
    with pytest.raises(CycleError):
        reverse_arc(net, "X", "Z")


def test_zero_denominator_rows_are_uniform():
    net = Network.build(
        [binary_variable("X"), binary_variable("Y")],
        {"X": Cpt((), ((0.5, 0.5),)), "Y": Cpt(("X",), ((1.0, 0.0), (1.0, 0.0)))},
    )
    reversed_net, step = reverse_arc_step(net, "X", "Y")
    assert step.uniform_rows == 1
    assert reversed_net.table("X")[1].tolist() == [0.5, 0.5]


def test_full_integration(cancer_net, cancer_evidence):
    integrated, plan = integrate_evidence(cancer_net, cancer_evidence, IntegrationMode.FULL)
    for node in cancer_evidence:
        assert all(p in cancer_evidence for p in integrated.parents(node))
    assert len(plan) > 0
    assert replay_plan(cancer_net, plan) == integrated
    assert evidence_likelihood(integrated, cancer_evidence) == pytest.approx(0.4112, abs=1e-12)

    conditioned = condition_network(integrated, cancer_evidence)
    assert set(conditioned.ids) == {"A", "B", "C"}
    _assert_same_posteriors(
        exact_inference(conditioned, {}),
        exact_inference(cancer_net, cancer_evidence),
        conditioned.ids,
    )


def test_partial_integration_reverses_one_layer(cancer_net, cancer_evidence):
    integrated, plan = integrate_evidence(
        cancer_net, cancer_evidence, IntegrationMode.PARTIAL
    )
    initial_layers = {"D": {"B", "C"}, "E": {"C"}}
    for from_id, to_id in plan.arcs:
        assert from_id in initial_layers[to_id]
    _assert_same_posteriors(
        exact_inference(integrated, cancer_evidence),
        exact_inference(cancer_net, cancer_evidence),
        cancer_net.ids,
    )


def test_partial_integration_on_chained_extremal():
    epsilon = 1e-3
    net, evidence = generate_extremal_network(4, epsilon)
    integrated, plan = integrate_evidence(net, evidence, IntegrationMode.PARTIAL)
    assert plan.arcs == [("C", "EV")]
    assert integrated.parents("EV") == ("B",)
    column = integrated.table("EV")[:, 0]
    assert column[0] == pytest.approx(2 * epsilon - 2 * epsilon ** 2, abs=1e-15)
    assert column[1] == pytest.approx(1.5 * epsilon - epsilon ** 2, abs=1e-15)
    assert likelihood_spread(integrated, "EV", 0) < likelihood_spread(net, "EV", 0)


def test_condition_requires_full_integration(cancer_net, cancer_evidence):
    with pytest.raises(PreconditionError):
        condition_network(cancer_net, cancer_evidence)


def test_integration_needs_evidence(cancer_net):
    with pytest.raises(PreconditionError):
        integrate_evidence(cancer_net, {})


@pytest.mark.parametrize(
    "case",
    ["cancer-E", "cancer-D", "cancer-ED", "extremal-direct", "extremal-chained"],
)
def test_full_integration_plan_is_bounded(cancer_net, case):
    if case.startswith("cancer"):
        net = cancer_net
        evidence = {"E": 0, "D": 1} if case == "cancer-ED" else {case[-1]: 0}
    else:
        layout = ExtremalLayout.DIRECT if case.endswith("direct") else ExtremalLayout.CHAINED
        net, evidence = generate_extremal_network(3, 0.01, layout)
    integrated, plan = integrate_evidence(net, evidence, IntegrationMode.FULL)
    assert 0 < len(plan) <= len(net.ids) * len(net.arcs())
    for node in evidence:
        assert all(p in evidence for p in integrated.parents(node))
    np.testing.assert_allclose(
        joint_table(integrated), joint_table(net), atol=1e-12
    )


def test_plan_document_keeps_flagged_rows():
    net = Network.build(
        [binary_variable("X"), binary_variable("Y")],
        {"X": Cpt((), ((0.5, 0.5),)), "Y": Cpt(("X",), ((1.0, 0.0), (1.0, 0.0)))},
    )
    reversed_net, step = reverse_arc_step(net, "X", "Y")
    plan = ReversalPlan(mode="single", steps=[step])
    assert plan.flagged

    restored = ReversalPlan.from_dict(json.loads(json.dumps(plan.to_dict())))
    assert restored.flagged
    assert restored.arcs == [("X", "Y")]
    assert restored.steps[0] == step
    assert replay_plan(net, restored) == reversed_net


def test_plan_without_zero_rows_is_not_flagged(cancer_net, cancer_evidence):
    _, plan = integrate_evidence(cancer_net, cancer_evidence, IntegrationMode.FULL)
    assert not plan.flagged
