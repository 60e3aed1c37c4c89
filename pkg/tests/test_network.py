import pytest

from bnsim.errors import CycleError, PreconditionError, UnknownNodeError
from bnsim.models import Cpt, Network, Variable, binary_variable
from bnsim.network import (
    compiled,
    joint_probability,
    local_distribution,
    topological_order,
    validate_network,
)


def _cyclic() -> Network:
    return Network.build(
        [binary_variable("P"), binary_variable("Q")],
        {
            "P": Cpt(parents=("Q",), rows=((0.5, 0.5), (0.5, 0.5))),
            "Q": Cpt(parents=("P",), rows=((0.5, 0.5), (0.5, 0.5))),
        },
    )


def test_cancer_network_structure(cancer_net):
    assert cancer_net.ids == ("A", "B", "C", "D", "E")
    assert cancer_net.parents("D") == ("B", "C")
    assert cancer_net.children("A") == ("B", "C")
    assert validate_network(cancer_net) == []


def test_topological_order_breaks_ties_by_declaration(cancer_net):
    assert topological_order(cancer_net) == ["A", "B", "C", "D", "E"]
    shuffled = Network.build(
        [cancer_net.variable(n) for n in ("E", "D", "C", "B", "A")], cancer_net.cpts
    )
    assert topological_order(shuffled) == ["A", "C", "E", "B", "D"]


def test_last_parent_varies_fastest(cancer_net):
    assert cancer_net.strides("D") == (2, 1)
    assert cancer_net.config_index("D", {"B": 1, "C": 0}) == 2
    # P(d | ¬b, ¬c)
    assert local_distribution(cancer_net, "D", {"B": 1, "C": 1}).tolist() == [0.05, 0.95]


def test_joint_probability(cancer_net):
    all_true = {n: 0 for n in cancer_net.ids}
    assert joint_probability(cancer_net, all_true) == pytest.approx(
        0.2 * 0.8 * 0.2 * 0.8 * 0.8, abs=1e-15
    )
    with pytest.raises(PreconditionError):
        joint_probability(cancer_net, {"A": 0})


def test_unknown_node_is_key_error(cancer_net):
    with pytest.raises(UnknownNodeError) as info:
        cancer_net.parents("Z")
    assert isinstance(info.value, KeyError)


def test_cycle_reported_once():
    net = _cyclic()
    violations = validate_network(net)
    assert [v.kind for v in violations] == ["cycle"]
    with pytest.raises(CycleError):
        topological_order(net)


@pytest.mark.parametrize(
    "rows, kind, row",
    [
        (((0.5, 0.4),), "row_sum", 0),
        (((0.5, 0.5), (0.5, 0.5)), "row_count", None),
        (((1.2, -0.2),), "probability", 0),
        (((1.0,),), "row_width", 0),
    ],
)
def test_cpt_violations_carry_location(rows, kind, row):
    net = Network.build([binary_variable("X")], {"X": Cpt(parents=(), rows=rows)})
    violations = validate_network(net)
    assert [(v.kind, v.node, v.row) for v in violations] == [(kind, "X", row)]


def test_missing_and_dangling_references():
    net = Network.build(
        [binary_variable("X"), binary_variable("Y")],
        {"X": Cpt(parents=("W",), rows=((0.5, 0.5),)), "Z": Cpt((), ((1.0, 0.0),))},
    )
    kinds = {(v.kind, v.node) for v in validate_network(net)}
    assert ("dangling_parent", "X") in kinds
    assert ("missing_cpt", "Y") in kinds
    assert ("orphan_cpt", "Z") in kinds


def test_single_state_variable_rejected():
    net = Network.build([Variable("X", ("only",))], {"X": Cpt((), ((1.0,),))})
    assert [v.kind for v in validate_network(net)] == ["states"]


def test_empty_network_is_valid():
    net = Network.build([], {})
    assert validate_network(net) == []
    assert topological_order(net) == []


def test_equality_ignores_declaration_order(cancer_net):
    reordered = Network.build(
        list(reversed(cancer_net.variables)), cancer_net.cpts, name=cancer_net.name
    )
    assert reordered == cancer_net
    changed = cancer_net.replace_cpts({"A": Cpt((), ((0.3, 0.7),))})
    assert changed != cancer_net


def test_compiled_nodes_follow_topological_order(cancer_net):
    nodes = compiled(cancer_net)
    assert [n.id for n in nodes] == topological_order(cancer_net)
    d = nodes[3]
    assert d.draw(d.row_index({"B": 1, "C": 1}), 0.049) == 0
    assert d.draw(d.row_index({"B": 1, "C": 1}), 0.05) == 1
