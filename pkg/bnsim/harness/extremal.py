"""极端似然网络生成器。

A_0..A_{n-1} 为均匀先验的二值根节点，B 在给定全部 A_i 时为均匀分布。

direct: 观测节点 EV 直接是 B 的子节点，P(obs|b)=ε，P(obs|¬b)=ε²。
chained: B -> C -> EV，C 有三个状态，P(C|b)=(ε, 1−2ε, ε)，P(C|¬b)=(ε/2, 1−ε, ε/2)，
    P(obs|C)=(1, ε, 0)。只反转 C->EV 即可把似然变为 ≈2ε 与 ≈1.5ε。
"""

import itertools
from typing import Dict, Tuple

from ..errors import PreconditionError
from ..models.network import Cpt, Network, Variable, binary_variable
from ..utils.constants import ExtremalLayout

EVIDENCE_NODE = "EV"


def _parent_ids(n_parents: int):
    return [f"A{i}" for i in range(n_parents)]


def generate_extremal_network(
    n_parents: int, epsilon: float, layout: str = ExtremalLayout.CHAINED
) -> Tuple[Network, Dict[str, int]]:
    """生成极端似然网络及其观测

    Args:
        n_parents: B 的父节点数，>= 1
        epsilon: 似然尺度，0 < ε < 0.5
        layout: "chained"（默认）或 "direct"

    Returns:
        Tuple[Network, Dict[str, int]]: 网络与证据 {EV: 0}
    """
    if n_parents < 1:
        raise PreconditionError(f"n_parents 必须 >= 1，实际 {n_parents}")
    if not 0.0 < epsilon < 0.5:
        raise PreconditionError(f"epsilon 必须在 (0, 0.5) 内，实际 {epsilon}")
    if layout not in ExtremalLayout.ALL:
        raise PreconditionError(f"未知结构: {layout}")

    parents = _parent_ids(n_parents)
    variables = [binary_variable(a) for a in parents] + [binary_variable("B")]
    cpts = {a: Cpt(parents=(), rows=((0.5, 0.5),)) for a in parents}
    b_rows = tuple((0.5, 0.5) for _ in itertools.product((0, 1), repeat=n_parents))
    cpts["B"] = Cpt(parents=tuple(parents), rows=b_rows)

    if layout == ExtremalLayout.DIRECT:
        likelihood_parent = "B"
        likelihood = (epsilon, epsilon ** 2)
    else:
        variables.append(Variable("C", ("c0", "c1", "c2")))
        cpts["C"] = Cpt(
            parents=("B",),
            rows=(
                (epsilon, 1.0 - 2.0 * epsilon, epsilon),
                (epsilon / 2.0, 1.0 - epsilon, epsilon / 2.0),
            ),
        )
        likelihood_parent = "C"
        likelihood = (1.0, epsilon, 0.0)

    variables.append(binary_variable(EVIDENCE_NODE, ("obs", "none")))
    cpts[EVIDENCE_NODE] = Cpt(
        parents=(likelihood_parent,),
        rows=tuple((p, 1.0 - p) for p in likelihood),
    )

    name = f"extremal-{layout}-n{n_parents}-eps{epsilon:g}"
    return Network.build(variables, cpts, name=name), {EVIDENCE_NODE: 0}
