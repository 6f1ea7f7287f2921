"""
G-flows of diagrams.

A G-flow assigns a group element to every arc so that the Wirtinger
relations hold: rho(w) = rho(v)^-1 rho(u) rho(v) at each crossing and
rho(a) rho(b) = rho(c) at each vertex. Flows are enumerated by
propagate-and-branch search in lexicographic order of their assignments,
so flow indices are stable between runs.
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import GroupMismatchError, InvalidFlowError
from .groups import FiniteGroup
from .models import Crossing, Diagram, Vertex
from .search import UNASSIGNED, Constraint, Deduction, PropagationSearch

LOG = logging.getLogger(__name__)


# Flow Dataclass
@dataclass(frozen=True)
class GFlow:
    """A verified G-flow; assignment[i] is the element on arc i + 1."""

    diagram: Diagram
    group: FiniteGroup
    assignment: Tuple[int, ...]
    index: int = field(default=0, compare=False)

    def __getitem__(self, arc: int) -> int:
        return self.assignment[arc - 1]

    def labels(self) -> List[str]:
        return [self.group.label(g) for g in self.assignment]

    def is_constant(self) -> bool:
        return len(set(self.assignment)) <= 1

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "assignment": {str(arc): label for arc, label in zip(self.diagram.arcs, self.labels())},
            "image": sorted(self.group.label(g) for g in flow_image(self)),
        }


# Wirtinger constraints
class CrossingRelation(Constraint):
    """rho(w) = rho(v)^-1 rho(u) rho(v), deduced whenever rho(v) is known."""

    def __init__(self, crossing: Crossing, group: FiniteGroup, conjugation: np.ndarray):
        self.u, self.v, self.w = crossing.u - 1, crossing.v - 1, crossing.w - 1
        self.variables = (self.u, self.v, self.w)
        self.group = group
        self.conjugation = conjugation

    def deduce(self, values: Sequence[int]) -> Optional[Deduction]:
        g = values[self.v]
        if g == UNASSIGNED:
            return []
        u, w = values[self.u], values[self.w]
        if u != UNASSIGNED:
            return [(self.w, int(self.conjugation[u, g]))]
        if w != UNASSIGNED:
            return [(self.u, int(self.conjugation[w, self.group.inv(g)]))]
        return []


class VertexRelation(Constraint):
    """rho(a) rho(b) = rho(c); any two values determine the third."""

    def __init__(self, vertex: Vertex, group: FiniteGroup):
        self.a, self.b, self.c = vertex.a - 1, vertex.b - 1, vertex.c - 1
        self.variables = (self.a, self.b, self.c)
        self.group = group

    def deduce(self, values: Sequence[int]) -> Optional[Deduction]:
        a, b, c = values[self.a], values[self.b], values[self.c]
        mul, inv = self.group.mul, self.group.inv
        if a != UNASSIGNED and b != UNASSIGNED:
            return [(self.c, mul(a, b))]
        if a != UNASSIGNED and c != UNASSIGNED:
            return [(self.b, mul(inv(a), c))]
        if b != UNASSIGNED and c != UNASSIGNED:
            return [(self.a, mul(c, inv(b)))]
        return []


def conjugation_table(group: FiniteGroup) -> np.ndarray:
    """table[x, g] = g^-1 x g"""
    elements = np.arange(group.order)
    left = group.cayley[group.inverse[None, :], elements[:, None]]
    return group.cayley[left, elements[None, :]]


def flow_constraints(diagram: Diagram, group: FiniteGroup) -> List[Constraint]:
    conjugation = conjugation_table(group)
    constraints: List[Constraint] = []
    for record in diagram.records:
        if isinstance(record, Crossing):
            constraints.append(CrossingRelation(record, group, conjugation))
        elif isinstance(record, Vertex):
            constraints.append(VertexRelation(record, group))
    return constraints


# Operations
def enumerate_flows(diagram: Diagram, group: FiniteGroup, budget: Optional[int] = None) -> List[GFlow]:
    """
    All G-flows of a diagram in lexicographic order of their assignments.

    Raises:
        BruteForceBudgetError: If the search needs more branch assignments
            than the budget allows
    """
    search = PropagationSearch(
        diagram.arc_count,
        group.order,
        flow_constraints(diagram, group),
        budget=budget,
        what=f"flow search over {group.name}",
    )
    flows = [
        GFlow(diagram, group, assignment, index=i)
        for i, assignment in enumerate(search.solutions())
    ]
    LOG.info("%s: %d %s-flows", diagram.name or "diagram", len(flows), group.name)
    return flows


def make_flow(
    diagram: Diagram,
    group: FiniteGroup,
    assignment: Union[Sequence[int], Mapping[int, int]],
    index: int = 0,
) -> GFlow:
    """
    Build a GFlow from an explicit assignment, checking every relation.

    Args:
        diagram: The diagram
        group: The group
        assignment: Sequence over arcs 1..n, or mapping arc -> element

    Raises:
        InvalidFlowError: If a value is missing or a relation fails
    """
    if isinstance(assignment, Mapping):
        values = [assignment.get(arc, UNASSIGNED) for arc in diagram.arcs]
    else:
        values = list(assignment)
    if len(values) != diagram.arc_count:
        raise InvalidFlowError(f"expected {diagram.arc_count} values, got {len(values)}")
    for arc, value in zip(diagram.arcs, values):
        if not 0 <= value < group.order:
            raise InvalidFlowError(f"arc {arc} has no value in {group.name}", arc=arc)

    mul, inv = group.mul, group.inv
    for record in diagram.records:
        if isinstance(record, Crossing):
            u, v, w = values[record.u - 1], values[record.v - 1], values[record.w - 1]
            if mul(mul(inv(v), u), v) != w:
                raise InvalidFlowError(f"crossing relation fails at {record.to_line()}", arc=record.w)
        elif isinstance(record, Vertex):
            a, b, c = values[record.a - 1], values[record.b - 1], values[record.c - 1]
            if mul(a, b) != c:
                raise InvalidFlowError(f"vertex relation fails at {record.to_line()}", arc=record.c)
    return GFlow(diagram, group, tuple(int(v) for v in values), index=index)


def extend_flow(flow: GFlow, diagram: Diagram, extra: Mapping[int, int]) -> GFlow:
    """
    Carry a flow to a diagram with more arcs, such as the result of
    add_tunnel, giving the new arcs the values in `extra` and every other
    arc its old value. Arcs n+1.. not listed in `extra` copy nothing and
    must be deduced, so this fills them by propagation.
    """
    fixed = {arc - 1: value for arc, value in enumerate(flow.assignment, start=1)}
    fixed.update({arc - 1: value for arc, value in extra.items()})
    search = PropagationSearch(
        diagram.arc_count, flow.group.order, flow_constraints(diagram, flow.group),
        what="flow extension",
    )
    for assignment in search.solutions(fixed=fixed):
        return make_flow(diagram, flow.group, assignment)
    raise InvalidFlowError("the flow does not extend to the new diagram")


def flow_image(flow: GFlow) -> FrozenSet[int]:
    """The subgroup generated by the values of the flow."""
    return flow.group.generated_subgroup(flow.assignment)


# Classification
@dataclass
class FlowClassification:
    """
    Whether a flow admits only constant colorings for the given families.

    The verdict is relative to the families supplied: "trivial" means no
    family among them found a non-constant coloring.
    """

    flow: GFlow
    families: List[str]
    trivial: bool = True
    witness_family: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None
    coloring_count: Optional[int] = None

    @property
    def status(self) -> str:
        if self.trivial:
            return "trivial-relative"
        coloring = ",".join(str(c) for c in self.witness)
        return f"nontrivial({self.witness_family},{coloring})"

    def row(self) -> str:
        """`flow <index>: arc=<element>,... image={...} status=<...>`"""
        group = self.flow.group
        arcs = ",".join(f"{arc}={label}" for arc, label in zip(self.flow.diagram.arcs, self.flow.labels()))
        image = ",".join(group.label(g) for g in sorted(flow_image(self.flow)))
        return f"flow {self.flow.index}: {arcs} image={{{image}}} status={self.status}"

    def to_dict(self) -> dict:
        result = self.flow.to_dict()
        result["status"] = "trivial-relative" if self.trivial else "nontrivial"
        result["families"] = self.families
        if not self.trivial:
            result["witness_family"] = self.witness_family
            result["witness"] = list(self.witness)
            result["colorings"] = self.coloring_count
        return result


def classify_flow(flow: GFlow, families: Sequence, budget: Optional[int] = None) -> FlowClassification:
    """
    Look for a non-constant coloring of the flow in each family in turn.

    Args:
        flow: The flow
        families: G-families over the flow's group
        budget: Brute-force budget for table families

    Returns:
        FlowClassification carrying the first witness found

    Raises:
        GroupMismatchError: If a family is defined over another group
    """
    from .coloring import find_nonconstant_coloring  # coloring imports this module

    classification = FlowClassification(flow=flow, families=[f.name for f in families])
    for family in families:
        if family.group != flow.group:
            raise GroupMismatchError(repr(flow.group), f"{family.name} over {family.group!r}")
    for family in families:
        found = find_nonconstant_coloring(flow.diagram, flow, family, budget=budget)
        if found is not None:
            coloring, count = found
            classification.trivial = False
            classification.witness_family = family.name
            classification.witness = coloring
            classification.coloring_count = count
            break
    return classification


def classify_flows(
    diagram: Diagram, group: FiniteGroup, families: Sequence, budget: Optional[int] = None
) -> List[FlowClassification]:
    return [classify_flow(f, families, budget=budget) for f in enumerate_flows(diagram, group, budget)]


def count_trivial_flows(
    diagram: Diagram, group: FiniteGroup, families: Sequence, budget: Optional[int] = None
) -> int:
    """Number of flows with only constant colorings in every given family."""
    return sum(1 for c in classify_flows(diagram, group, families, budget) if c.trivial)
