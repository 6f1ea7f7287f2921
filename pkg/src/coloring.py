"""
Colorings of a diagram with a G-flow by a G-family of quandles.

An X-coloring C assigns an element of X to every arc with

    C(w) = C(u) *^rho(v) C(v)      at every crossing
    C(a) = C(b) = C(c)             at every vertex

Two routes compute the coloring set:

* brute force, for any family: propagate-and-branch over arc colors;
* linear algebra, for Alexander families X = F^d: the colorings are the
  row vectors z in F^(dn) with z M = 0, where M is the block transpose of
  the flattened matrix A(D, rho; X), so dim_F = dn - rank M.

Both routes agree exactly: #colorings = |F| ** dim.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DescriptorError, DiagramValidationError, GroupMismatchError
from .flows import GFlow, enumerate_flows
from .groups import FiniteGroup
from .matrices import (
    ZERO,
    GroupRingElement,
    GroupRingMatrix,
    field_rank,
    flatten,
    left_nullspace,
    scalar_flatten,
)
from .models import POSITIVE, Crossing, Diagram, Loop, Vertex
from .quandles import GFamily
from .search import UNASSIGNED, Constraint, Deduction, PropagationSearch

LOG = logging.getLogger(__name__)

METHODS = ("auto", "brute", "linear", "both")

Coloring = Tuple[int, ...]


# Coloring Space
@dataclass
class ColoringSpace:
    """
    The coloring set of (D, rho) by one family.

    Explicit spaces list every coloring; linear spaces keep the matrix and
    the dimension over F of the solution space.
    """

    family: str
    size: int
    colorings: Optional[List[Coloring]] = None
    matrix: Optional[GroupRingMatrix] = None
    order: int = 0
    d: int = 1
    dimension: Optional[int] = None

    @property
    def kind(self) -> str:
        return "explicit" if self.colorings is not None else "linear"

    @property
    def count(self) -> int:
        if self.colorings is not None:
            return len(self.colorings)
        return self.order ** self.dimension

    def to_dict(self) -> dict:
        result = {"kind": self.kind, "family": self.family, "count": self.count}
        if self.dimension is not None:
            result["field_order"] = self.order
            result["dimension"] = self.dimension
        return result


def _check_family(flow: GFlow, family: GFamily) -> None:
    if family.group != flow.group:
        raise GroupMismatchError(repr(flow.group), f"{family.name} over {family.group!r}")


def _require_linear(family: GFamily) -> None:
    if not family.is_linear:
        raise DescriptorError(family.name, "the linear route needs an Alexander family")


# Brute force
class CrossingRule(Constraint):
    """C(w) = C(u) *^g C(v) with g = rho(v) fixed by the flow."""

    def __init__(self, crossing: Crossing, forward: np.ndarray, backward: np.ndarray):
        self.u, self.v, self.w = crossing.u - 1, crossing.v - 1, crossing.w - 1
        self.variables = (self.u, self.v, self.w)
        self.forward = forward
        self.backward = backward

    def deduce(self, values: Sequence[int]) -> Optional[Deduction]:
        y = values[self.v]
        if y == UNASSIGNED:
            return []
        if values[self.u] != UNASSIGNED:
            return [(self.w, int(self.forward[values[self.u], y]))]
        if values[self.w] != UNASSIGNED:
            return [(self.u, int(self.backward[values[self.w], y]))]
        return []


class VertexRule(Constraint):
    """All three arcs at a vertex share one color."""

    def __init__(self, vertex: Vertex):
        self.variables = (vertex.a - 1, vertex.b - 1, vertex.c - 1)

    def deduce(self, values: Sequence[int]) -> Optional[Deduction]:
        for var in self.variables:
            if values[var] != UNASSIGNED:
                return [(other, values[var]) for other in self.variables if other != var]
        return []


def coloring_constraints(diagram: Diagram, flow: GFlow, family: GFamily) -> List[Constraint]:
    group = flow.group
    constraints: List[Constraint] = []
    for record in diagram.records:
        if isinstance(record, Crossing):
            g = flow[record.v]
            # (x *^g y) *^(g^-1) y = x
            constraints.append(
                CrossingRule(record, family.operation_table(g), family.operation_table(group.inv(g)))
            )
        elif isinstance(record, Vertex):
            constraints.append(VertexRule(record))
    return constraints


def _coloring_search(diagram: Diagram, flow: GFlow, family: GFamily, budget: Optional[int]) -> PropagationSearch:
    _check_family(flow, family)
    return PropagationSearch(
        diagram.arc_count,
        family.size,
        coloring_constraints(diagram, flow, family),
        budget=budget,
        what=f"coloring search with {family.name}",
    )


def count_colorings_bruteforce(
    diagram: Diagram, flow: GFlow, family: GFamily, budget: Optional[int] = None
) -> ColoringSpace:
    """
    Enumerate every coloring of (D, rho) by the family.

    Args:
        diagram: The diagram
        flow: A G-flow of the diagram
        family: Any G-family over the flow's group
        budget: Maximum branch assignments (HKCOLOR_BRUTE_BUDGET otherwise)

    Returns:
        Explicit ColoringSpace

    Raises:
        GroupMismatchError: If the family lives over another group
        BruteForceBudgetError: If the search exceeds the budget
    """
    search = _coloring_search(diagram, flow, family, budget)
    colorings = list(search.solutions())
    LOG.debug(
        "flow %d: %d colorings by %s (%d branches)",
        flow.index, len(colorings), family.name, search.branches,
    )
    return ColoringSpace(family=family.name, size=family.size, colorings=colorings)


# Linear route
def auto_kink(diagram: Diagram) -> Diagram:
    """Replace every crossing-free loop x by the kink `X + x x x`."""
    if not diagram.loops:
        return diagram
    records = [
        Crossing(POSITIVE, r.arc, r.arc, r.arc) if isinstance(r, Loop) else r
        for r in diagram.records
    ]
    return diagram.with_records(records)


def _delta(arc_count: int, entries) -> Tuple[GroupRingElement, ...]:
    row = [ZERO] * arc_count
    for arc, element in entries:
        row[arc - 1] = row[arc - 1] + element
    return tuple(row)


def coloring_matrix(diagram: Diagram, flow: GFlow) -> GroupRingMatrix:
    """
    A(D, rho; X) over Z[G].

    Rows are ordered: one per crossing in record order, then the alpha
    row delta(a) - delta(c) of every vertex, then the beta rows
    delta(b) - delta(c). Loops are kinked first and contribute zero rows.
    """
    kinked = auto_kink(diagram)
    e = flow.group.identity
    n = kinked.arc_count
    rows = []
    for crossing in kinked.crossings:
        g = flow[crossing.v]
        rows.append(
            _delta(
                n,
                [
                    (crossing.u, GroupRingElement.of(g)),
                    (crossing.v, GroupRingElement.of(e) - GroupRingElement.of(g)),
                    (crossing.w, GroupRingElement.of(e, -1)),
                ],
            )
        )
    minus_one = GroupRingElement.of(e, -1)
    one = GroupRingElement.of(e)
    for vertex in kinked.vertices:
        rows.append(_delta(n, [(vertex.a, one), (vertex.c, minus_one)]))
    for vertex in kinked.vertices:
        rows.append(_delta(n, [(vertex.b, one), (vertex.c, minus_one)]))
    return GroupRingMatrix.from_rows(flow.group, rows, n)


def _solution_matrix(matrix: GroupRingMatrix, family):
    return flatten(matrix, family.eta).block_transpose(family.d)


def _dimension(matrix: GroupRingMatrix, family) -> int:
    solution = _solution_matrix(matrix, family)
    rank = field_rank(solution)
    LOG.debug(
        "%s: %dx%d system over %s, rank %d",
        family.name, solution.rows, solution.cols, family.field.descriptor, rank,
    )
    return family.d * matrix.cols - rank


def coloring_dimension(diagram: Diagram, flow: GFlow, family: GFamily) -> int:
    """
    dim_F of the coloring space: dn - rank of the flattened matrix.

    Raises:
        DescriptorError: If the family is not an Alexander family
        GroupMismatchError: If the family lives over another group
    """
    _require_linear(family)
    _check_family(flow, family)
    return _dimension(coloring_matrix(diagram, flow), family)


def linear_coloring_space(diagram: Diagram, flow: GFlow, family: GFamily) -> ColoringSpace:
    _require_linear(family)
    _check_family(flow, family)
    matrix = coloring_matrix(diagram, flow)
    return ColoringSpace(
        family=family.name,
        size=family.size,
        matrix=matrix,
        order=family.field.order,
        d=family.d,
        dimension=_dimension(matrix, family),
    )


def coloring_from_vector(family: GFamily, vector) -> Coloring:
    """Split a vector of F^(dn) into n element indices of F^d."""
    blocks = np.asarray(vector, dtype=np.int64).reshape(-1, family.d)
    return tuple(int(x) for x in family.index_of(blocks))


def coloring_basis(diagram: Diagram, flow: GFlow, family: GFamily) -> List[Coloring]:
    """Colorings spanning the space over F, from the left nullspace."""
    _require_linear(family)
    _check_family(flow, family)
    solution = _solution_matrix(coloring_matrix(diagram, flow), family)
    return [coloring_from_vector(family, z) for z in left_nullspace(solution)]


def coloring_dimension_over_extension(diagram: Diagram, flow: GFlow, family: GFamily) -> int:
    """
    n - rank over E of the matrix with every g replaced by zeta(g).

    Raises:
        DescriptorError: If the family carries no scalar representation
    """
    _require_linear(family)
    _check_family(flow, family)
    if family.zeta is None:
        raise DescriptorError(family.name, "no extension-field form of the action")
    matrix = coloring_matrix(diagram, flow)
    return matrix.cols - field_rank(scalar_flatten(matrix, family.zeta))


def dimension_with_identified_arcs(
    diagram: Diagram, flow: GFlow, family: GFamily, x: int, y: int
) -> int:
    """Dimension of the colorings that also satisfy C(x) = C(y)."""
    _require_linear(family)
    _check_family(flow, family)
    for arc in (x, y):
        if not 1 <= arc <= diagram.arc_count:
            raise DiagramValidationError([f"arc {arc} does not exist"])
    e = flow.group.identity
    matrix = coloring_matrix(diagram, flow)
    extra = _delta(matrix.cols, [(x, GroupRingElement.of(e)), (y, GroupRingElement.of(e, -1))])
    return _dimension(matrix.with_rows([extra]), family)


def is_coloring(diagram: Diagram, flow: GFlow, family: GFamily, coloring: Sequence[int]) -> bool:
    """Check a coloring directly against the crossing and vertex rules."""
    if len(coloring) != diagram.arc_count:
        return False
    if any(not 0 <= c < family.size for c in coloring):
        return False
    color = lambda arc: int(coloring[arc - 1])  # noqa: E731
    for record in diagram.records:
        if isinstance(record, Crossing):
            expected = family.family_op(color(record.u), flow[record.v], color(record.v))
            if expected != color(record.w):
                return False
        elif isinstance(record, Vertex):
            if not color(record.a) == color(record.b) == color(record.c):
                return False
    return True


def _is_constant(coloring: Sequence[int]) -> bool:
    return len(set(coloring)) <= 1


def find_nonconstant_coloring(
    diagram: Diagram, flow: GFlow, family: GFamily, budget: Optional[int] = None
) -> Optional[Tuple[Coloring, int]]:
    """
    A non-constant coloring and the total coloring count, or None when all
    colorings are constant.
    """
    _check_family(flow, family)
    if family.is_linear:
        dimension = coloring_dimension(diagram, flow, family)
        if dimension == family.d:
            return None
        for coloring in coloring_basis(diagram, flow, family):
            if not _is_constant(coloring):
                return coloring, family.field.order ** dimension
        return None
    space = count_colorings_bruteforce(diagram, flow, family, budget=budget)
    for coloring in space.colorings:
        if not _is_constant(coloring):
            return coloring, space.count
    return None


# Reports
@dataclass
class FlowColorings:
    """Coloring counts of one flow; `agree` is set when both routes ran."""

    flow: GFlow
    count: int
    dimension: Optional[int] = None
    brute_count: Optional[int] = None
    agree: Optional[bool] = None

    def to_dict(self) -> dict:
        result = self.flow.to_dict()
        result["colorings"] = self.count
        if self.dimension is not None:
            result["dimension"] = self.dimension
        if self.agree is not None:
            result["brute_force"] = self.brute_count
            result["agree"] = self.agree
        return result


@dataclass
class ColoringReport:
    diagram: str
    group: str
    family: str
    method: str
    rows: List[FlowColorings] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def multiset(self) -> Counter:
        return Counter(row.count for row in self.rows)

    @property
    def agree(self) -> bool:
        return all(row.agree is not False for row in self.rows)

    def summary(self) -> dict:
        return {
            "diagram": self.diagram,
            "group": self.group,
            "family": self.family,
            "method": self.method,
            "flows": len(self.rows),
            "multiset": {str(k): v for k, v in sorted(self.multiset.items())},
            "agree": self.agree,
        }

    def records(self) -> List[dict]:
        return [row.to_dict() for row in self.rows] + [self.summary()]


def _resolve_method(method: str, family: GFamily) -> str:
    if method not in METHODS:
        raise DescriptorError(method, f"method must be one of {', '.join(METHODS)}")
    if method == "auto":
        return "linear" if family.is_linear else "brute"
    if method in ("linear", "both"):
        _require_linear(family)
    return method


def flow_colorings(
    diagram: Diagram, flow: GFlow, family: GFamily, method: str = "auto", budget: Optional[int] = None
) -> FlowColorings:
    method = _resolve_method(method, family)
    if method == "brute":
        return FlowColorings(flow, count_colorings_bruteforce(diagram, flow, family, budget).count)
    dimension = coloring_dimension(diagram, flow, family)
    count = family.field.order ** dimension
    row = FlowColorings(flow, count, dimension=dimension)
    if method == "both":
        row.brute_count = count_colorings_bruteforce(diagram, flow, family, budget).count
        row.agree = row.brute_count == count
        if not row.agree:
            LOG.warning(
                "flow %d: brute force found %d colorings, linear route %d",
                flow.index, row.brute_count, count,
            )
    return row


def coloring_report(
    diagram: Diagram,
    group: FiniteGroup,
    family: GFamily,
    method: str = "auto",
    budget: Optional[int] = None,
) -> ColoringReport:
    """
    Coloring counts of every flow of the diagram.

    Args:
        diagram: The diagram
        group: Group of the flows
        family: G-family over the same group
        method: auto, brute, linear or both (both cross-checks the routes)
        budget: Brute-force budget

    Returns:
        ColoringReport with one row per flow
    """
    if family.group != group:
        raise GroupMismatchError(repr(group), f"{family.name} over {family.group!r}")
    resolved = _resolve_method(method, family)
    report = ColoringReport(diagram.name or "diagram", group.name, family.name, resolved)
    for flow in enumerate_flows(diagram, group, budget):
        report.rows.append(flow_colorings(diagram, flow, family, resolved, budget))
    if not report.agree:
        report.warnings.append("brute force and linear algebra disagree")
    LOG.info("%s: coloring multiset %s", report.diagram, dict(sorted(report.multiset.items())))
    return report


def invariant_multiset(
    diagram: Diagram, group: FiniteGroup, family: GFamily, budget: Optional[int] = None
) -> Counter:
    """The multiset {#Col_X(D, rho) : rho a G-flow}, as count -> multiplicity."""
    return coloring_report(diagram, group, family, budget=budget).multiset
