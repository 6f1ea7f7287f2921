"""
Lower bounds and constituent obstructions from coloring data.

* Tunnel bound: dim_F Col_X(D, rho) / d - 1 <= t(H) for every flow rho.
* Cutting bound: g - log_|G| T <= cut(H), T the number of trivial
  coloring flows.
* Constituent test: if H' is a constituent of H, some flow rho of H with
  Im rho = Im rho' has dim' - dim <= d (g - g').

Trivial coloring flows are counted relative to the families supplied, so
T is an over-count and the cutting bound stays sound, only weaker.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Union

from .coloring import coloring_dimension
from .exceptions import DescriptorError, GenusMismatchError, GenusOrderError, GroupMismatchError
from .flows import GFlow, count_trivial_flows, enumerate_flows, flow_image
from .groups import FiniteGroup
from .models import Diagram
from .parser import genus as diagram_genus
from .quandles import GFamily

LOG = logging.getLogger(__name__)


def _image_labels(flow: GFlow, image: FrozenSet[int]) -> List[str]:
    return [flow.group.label(g) for g in sorted(image)]


def checked_genus(diagram: Diagram, declared: Optional[int] = None) -> int:
    """
    The genus of a diagram, cross-checked against a declared value.

    Raises:
        GenusMismatchError: If the declared genus differs
    """
    computed = diagram_genus(diagram)
    if declared is not None and declared != computed:
        raise GenusMismatchError(declared, computed)
    return computed


# Per-flow dimensions
@dataclass
class FlowDimension:
    flow: GFlow
    image: FrozenSet[int]
    dimension: int

    def to_dict(self) -> dict:
        return {
            "index": self.flow.index,
            "image": _image_labels(self.flow, self.image),
            "dimension": self.dimension,
        }


def flow_dimension_table(
    diagram: Diagram, family: GFamily, budget: Optional[int] = None
) -> List[FlowDimension]:
    """(flow, image, dim_F) for every flow over the family's group."""
    if not family.is_linear:
        raise DescriptorError(family.name, "dimensions need an Alexander family")
    return [
        FlowDimension(flow, flow_image(flow), coloring_dimension(diagram, flow, family))
        for flow in enumerate_flows(diagram, family.group, budget)
    ]


# Bound Report
@dataclass
class BoundReport:
    """
    A lower bound with its witness.

    `value` is the integer bound; `raw_value` is the exact quantity before
    rounding up, a Fraction or, for an irrational logarithm, its text.
    """

    diagram: str
    genus: int
    kind: str
    value: int
    raw_value: Union[Fraction, str]
    exact: bool = True
    witness: dict = field(default_factory=dict)
    rows: List[dict] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram,
            "genus": self.genus,
            "bound": self.kind,
            "value": self.value,
            "raw_value": str(self.raw_value),
            "exact": self.exact,
            "witness": self.witness,
            "warnings": self.warnings,
        }

    def records(self) -> List[dict]:
        return self.rows + [self.to_dict()]


def tunnel_lower_bound(
    diagram: Diagram,
    genus: Optional[int],
    family: GFamily,
    budget: Optional[int] = None,
) -> BoundReport:
    """
    max over flows of ceil(dim_F / d) - 1.

    Args:
        diagram: The diagram
        genus: Declared genus, or None to use the computed one
        family: Alexander family
        budget: Brute-force budget for the flow search

    Raises:
        GenusMismatchError: If the declared genus is wrong
        DescriptorError: If the family is not an Alexander family
    """
    g = checked_genus(diagram, genus)
    table = flow_dimension_table(diagram, family, budget)
    d = family.d
    best = max(table, key=lambda row: (row.dimension, -row.flow.index))
    raw = Fraction(best.dimension, d) - 1
    value = -(-best.dimension // d) - 1

    rows = []
    for row in table:
        record = row.to_dict()
        record["contribution"] = -(-row.dimension // d) - 1
        rows.append(record)
    report = BoundReport(
        diagram=diagram.name or "diagram",
        genus=g,
        kind="tunnel",
        value=value,
        raw_value=raw,
        witness={
            "flow": best.flow.index,
            "assignment": best.flow.labels(),
            "family": family.name,
            "dimension": best.dimension,
        },
        rows=rows,
    )
    LOG.info("%s: tunnel number >= %d (dim %d, d=%d)", report.diagram, value, best.dimension, d)
    return report


def best_tunnel_lower_bound(
    diagram: Diagram,
    genus: Optional[int],
    families: Sequence[GFamily],
    budget: Optional[int] = None,
) -> BoundReport:
    """
    The strongest tunnel bound over every Alexander family given.

    Table families have no dimension and are skipped with a warning. On a
    tie the earliest family is the witness; `witness["compared"]` lists
    the value each family reached.

    Raises:
        DescriptorError: If no family is an Alexander family
    """
    linear = [f for f in families if f.is_linear]
    if not linear:
        raise DescriptorError("--family", "the tunnel bound needs an Alexander family")
    reports = [tunnel_lower_bound(diagram, genus, family, budget) for family in linear]
    best = max(reports, key=lambda report: report.raw_value)
    if len(reports) > 1:
        best.witness["compared"] = {r.witness["family"]: r.value for r in reports}
    skipped = [f.name for f in families if not f.is_linear]
    if skipped:
        best.warnings.append(f"table families skipped: {', '.join(skipped)}")
    return best


def _largest_power_at_most(base: int, limit: int) -> int:
    m, power = 0, base
    while power <= limit:
        m += 1
        power *= base
    return m


def cutting_lower_bound(
    diagram: Diagram,
    genus: Optional[int],
    group: FiniteGroup,
    families: Sequence[GFamily],
    budget: Optional[int] = None,
) -> BoundReport:
    """
    ceil(g - log_|G| T), T the number of flows trivial for every family.

    The logarithm is never evaluated in floating point: with m the largest
    integer such that |G|^m <= T, the rounded bound is g - m.

    Raises:
        GenusMismatchError: If the declared genus is wrong
        GroupMismatchError: If a family lives over another group
    """
    g = checked_genus(diagram, genus)
    for family in families:
        if family.group != group:
            raise GroupMismatchError(repr(group), f"{family.name} over {family.group!r}")
    name = diagram.name or "diagram"
    warnings: List[str] = []
    if group.order == 1:
        warnings.append("the trivial group gives no information")
        return BoundReport(name, g, "cutting", 0, Fraction(0), witness={"group": group.name}, warnings=warnings)

    trivial = count_trivial_flows(diagram, group, families, budget)
    m = _largest_power_at_most(group.order, trivial)
    if group.order ** m == trivial:
        raw: Union[Fraction, str] = Fraction(g - m)
    else:
        raw = f"{g} - log_{group.order}({trivial})"
    if families:
        warnings.append(
            "trivial flows counted relative to "
            + ", ".join(f.name for f in families)
            + "; the bound is sound but may be weak"
        )
    else:
        warnings.append("no families given: every flow counts as trivial")

    report = BoundReport(
        diagram=name,
        genus=g,
        kind="cutting",
        value=max(0, g - m),
        raw_value=raw,
        exact=False,
        witness={
            "group": group.name,
            "families": [f.name for f in families],
            "trivial_flows": trivial,
        },
        warnings=warnings,
    )
    LOG.info("%s: cutting number >= %d (T=%d)", name, report.value, trivial)
    return report


# Constituent Test Report
@dataclass
class ConstituentTestReport:
    """
    Outcome of a constituent test of H' (small) against H (big).

    "obstructed" proves H' is not a constituent of H; "not-obstructed"
    proves nothing.
    """

    small: str
    big: str
    small_genus: int
    big_genus: int
    method: str
    obstructed: bool
    exact: bool = True
    rows: List[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "obstructed" if self.obstructed else "not-obstructed"

    def to_dict(self) -> dict:
        result = {
            "small": self.small,
            "big": self.big,
            "small_genus": self.small_genus,
            "big_genus": self.big_genus,
            "method": self.method,
            "verdict": self.verdict,
            "exact": self.exact,
        }
        result.update(self.details)
        result["warnings"] = self.warnings
        return result

    def records(self) -> List[dict]:
        return self.rows + [self.to_dict()]


def constituent_obstruction_coloring(
    small: Diagram,
    small_genus: Optional[int],
    small_flow: GFlow,
    big: Diagram,
    big_genus: Optional[int],
    family: GFamily,
    budget: Optional[int] = None,
) -> ConstituentTestReport:
    """
    Obstructed iff every flow of the big diagram with the same image as
    small_flow has dim' - dim > d (g - g').

    Raises:
        GenusMismatchError: If a declared genus is wrong
        GenusOrderError: If g' >= g
        GroupMismatchError: If the family and the flow use different groups
    """
    g_small = checked_genus(small, small_genus)
    g_big = checked_genus(big, big_genus)
    if g_small >= g_big:
        raise GenusOrderError(g_small, g_big, strict=True)
    if family.group != small_flow.group:
        raise GroupMismatchError(repr(small_flow.group), f"{family.name} over {family.group!r}")

    small_dimension = coloring_dimension(small, small_flow, family)
    small_image = flow_image(small_flow)
    threshold = family.d * (g_big - g_small)

    rows = []
    matching = 0
    obstructed = True
    for row in flow_dimension_table(big, family, budget):
        record = row.to_dict()
        record["matches"] = row.image == small_image
        if record["matches"]:
            matching += 1
            record["difference"] = small_dimension - row.dimension
            if small_dimension - row.dimension <= threshold:
                obstructed = False
        rows.append(record)

    report = ConstituentTestReport(
        small=small.name or "small",
        big=big.name or "big",
        small_genus=g_small,
        big_genus=g_big,
        method="coloring",
        obstructed=obstructed,
        rows=rows,
        details={
            "flow": small_flow.index,
            "image": _image_labels(small_flow, small_image),
            "dimension": small_dimension,
            "threshold": threshold,
            "matching_flows": matching,
            "family": family.name,
        },
    )
    if matching == 0:
        report.warnings.append("no flow of the big diagram has the same image")
    LOG.info("%s vs %s: %s", report.small, report.big, report.verdict)
    return report


def constituent_obstruction_flowcount(
    small: Diagram,
    big: Diagram,
    group: FiniteGroup,
    families: Sequence[GFamily],
    small_genus: Optional[int] = None,
    big_genus: Optional[int] = None,
    budget: Optional[int] = None,
) -> ConstituentTestReport:
    """
    Obstructed iff T' > T for the relative trivial-flow counts.

    Both counts over-approximate, so the verdict is only exact when the
    small diagram has no crossings (T' = |G|^g' then); otherwise it is a
    heuristic and the report says so.

    Raises:
        GenusMismatchError: If a declared genus is wrong
        GenusOrderError: If g' > g
    """
    g_small = checked_genus(small, small_genus)
    g_big = checked_genus(big, big_genus)
    if g_small > g_big:
        raise GenusOrderError(g_small, g_big, strict=False)

    t_small = count_trivial_flows(small, group, families, budget)
    t_big = count_trivial_flows(big, group, families, budget)
    exact = small.n1 == 0
    report = ConstituentTestReport(
        small=small.name or "small",
        big=big.name or "big",
        small_genus=g_small,
        big_genus=g_big,
        method="flowcount",
        obstructed=t_small > t_big,
        exact=exact,
        details={
            "group": group.name,
            "families": [f.name for f in families],
            "trivial_small": t_small,
            "trivial_big": t_big,
        },
    )
    if not exact:
        report.warnings.append("both trivial-flow counts are over-counts; the verdict is heuristic")
    LOG.info("%s vs %s: T'=%d T=%d %s", report.small, report.big, t_small, t_big, report.verdict)
    return report
