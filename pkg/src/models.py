"""
Domain models for handlebody-link diagrams.

A diagram is a list of records over arcs labelled 1..n. An arc runs from
one under-crossing or vertex to the next; the over-strand of a crossing
does not break it. Each record says where arcs start and end:

* Crossing `X s v u_in u_out`: u_in ends, u_out starts, v passes over.
* Vertex `V + a b c`: a and b end at the vertex, c starts there.
* Vertex `V - a b c`: c ends at the vertex, a and b start there.
* Loop `loop x`: x is a closed circle with no under-crossing.

The Wirtinger relations read rho(a) rho(b) = rho(c) at every vertex and
rho(w) = rho(v)^-1 rho(u) rho(v) at every crossing, where (u, w) is
(u_in, u_out) for a positive crossing and (u_out, u_in) for a negative one.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

POSITIVE = 1
NEGATIVE = -1


def sign_token(sign: int) -> str:
    return "+" if sign == POSITIVE else "-"


# Crossing Record
@dataclass(frozen=True)
class Crossing:
    """A classical crossing; `over` passes over the under-strand."""

    sign: int
    over: int
    under_in: int
    under_out: int

    @property
    def u(self) -> int:
        return self.under_in if self.sign == POSITIVE else self.under_out

    @property
    def v(self) -> int:
        return self.over

    @property
    def w(self) -> int:
        return self.under_out if self.sign == POSITIVE else self.under_in

    def arcs(self) -> Tuple[int, ...]:
        return (self.over, self.under_in, self.under_out)

    def ending_slots(self) -> Tuple[int, ...]:
        return (2,)

    def starting_slots(self) -> Tuple[int, ...]:
        return (3,)

    def relabel(self, mapping: Mapping[int, int]) -> "Crossing":
        return Crossing(
            self.sign,
            mapping.get(self.over, self.over),
            mapping.get(self.under_in, self.under_in),
            mapping.get(self.under_out, self.under_out),
        )

    def to_line(self) -> str:
        return f"X {sign_token(self.sign)} {self.over} {self.under_in} {self.under_out}"


# Vertex Record
@dataclass(frozen=True)
class Vertex:
    """
    A trivalent vertex with the Wirtinger relation rho(a) rho(b) = rho(c).

    Slots are numbered 1 (a), 2 (b), 3 (c) so that slot numbers line up with
    the field positions of the record line.
    """

    sign: int
    a: int
    b: int
    c: int

    def arcs(self) -> Tuple[int, ...]:
        return (self.a, self.b, self.c)

    def ending_slots(self) -> Tuple[int, ...]:
        return (1, 2) if self.sign == POSITIVE else (3,)

    def starting_slots(self) -> Tuple[int, ...]:
        return (3,) if self.sign == POSITIVE else (1, 2)

    def relabel(self, mapping: Mapping[int, int]) -> "Vertex":
        return Vertex(
            self.sign,
            mapping.get(self.a, self.a),
            mapping.get(self.b, self.b),
            mapping.get(self.c, self.c),
        )

    def to_line(self) -> str:
        return f"V {sign_token(self.sign)} {self.a} {self.b} {self.c}"


# Loop Record
@dataclass(frozen=True)
class Loop:
    """A crossing-free circle component (it may still pass over other arcs)."""

    arc: int

    def arcs(self) -> Tuple[int, ...]:
        return (self.arc,)

    def ending_slots(self) -> Tuple[int, ...]:
        return (1,)

    def starting_slots(self) -> Tuple[int, ...]:
        return (1,)

    def relabel(self, mapping: Mapping[int, int]) -> "Loop":
        return Loop(mapping.get(self.arc, self.arc))

    def to_line(self) -> str:
        return f"loop {self.arc}"


DiagramRecord = Union[Crossing, Vertex, Loop]


def slot_arc(record: DiagramRecord, slot: int) -> int:
    """Arc at a 1-based slot; crossing slot 1 is the over arc."""
    return record.arcs()[slot - 1]


# Diagram
@dataclass(frozen=True)
class Diagram:
    """
    An immutable diagram. Records keep their input order so serialization
    reproduces the source file.
    """

    arc_count: int
    records: Tuple[DiagramRecord, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.arc_count

    @property
    def arcs(self) -> range:
        return range(1, self.arc_count + 1)

    @property
    def crossings(self) -> List[Crossing]:
        return [r for r in self.records if isinstance(r, Crossing)]

    @property
    def vertices(self) -> List[Vertex]:
        return [r for r in self.records if isinstance(r, Vertex)]

    @property
    def loops(self) -> List[Loop]:
        return [r for r in self.records if isinstance(r, Loop)]

    @property
    def n1(self) -> int:
        return len(self.crossings)

    @property
    def n2(self) -> int:
        return len(self.vertices) // 2

    def ends(self) -> Dict[int, List[Tuple[int, int]]]:
        """Arc -> list of (record index, slot) where the arc ends."""
        return self._slot_map("ending_slots")

    def starts(self) -> Dict[int, List[Tuple[int, int]]]:
        """Arc -> list of (record index, slot) where the arc starts."""
        return self._slot_map("starting_slots")

    def _slot_map(self, kind: str) -> Dict[int, List[Tuple[int, int]]]:
        result: Dict[int, List[Tuple[int, int]]] = {}
        for index, record in enumerate(self.records):
            for slot in getattr(record, kind)():
                result.setdefault(slot_arc(record, slot), []).append((index, slot))
        return result

    def relabeled(self, mapping: Mapping[int, int], arc_count: Optional[int] = None) -> "Diagram":
        return Diagram(
            arc_count if arc_count is not None else self.arc_count,
            tuple(r.relabel(mapping) for r in self.records),
            name=self.name,
        )

    def with_records(self, records, arc_count: Optional[int] = None) -> "Diagram":
        return Diagram(
            arc_count if arc_count is not None else self.arc_count,
            tuple(records),
            name=self.name,
        )

    def to_dict(self) -> dict:
        result = {
            "arcs": self.arc_count,
            "crossings": self.n1,
            "vertices": len(self.vertices),
            "loops": len(self.loops),
        }
        if self.name:
            result["name"] = self.name
        return result

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# Move Specification
MOVE_KINDS = ("R1", "R2", "R3", "R4", "R5", "R6")
DIRECTIONS = ("apply", "undo")


@dataclass(frozen=True)
class MoveSpec:
    """
    One Reidemeister move at a location.

    `anchor` holds arc labels for moves that create structure ("apply")
    and record indices for moves that remove or rearrange it ("undo",
    R3, the vertex moves); moves.py documents each kind.
    """

    kind: str
    direction: str = "apply"
    anchor: Tuple[int, ...] = ()
    variant: str = ""
    sign: int = POSITIVE

    def describe(self) -> str:
        anchor = ",".join(str(a) for a in self.anchor)
        text = f"{self.kind} {self.direction} at ({anchor})"
        if self.variant:
            text = f"{text} [{self.variant}]"
        return text


# Parse Result Container
@dataclass
class ParseResult:
    """A parsed diagram together with non-fatal findings."""

    diagram: Diagram
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        result = {"diagram": self.diagram.to_dict()}
        if self.warnings:
            result["warnings"] = self.warnings
        return result
