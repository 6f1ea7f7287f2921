"""
Built-in diagrams.

Knots come from closed braids and are stored as their payloads; the
trivial handlebody-knots O_g are chains of circles joined by edges.
Entries marked `construction` are built from other entries, so the knot
they contain is a constituent of them by construction.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import networkx as nx

from .exceptions import DiagramValidationError, HKColorError
from .models import NEGATIVE, POSITIVE, Crossing, Diagram, DiagramRecord, Loop
from .moves import add_tunnel
from .parser import genus, parse_diagram, serialize

LOG = logging.getLogger(__name__)


# Braid closures
def braid_closure(word: Sequence[int], strands: int, name: str = "") -> Diagram:
    """
    The closure of a braid word.

    Letter i > 0 crosses the strand at position i (1-based) over the one at
    position i + 1 left to right; -i is its inverse. Strands run downwards
    and every letter ends the under-strand's arc and starts a new one.

    Args:
        word: Nonzero integers with |i| < strands
        strands: Number of strands

    Raises:
        DiagramValidationError: If a letter is out of range
    """
    if strands < 1:
        raise DiagramValidationError([f"a braid needs at least one strand, got {strands}"])
    for letter in word:
        if letter == 0 or abs(letter) >= strands:
            raise DiagramValidationError([f"braid letter {letter} outside 1..{strands - 1}"])

    top = list(range(1, strands + 1))
    positions = list(top)
    next_label = strands + 1
    records: List[DiagramRecord] = []
    for letter in word:
        i = abs(letter)
        new = next_label
        next_label += 1
        if letter > 0:
            over, under = positions[i - 1], positions[i]
            records.append(Crossing(NEGATIVE, over, under, new))
            positions[i - 1], positions[i] = new, over
        else:
            over, under = positions[i], positions[i - 1]
            records.append(Crossing(POSITIVE, over, under, new))
            positions[i - 1], positions[i] = over, new

    # close up: the bottom of each position is the top of the same position
    closure = nx.utils.UnionFind(range(1, next_label))
    for bottom, start in zip(positions, top):
        closure.union(bottom, start)
    representative: Dict[int, int] = {}
    for group in closure.to_sets():
        low = min(group)
        for arc in group:
            representative[arc] = low

    merged = [r.relabel(representative) for r in records]
    used = sorted(set(representative.values()))
    compact = {old: new for new, old in enumerate(used, start=1)}
    merged = [r.relabel(compact) for r in merged]
    starting = {r.under_out for r in merged}
    merged.extend(Loop(compact[arc]) for arc in used if compact[arc] not in starting)
    return Diagram(len(used), tuple(merged), name=name)


# Catalog Entry
@dataclass(frozen=True)
class CatalogEntry:
    """A named diagram with its genus and where it comes from."""

    name: str
    genus: int
    provenance: str
    payload: Optional[str] = None
    build: Optional[Callable[[], Diagram]] = None
    note: str = ""

    def diagram(self) -> Diagram:
        if self.payload is not None:
            return parse_diagram(self.payload, name=self.name)
        diagram = self.build()
        return Diagram(diagram.arc_count, diagram.records, name=self.name)

    def payload_text(self) -> str:
        return self.payload if self.payload is not None else serialize(self.diagram())

    def to_dict(self) -> dict:
        diagram = self.diagram()
        result = {
            "name": self.name,
            "genus": self.genus,
            "arcs": diagram.arc_count,
            "provenance": self.provenance,
        }
        if self.note:
            result["note"] = self.note
        return result


def _lines(*lines: str) -> str:
    return "\n".join(lines) + "\n"


def _tunnel(entry: str, x: int, y: int) -> Callable[[], Diagram]:
    return lambda: add_tunnel(get_entry(entry).diagram(), x, y)[0]


_ENTRIES: List[CatalogEntry] = [
    CatalogEntry("unknot", 1, "standard", _lines("arcs 1", "X + 1 1 1"), note="one kink"),
    CatalogEntry(
        "trefoil",
        1,
        "standard table, closed braid [1, 1, 1] on 2 strands",
        _lines("arcs 3", "X - 1 2 3", "X - 3 1 2", "X - 2 3 1"),
    ),
    CatalogEntry(
        "figure-eight",
        1,
        "standard table, closed braid [1, -2, 1, -2] on 3 strands",
        _lines("arcs 4", "X - 1 2 4", "X + 3 1 2", "X - 4 3 1", "X + 2 4 3"),
    ),
    CatalogEntry(
        "8_18",
        1,
        "standard table, closed braid [1, -2] * 4 on 3 strands",
        _lines(
            "arcs 8",
            "X - 1 2 4", "X + 3 1 5", "X - 4 3 6", "X + 5 4 7",
            "X - 6 5 8", "X + 7 6 2", "X - 8 7 1", "X + 2 8 3",
        ),
    ),
    CatalogEntry("O_1", 1, "standard", _lines("arcs 1", "loop 1"), note="trivial, one circle"),
    CatalogEntry(
        "O_2", 2, "standard", _lines("arcs 3", "V - 1 2 1", "V + 3 2 3"),
        note="trivial, two circles joined by an edge",
    ),
    CatalogEntry(
        "O_3",
        3,
        "standard",
        _lines("arcs 6", "V - 1 2 1", "V + 4 2 3", "V - 4 5 3", "V + 6 5 6"),
        note="trivial, chain of three circles",
    ),
    CatalogEntry(
        "O_4",
        4,
        "standard",
        _lines(
            "arcs 9",
            "V - 1 2 1", "V + 4 2 3", "V - 4 5 3",
            "V + 7 5 6", "V - 7 8 6", "V + 9 8 9",
        ),
        note="trivial, chain of four circles",
    ),
    CatalogEntry("theta", 2, "standard", _lines("arcs 3", "V - 1 2 3", "V + 1 2 3"), note="planar theta curve"),
    CatalogEntry(
        "tetrahedron",
        3,
        "standard",
        _lines("arcs 6", "V + 1 2 4", "V + 4 3 5", "V - 1 6 5", "V - 2 3 6"),
        note="crossing-free K_4 graph; edges 4 and 6 join same-sign vertices",
    ),
    CatalogEntry(
        "E-worked",
        2,
        "transcribed",
        _lines("arcs 5", "X - 3 5 1", "X - 1 3 2", "V + 2 4 3", "V - 4 5 1"),
        note="rows match the worked coloring matrix; not an authoritative drawing",
    ),
    CatalogEntry(
        "trefoil+tunnel", 2, "construction", build=_tunnel("trefoil", 1, 3),
        note="trefoil with an edge joining arcs 1 and 3",
    ),
    CatalogEntry(
        "8_18+tunnel", 2, "construction", build=_tunnel("8_18", 1, 4),
        note="8_18 with an edge joining arcs 1 and 4",
    ),
]

_BY_NAME: Dict[str, CatalogEntry] = {entry.name: entry for entry in _ENTRIES}


def list_entries() -> List[CatalogEntry]:
    return list(_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    """
    Look up a catalog entry.

    Raises:
        KeyError: If no entry has that name
    """
    if name not in _BY_NAME:
        raise KeyError(f"no catalog entry '{name}' (known: {', '.join(_BY_NAME)})")
    return _BY_NAME[name]


def check_entry(entry: CatalogEntry) -> List[str]:
    """Problems with an entry: it must parse, validate and have its genus."""
    problems = []
    try:
        diagram = entry.diagram()
    except HKColorError as e:
        return [f"{entry.name}: {e}"]
    computed = genus(diagram)
    if computed != entry.genus:
        problems.append(f"{entry.name}: declared genus {entry.genus}, computed {computed}")
    return problems
