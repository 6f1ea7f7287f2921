"""
Reidemeister moves R1-R6 on diagrams, random move walks, canonical
relabeling and tunnel insertion.

Anchors in a MoveSpec:

    R1 apply   (arc,)                     variant under_first | over_first
    R1 undo    (crossing,)
    R2 apply   (over arc, under arc)
    R2 undo    (crossing, crossing)
    R3 apply   (crossing a, crossing b, crossing c)   both directions
    R4 apply   (vertex,)                  variant first_over | second_over
    R4 undo    (vertex, crossing)
    R5 apply   over:  (vertex, crossing)     under: (crossing, vertex)
    R5 undo    over:  (vertex, crossing, crossing)
               under: (crossing, crossing, vertex)
    R6 apply   (vertex, vertex)           both directions

Record indices are 0-based positions in Diagram.records. Every move
rewrites records so that the Wirtinger relations, and the coloring rules,
of the old and new diagram correspond one to one. Planarity of the result
is not checked.
"""

import logging
import random
from collections import Counter, deque
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exceptions import DiagramValidationError, MoveNotApplicableError
from .models import (
    DIRECTIONS,
    MOVE_KINDS,
    NEGATIVE,
    POSITIVE,
    Crossing,
    Diagram,
    DiagramRecord,
    Loop,
    MoveSpec,
    Vertex,
)
from .parser import validate
from .settings import fuzz_seed

LOG = logging.getLogger(__name__)

R1_VARIANTS = ("under_first", "over_first")
R4_VARIANTS = ("first_over", "second_over")
R5_VARIANTS = ("over", "under")

_SLOT_FIELDS = {
    Crossing: ("over", "under_in", "under_out"),
    Vertex: ("a", "b", "c"),
    Loop: ("arc",),
}


# Helpers
def _set_slot(record: DiagramRecord, slot: int, arc: int) -> DiagramRecord:
    return replace(record, **{_SLOT_FIELDS[type(record)][slot - 1]: arc})


class _Site:
    """Lookup tables for one diagram, shared by the pattern matchers."""

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.records = diagram.records
        self.starts = diagram.starts()
        self.ends = diagram.ends()
        self.occurrences = Counter(a for r in diagram.records for a in r.arcs())
        self.over = Counter(r.over for r in diagram.records if isinstance(r, Crossing))

    def only_between(self, arc: int) -> bool:
        """True if the arc appears at exactly its two ends and never as an over arc."""
        return self.occurrences[arc] == 2 and self.over[arc] == 0

    def loop_index(self, arc: int) -> Optional[int]:
        for index, record in enumerate(self.records):
            if isinstance(record, Loop) and record.arc == arc:
                return index
        return None

    def end_of(self, arc: int, kind: str) -> Tuple[int, int]:
        ends = self.ends.get(arc, [])
        if len(ends) != 1:
            raise MoveNotApplicableError(kind, f"arc {arc} does not end exactly once")
        return ends[0]

    def start_of(self, arc: int) -> Optional[Tuple[int, int]]:
        starts = self.starts.get(arc, [])
        return starts[0] if len(starts) == 1 else None


def _anchor(move: MoveSpec, count: int) -> Tuple[int, ...]:
    if len(move.anchor) != count:
        raise MoveNotApplicableError(
            move.kind, f"expected {count} anchor values, got {len(move.anchor)}"
        )
    return tuple(move.anchor)


def _arc(diagram: Diagram, arc: int, kind: str) -> int:
    if not 1 <= arc <= diagram.arc_count:
        raise MoveNotApplicableError(kind, f"arc {arc} does not exist")
    return arc


def _record(diagram: Diagram, index: int, expected: type, kind: str):
    if not 0 <= index < len(diagram.records):
        raise MoveNotApplicableError(kind, f"record {index} does not exist")
    record = diagram.records[index]
    if not isinstance(record, expected):
        raise MoveNotApplicableError(
            kind, f"record {index} ({record.to_line()}) is not a {expected.__name__.lower()}"
        )
    return record


def _distinct(kind: str, *indices: int) -> None:
    if len(set(indices)) != len(indices):
        raise MoveNotApplicableError(kind, "anchor records must be distinct")


def _drop(records: Sequence[DiagramRecord], *indices: int) -> List[DiagramRecord]:
    skip = set(indices)
    return [r for i, r in enumerate(records) if i not in skip]


def _finish(diagram: Diagram, records: Sequence[DiagramRecord], kind: str) -> Diagram:
    """Compact arc labels to 1..n, keeping their relative order, and validate."""
    used = sorted({a for r in records for a in r.arcs()})
    mapping = {old: new for new, old in enumerate(used, start=1)}
    result = Diagram(len(used), tuple(r.relabel(mapping) for r in records), name=diagram.name)
    violations = validate(result)
    if violations:
        raise MoveNotApplicableError(kind, f"result is not a valid diagram: {violations[0]}")
    return result


# R1: kinks
def _r1_apply(diagram: Diagram, move: MoveSpec) -> Diagram:
    (x,) = _anchor(move, 1)
    _arc(diagram, x, move.kind)
    if move.variant not in ("",) + R1_VARIANTS:
        raise MoveNotApplicableError(move.kind, f"unknown variant '{move.variant}'")
    site = _Site(diagram)
    records = list(diagram.records)

    loop = site.loop_index(x)
    if loop is not None:
        records[loop] = Crossing(move.sign, x, x, x)
        return _finish(diagram, records, move.kind)

    index, slot = site.end_of(x, move.kind)
    y = diagram.arc_count + 1
    records[index] = _set_slot(records[index], slot, y)
    if move.variant == "over_first":
        records.append(Crossing(move.sign, x, x, y))
    else:
        records.append(Crossing(move.sign, y, x, y))
    return _finish(diagram, records, move.kind)


def _r1_undo(diagram: Diagram, move: MoveSpec) -> Diagram:
    (i,) = _anchor(move, 1)
    c = _record(diagram, i, Crossing, move.kind)
    if c.over not in (c.under_in, c.under_out):
        raise MoveNotApplicableError(move.kind, f"{c.to_line()} is not a kink")
    if c.under_in == c.under_out:
        records = list(diagram.records)
        records[i] = Loop(c.under_in)
    else:
        rename = {c.under_out: c.under_in}
        records = [r.relabel(rename) for r in _drop(diagram.records, i)]
    return _finish(diagram, records, move.kind)


# R2: two crossings with a common over arc
def _r2_apply(diagram: Diagram, move: MoveSpec) -> Diagram:
    x, y = _anchor(move, 2)
    _arc(diagram, x, move.kind)
    _arc(diagram, y, move.kind)
    if x == y:
        raise MoveNotApplicableError(move.kind, "over and under arc must differ")
    site = _Site(diagram)
    records = list(diagram.records)
    y1 = diagram.arc_count + 1

    loop = site.loop_index(y)
    if loop is not None:
        records[loop] = Crossing(move.sign, x, y, y1)
        records.append(Crossing(-move.sign, x, y1, y))
        return _finish(diagram, records, move.kind)

    y2 = diagram.arc_count + 2
    index, slot = site.end_of(y, move.kind)
    records[index] = _set_slot(records[index], slot, y2)
    records.append(Crossing(move.sign, x, y, y1))
    records.append(Crossing(-move.sign, x, y1, y2))
    return _finish(diagram, records, move.kind)


def _r2_undo(diagram: Diagram, move: MoveSpec) -> Diagram:
    i, j = _anchor(move, 2)
    _distinct(move.kind, i, j)
    ci = _record(diagram, i, Crossing, move.kind)
    cj = _record(diagram, j, Crossing, move.kind)
    site = _Site(diagram)
    m = ci.under_out
    if not (ci.over == cj.over and ci.sign == -cj.sign and cj.under_in == m):
        raise MoveNotApplicableError(move.kind, "crossings do not form a bigon")
    if not site.only_between(m) or ci.under_in == m:
        raise MoveNotApplicableError(move.kind, f"middle arc {m} is used elsewhere")

    y, y2 = ci.under_in, cj.under_out
    records = _drop(diagram.records, i, j)
    if y2 == y:
        records.append(Loop(y))
    else:
        records = [r.relabel({y2: y}) for r in records]
    return _finish(diagram, records, move.kind)


# R3: sliding a strand across a crossing
def _r3(diagram: Diagram, move: MoveSpec, forward: bool) -> Diagram:
    ia, ib, ic = _anchor(move, 3)
    _distinct(move.kind, ia, ib, ic)
    ca = _record(diagram, ia, Crossing, move.kind)
    cb = _record(diagram, ib, Crossing, move.kind)
    cc = _record(diagram, ic, Crossing, move.kind)
    site = _Site(diagram)
    t, s = ca.over, ca.sign
    m0, m1 = ca.under_in, ca.under_out
    b0, b1 = cb.under_in, cb.under_out

    if forward:
        matches = (
            cb.over == t and cb.sign == s and cc.over == m1 and cc.under_in == b1
        )
    else:
        matches = (
            cb.over == m0 and cc.over == t and cc.sign == s and cc.under_in == b1
        )
    if not matches or not site.only_between(b1):
        raise MoveNotApplicableError(move.kind, "crossings do not form a triangle")

    records = list(diagram.records)
    r, b2 = (cc.sign if forward else cb.sign), cc.under_out
    if forward:
        records[ib] = Crossing(r, m0, b0, b1)
        records[ic] = Crossing(s, t, b1, b2)
    else:
        records[ib] = Crossing(s, t, b0, b1)
        records[ic] = Crossing(r, m1, b1, b2)
    return _finish(diagram, records, move.kind)


# R4: twisting the ends of a vertex
def _r4_apply(diagram: Diagram, move: MoveSpec) -> Diagram:
    (i,) = _anchor(move, 1)
    v = _record(diagram, i, Vertex, move.kind)
    variant = move.variant or "first_over"
    if variant not in R4_VARIANTS:
        raise MoveNotApplicableError(move.kind, f"unknown variant '{move.variant}'")
    new = diagram.arc_count + 1
    if v.sign == POSITIVE:
        if variant == "first_over":
            vertex, crossing = Vertex(POSITIVE, new, v.a, v.c), Crossing(NEGATIVE, v.a, v.b, new)
        else:
            vertex, crossing = Vertex(POSITIVE, v.b, new, v.c), Crossing(POSITIVE, v.b, v.a, new)
    else:
        if variant == "second_over":
            vertex, crossing = Vertex(NEGATIVE, v.b, new, v.c), Crossing(NEGATIVE, v.b, new, v.a)
        else:
            vertex, crossing = Vertex(NEGATIVE, new, v.a, v.c), Crossing(POSITIVE, v.a, new, v.b)
    records = list(diagram.records)
    records[i] = vertex
    records.append(crossing)
    return _finish(diagram, records, move.kind)


def _r4_matches(v: Vertex, c: Crossing):
    """Yield (variant, restored vertex, intermediate arc) for each matching twist."""
    if v.sign == POSITIVE:
        if c.sign == NEGATIVE and c.under_out == v.a and c.over == v.b:
            yield "first_over", Vertex(POSITIVE, v.b, c.under_in, v.c), v.a
        if c.sign == POSITIVE and c.under_out == v.b and c.over == v.a:
            yield "second_over", Vertex(POSITIVE, c.under_in, v.a, v.c), v.b
    else:
        if c.sign == NEGATIVE and c.under_in == v.b and c.over == v.a:
            yield "second_over", Vertex(NEGATIVE, c.under_out, v.a, v.c), v.b
        if c.sign == POSITIVE and c.under_in == v.a and c.over == v.b:
            yield "first_over", Vertex(NEGATIVE, v.b, c.under_out, v.c), v.a


def _r4_undo(diagram: Diagram, move: MoveSpec) -> Diagram:
    i, j = _anchor(move, 2)
    v = _record(diagram, i, Vertex, move.kind)
    c = _record(diagram, j, Crossing, move.kind)
    site = _Site(diagram)
    for variant, vertex, middle in _r4_matches(v, c):
        if move.variant and move.variant != variant:
            continue
        if not site.only_between(middle):
            continue
        records = list(diagram.records)
        records[i] = vertex
        return _finish(diagram, _drop(records, j), move.kind)
    raise MoveNotApplicableError(move.kind, f"{c.to_line()} is not a twist of {v.to_line()}")


# R5: passing a strand across a vertex
def _r5_apply(diagram: Diagram, move: MoveSpec) -> Diagram:
    variant = move.variant or "over"
    if variant not in R5_VARIANTS:
        raise MoveNotApplicableError(move.kind, f"unknown variant '{move.variant}'")
    records = list(diagram.records)
    n = diagram.arc_count
    site = _Site(diagram)

    if variant == "under":
        ci, vi = _anchor(move, 2)
        c = _record(diagram, ci, Crossing, move.kind)
        v = _record(diagram, vi, Vertex, move.kind)
        if c.over != v.c:
            raise MoveNotApplicableError(move.kind, f"{c.to_line()} does not pass under arc {v.c}")
        tm = n + 1
        if c.sign == POSITIVE:
            first, second = (v.a, v.b)
        else:
            first, second = (v.b, v.a)
        records[ci] = Crossing(c.sign, first, c.under_in, tm)
        records.append(Crossing(c.sign, second, tm, c.under_out))
        return _finish(diagram, records, move.kind)

    vi, ci = _anchor(move, 2)
    v = _record(diagram, vi, Vertex, move.kind)
    c = _record(diagram, ci, Crossing, move.kind)
    t, s = c.over, c.sign
    if v.sign == POSITIVE:
        if c.under_in != v.c or not site.only_between(v.c):
            raise MoveNotApplicableError(move.kind, f"arc {v.c} does not run from the vertex under one crossing")
        a1, b1 = n + 1, n + 2
        records[vi] = Vertex(POSITIVE, a1, b1, c.under_out)
        records[ci] = Crossing(s, t, v.a, a1)
        records.append(Crossing(s, t, v.b, b1))
    else:
        if c.under_out != v.c or not site.only_between(v.c):
            raise MoveNotApplicableError(move.kind, f"arc {v.c} does not run under one crossing into the vertex")
        a0, b0 = n + 1, n + 2
        records[vi] = Vertex(NEGATIVE, a0, b0, c.under_in)
        records[ci] = Crossing(s, t, a0, v.a)
        records.append(Crossing(s, t, b0, v.b))
    return _finish(diagram, records, move.kind)


def _r5_undo(diagram: Diagram, move: MoveSpec) -> Diagram:
    variant = move.variant or "over"
    if variant not in R5_VARIANTS:
        raise MoveNotApplicableError(move.kind, f"unknown variant '{move.variant}'")
    records = list(diagram.records)
    site = _Site(diagram)

    if variant == "under":
        i, j, vi = _anchor(move, 3)
        _distinct(move.kind, i, j)
        c1 = _record(diagram, i, Crossing, move.kind)
        c2 = _record(diagram, j, Crossing, move.kind)
        v = _record(diagram, vi, Vertex, move.kind)
        tm = c1.under_out
        expected = (v.a, v.b) if c1.sign == POSITIVE else (v.b, v.a)
        if not (
            c1.sign == c2.sign
            and c2.under_in == tm
            and (c1.over, c2.over) == expected
            and site.only_between(tm)
        ):
            raise MoveNotApplicableError(move.kind, "crossings do not pass under both vertex arcs")
        records[i] = Crossing(c1.sign, v.c, c1.under_in, c2.under_out)
        return _finish(diagram, _drop(records, j), move.kind)

    vi, i, j = _anchor(move, 3)
    _distinct(move.kind, i, j)
    v = _record(diagram, vi, Vertex, move.kind)
    ca = _record(diagram, i, Crossing, move.kind)
    cb = _record(diagram, j, Crossing, move.kind)
    if not (ca.sign == cb.sign and ca.over == cb.over):
        raise MoveNotApplicableError(move.kind, "crossings do not share an over arc and sign")
    if not (site.only_between(v.a) and site.only_between(v.b)):
        raise MoveNotApplicableError(move.kind, "vertex arcs are used elsewhere")
    s, t = ca.sign, ca.over
    new = diagram.arc_count + 1
    if v.sign == POSITIVE:
        if not (ca.under_out == v.a and cb.under_out == v.b):
            raise MoveNotApplicableError(move.kind, "crossings do not feed the vertex")
        records[vi] = Vertex(POSITIVE, ca.under_in, cb.under_in, new)
        records[i] = Crossing(s, t, new, v.c)
    else:
        if not (ca.under_in == v.a and cb.under_in == v.b):
            raise MoveNotApplicableError(move.kind, "crossings do not follow the vertex")
        records[vi] = Vertex(NEGATIVE, ca.under_out, cb.under_out, new)
        records[i] = Crossing(s, t, v.c, new)
    return _finish(diagram, _drop(records, j), move.kind)


# R6: the IH move on an edge between two vertices
def _r6(diagram: Diagram, move: MoveSpec, forward: bool) -> Diagram:
    i, j = _anchor(move, 2)
    _distinct(move.kind, i, j)
    vi = _record(diagram, i, Vertex, move.kind)
    vj = _record(diagram, j, Vertex, move.kind)
    site = _Site(diagram)
    if vi.sign != vj.sign:
        raise MoveNotApplicableError(move.kind, "vertices have different signs")

    if vi.sign == POSITIVE:
        e = vi.c
        joined = (vj.a if forward else vj.b) == e
    else:
        e = vj.c
        joined = (vi.b if forward else vi.a) == e
    if not joined or not site.only_between(e):
        raise MoveNotApplicableError(move.kind, "vertices are not joined by a free edge")

    records = list(diagram.records)
    if vi.sign == POSITIVE and forward:
        a, b, d, f = vi.a, vi.b, vj.b, vj.c
        records[i], records[j] = Vertex(POSITIVE, b, d, e), Vertex(POSITIVE, a, e, f)
    elif vi.sign == POSITIVE:
        a, b, d, f = vj.a, vi.a, vi.b, vj.c
        records[i], records[j] = Vertex(POSITIVE, a, b, e), Vertex(POSITIVE, e, d, f)
    elif forward:
        a, f, b, d = vi.a, vi.c, vj.a, vj.b
        records[i], records[j] = Vertex(NEGATIVE, e, d, f), Vertex(NEGATIVE, a, b, e)
    else:
        a, b, d, f = vj.a, vj.b, vi.b, vi.c
        records[i], records[j] = Vertex(NEGATIVE, a, e, f), Vertex(NEGATIVE, b, d, e)
    return _finish(diagram, records, move.kind)


_MOVES: Dict[Tuple[str, str], Callable[[Diagram, MoveSpec], Diagram]] = {
    ("R1", "apply"): _r1_apply,
    ("R1", "undo"): _r1_undo,
    ("R2", "apply"): _r2_apply,
    ("R2", "undo"): _r2_undo,
    ("R3", "apply"): lambda d, m: _r3(d, m, forward=True),
    ("R3", "undo"): lambda d, m: _r3(d, m, forward=False),
    ("R4", "apply"): _r4_apply,
    ("R4", "undo"): _r4_undo,
    ("R5", "apply"): _r5_apply,
    ("R5", "undo"): _r5_undo,
    ("R6", "apply"): lambda d, m: _r6(d, m, forward=True),
    ("R6", "undo"): lambda d, m: _r6(d, m, forward=False),
}


def apply_move(diagram: Diagram, move: MoveSpec) -> Diagram:
    """
    Apply one move and return the new diagram.

    Args:
        diagram: A valid diagram
        move: Kind, direction, anchor and variant of the move

    Returns:
        A new valid Diagram with compacted arc labels

    Raises:
        MoveNotApplicableError: If the pattern does not match at the anchor
    """
    handler = _MOVES.get((move.kind, move.direction))
    if handler is None:
        raise MoveNotApplicableError(move.kind, f"unknown move {move.kind}/{move.direction}")
    if move.sign not in (POSITIVE, NEGATIVE):
        raise MoveNotApplicableError(move.kind, f"sign must be +1 or -1, got {move.sign}")
    result = handler(diagram, move)
    LOG.debug("%s: n=%d -> n=%d", move.describe(), diagram.arc_count, result.arc_count)
    return result


# Finding applicable moves
def _indices(diagram: Diagram, kind: type) -> List[int]:
    return [i for i, r in enumerate(diagram.records) if isinstance(r, kind)]


def _record_at(site: _Site, position: Optional[Tuple[int, int]], kind: type) -> Optional[int]:
    if position is None or not isinstance(site.records[position[0]], kind):
        return None
    return position[0]


def _single_end(site: _Site, arc: int) -> Optional[Tuple[int, int]]:
    ends = site.ends.get(arc, [])
    return ends[0] if len(ends) == 1 else None


def candidate_moves(diagram: Diagram, kind: str, direction: str) -> List[MoveSpec]:
    """
    List the anchored moves of one kind and direction that match the diagram.

    R1 and R2 apply, which fit anywhere, are left to the caller.
    """
    site = _Site(diagram)
    crossings = _indices(diagram, Crossing)
    vertices = _indices(diagram, Vertex)
    found: List[MoveSpec] = []

    def add(anchor, variant="") -> None:
        found.append(MoveSpec(kind, direction, tuple(anchor), variant))

    if (kind, direction) == ("R1", "undo"):
        for i in crossings:
            c = site.records[i]
            if c.over in (c.under_in, c.under_out):
                add((i,))

    elif (kind, direction) == ("R2", "undo"):
        for i in crossings:
            j = _record_at(site, _single_end(site, site.records[i].under_out), Crossing)
            if j is not None and j != i:
                add((i, j))

    elif kind == "R3":
        for ic in crossings:
            cc = site.records[ic]
            ib = _record_at(site, site.start_of(cc.under_in), Crossing)
            if ib is None:
                continue
            cb = site.records[ib]
            if direction == "apply":
                ia = _record_at(site, site.start_of(cc.over), Crossing)
            else:
                ia = _record_at(site, _single_end(site, cb.over), Crossing)
            if ia is not None and len({ia, ib, ic}) == 3:
                add((ia, ib, ic))

    elif (kind, direction) == ("R4", "apply"):
        for i in vertices:
            for variant in R4_VARIANTS:
                add((i,), variant)

    elif (kind, direction) == ("R4", "undo"):
        for i in vertices:
            v = site.records[i]
            for arc in v.arcs():
                for position in site.starts.get(arc, []) + site.ends.get(arc, []):
                    j = _record_at(site, position, Crossing)
                    if j is not None:
                        for variant, _, _ in _r4_matches(v, site.records[j]):
                            add((i, j), variant)

    elif (kind, direction) == ("R5", "apply"):
        for i in vertices:
            v = site.records[i]
            position = _single_end(site, v.c) if v.sign == POSITIVE else site.start_of(v.c)
            j = _record_at(site, position, Crossing)
            if j is not None:
                add((i, j), "over")
            for j in crossings:
                if site.records[j].over == v.c:
                    add((j, i), "under")

    elif (kind, direction) == ("R5", "undo"):
        for i in vertices:
            v = site.records[i]
            if v.sign == POSITIVE:
                ja = _record_at(site, site.start_of(v.a), Crossing)
                jb = _record_at(site, site.start_of(v.b), Crossing)
            else:
                ja = _record_at(site, _single_end(site, v.a), Crossing)
                jb = _record_at(site, _single_end(site, v.b), Crossing)
            if ja is not None and jb is not None and ja != jb:
                add((i, ja, jb), "over")
        for i in crossings:
            j = _record_at(site, _single_end(site, site.records[i].under_out), Crossing)
            if j is None or j == i:
                continue
            for k in vertices:
                add((i, j, k), "under")

    elif kind == "R6":
        for i in vertices:
            for j in vertices:
                if i != j:
                    add((i, j))

    applicable = []
    for move in found:
        try:
            apply_move(diagram, move)
        except MoveNotApplicableError:
            continue
        applicable.append(move)
    return applicable


# Random walks
@dataclass
class WalkReport:
    """Outcome of a random move walk."""

    diagram: Diagram
    seed: int
    applied: List[MoveSpec] = field(default_factory=list)
    skipped: int = 0
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        result = {
            "seed": self.seed,
            "applied": len(self.applied),
            "skipped": self.skipped,
            "arcs": self.diagram.arc_count,
            "moves": [m.describe() for m in self.applied],
        }
        if self.warnings:
            result["warnings"] = self.warnings
        return result


def _sample_move(diagram: Diagram, kind: str, direction: str, rng: random.Random) -> Optional[MoveSpec]:
    sign = rng.choice((POSITIVE, NEGATIVE))
    n = diagram.arc_count
    if (kind, direction) == ("R1", "apply"):
        return MoveSpec(kind, direction, (rng.randint(1, n),), rng.choice(R1_VARIANTS), sign)
    if (kind, direction) == ("R2", "apply"):
        if n < 2:
            return None
        return MoveSpec(kind, direction, tuple(rng.sample(range(1, n + 1), 2)), "", sign)
    candidates = candidate_moves(diagram, kind, direction)
    return rng.choice(candidates) if candidates else None


def walk_with_report(
    diagram: Diagram,
    steps: int,
    seed: Optional[int] = None,
    kinds: Sequence[str] = MOVE_KINDS,
) -> WalkReport:
    """
    Sample `steps` random moves; inapplicable samples are skipped and counted.

    The walk is deterministic for a given seed (HKCOLOR_FUZZ_SEED when
    no seed is passed).
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    seed = fuzz_seed(seed)
    rng = random.Random(seed)
    report = WalkReport(diagram=diagram, seed=seed)
    current = diagram
    for step in range(steps):
        kind = rng.choice(list(kinds))
        direction = rng.choice(DIRECTIONS)
        move = _sample_move(current, kind, direction, rng)
        if move is None:
            report.skipped += 1
            LOG.debug("step %d: no %s %s location", step, kind, direction)
            continue
        try:
            current = apply_move(current, move)
        except MoveNotApplicableError as e:
            report.skipped += 1
            report.warnings.append(f"step {step}: skipped {move.describe()}: {e.reason}")
            continue
        report.applied.append(move)
    report.diagram = current
    LOG.info(
        "walk seed=%d: %d moves applied, %d skipped, n=%d",
        seed, len(report.applied), report.skipped, current.arc_count,
    )
    return report


def random_move_walk(diagram: Diagram, steps: int, seed: Optional[int] = None) -> Diagram:
    """The diagram reached by walk_with_report."""
    return walk_with_report(diagram, steps, seed=seed).diagram


# Canonical relabeling
def _record_key(record: DiagramRecord):
    rank = {Crossing: 0, Vertex: 1, Loop: 2}[type(record)]
    return (rank, getattr(record, "sign", 0), record.arcs())


def canonical_form(diagram: Diagram, start: int = 1) -> Diagram:
    """
    Relabel arcs in breadth-first order from `start` and sort the records.

    From an arc, the walk visits the records where the arc starts and ends
    and labels their arcs in slot order. Components not reached continue
    from their lowest original label.
    """
    starts, ends = diagram.starts(), diagram.ends()
    order: List[int] = []
    seen = set()

    def visit(root: int) -> None:
        queue = deque([root])
        seen.add(root)
        while queue:
            arc = queue.popleft()
            order.append(arc)
            for index, _ in starts.get(arc, []) + ends.get(arc, []):
                for other in diagram.records[index].arcs():
                    if other not in seen:
                        seen.add(other)
                        queue.append(other)

    if diagram.arc_count:
        visit(start)
    for arc in diagram.arcs:
        if arc not in seen:
            visit(arc)
    mapping = {old: new for new, old in enumerate(order, start=1)}
    records = sorted((r.relabel(mapping) for r in diagram.records), key=_record_key)
    return Diagram(diagram.arc_count, tuple(records), name=diagram.name)


def is_isomorphic(first: Diagram, second: Diagram) -> bool:
    """True if some starting arc makes the canonical forms agree."""
    if first.arc_count != second.arc_count or len(first.records) != len(second.records):
        return False
    target = canonical_form(first, 1)
    return any(canonical_form(second, s) == target for s in second.arcs)


# Tunnels
def add_tunnel(diagram: Diagram, x: int, y: int) -> Tuple[Diagram, int]:
    """
    Join the end of arc x to the end of arc y by a new edge e.

    A negative vertex `V - x' e x` is inserted where x ends and a positive
    vertex `V + y e y'` where y ends; a closed loop needs no primed arc.
    Any flow of the old diagram extends by rho(e) = e.

    Returns:
        (new diagram, label of the new edge)

    Raises:
        DiagramValidationError: If x or y is not an arc of the diagram
    """
    for arc in (x, y):
        if not 1 <= arc <= diagram.arc_count:
            raise DiagramValidationError([f"arc {arc} does not exist"])
    records = list(diagram.records)
    next_label = diagram.arc_count + 1
    e = next_label
    next_label += 1

    for arc, sign in ((x, NEGATIVE), (y, POSITIVE)):
        site = _Site(Diagram(next_label - 1, tuple(records)))
        loop = site.loop_index(arc)
        if loop is not None:
            records[loop] = Vertex(sign, arc, e, arc)
            continue
        index, slot = site.end_of(arc, "tunnel")
        primed = next_label
        next_label += 1
        records[index] = _set_slot(records[index], slot, primed)
        if sign == NEGATIVE:
            records.append(Vertex(NEGATIVE, primed, e, arc))
        else:
            records.append(Vertex(POSITIVE, arc, e, primed))

    result = Diagram(next_label - 1, tuple(records), name=diagram.name)
    violations = validate(result)
    if violations:
        raise DiagramValidationError(violations)
    return result, e
