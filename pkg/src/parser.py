"""
Diagram file parser, serializer and validator.

The format is line oriented with '#' comments:

    arcs <n>
    X <sign> <over> <under_in> <under_out>
    V <sign> <a> <b> <c>
    loop <arc>

Token-level problems (unknown record kind, bad sign, label out of range)
raise MalformedRecordError immediately. Structural problems (dangling arcs,
arcs starting or ending twice, source/sink vertices) are collected by
validate() and raised together in strict mode.
"""

import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Set

import networkx as nx

from .exceptions import DiagramValidationError, MalformedRecordError
from .models import (
    NEGATIVE,
    POSITIVE,
    Crossing,
    Diagram,
    DiagramRecord,
    Loop,
    ParseResult,
    Vertex,
    slot_arc,
)
from .tokenizer import Record, RecordTokenizer

LOG = logging.getLogger(__name__)

SIGN_TOKENS = {"+": POSITIVE, "-": NEGATIVE}
RECORD_KINDS = ("arcs", "X", "V", "loop")


# Diagram Parser Class
class DiagramParser:
    """
    Parser for the diagram file format.

    Usage:
        parser = DiagramParser()
        result = parser.parse(text)
        diagram = result.diagram
    """

    def __init__(self, strict_mode: bool = True):
        """
        Initialize the parser.

        Args:
            strict_mode: If True (default), raise DiagramValidationError for
                structural violations. If False, report them as warnings.
        """
        self.strict_mode = strict_mode
        self.tokenizer = RecordTokenizer()

    def parse(self, content: str, name: str = "") -> ParseResult:
        """
        Parse diagram text.

        Args:
            content: Raw diagram file content
            name: Optional name attached to the diagram

        Returns:
            ParseResult with the diagram and any warnings

        Raises:
            MalformedRecordError: If a line cannot be read
            DiagramValidationError: If the diagram is invalid (strict mode)
        """
        records = self.tokenizer.tokenize(content)
        if not records:
            raise MalformedRecordError("arcs", "diagram is empty")

        header = records[0]
        if header.kind != "arcs":
            raise MalformedRecordError(
                header.kind,
                "diagram must start with 'arcs <n>'",
                line_number=header.line_number,
                column=header.column_of(0),
            )
        header.expect_length(2)
        arc_count = header.get_int(1, "arc count")
        if arc_count < 1:
            raise MalformedRecordError(
                "arcs", "arc count must be positive", header.line_number, header.column_of(1)
            )

        parsed: List[DiagramRecord] = []
        line_numbers: List[int] = []
        for record in records[1:]:
            parsed.append(self._parse_record(record, arc_count))
            line_numbers.append(record.line_number)

        diagram = Diagram(arc_count, tuple(parsed), name=name)
        violations = validate(diagram, line_numbers=line_numbers)
        if violations:
            if self.strict_mode:
                raise DiagramValidationError(violations)
            for violation in violations:
                LOG.warning("%s: %s", name or "diagram", violation)
        LOG.debug(
            "parsed %s: n=%d n1=%d n2=%d loops=%d",
            name or "diagram", diagram.n, diagram.n1, diagram.n2, len(diagram.loops),
        )
        return ParseResult(diagram=diagram, warnings=violations)

    def _parse_record(self, record: Record, arc_count: int) -> DiagramRecord:
        if record.kind == "arcs":
            raise MalformedRecordError(
                "arcs", "duplicate 'arcs' header", record.line_number, record.column_of(0)
            )
        if record.kind == "loop":
            record.expect_length(2)
            return Loop(self._arc(record, 1, "arc", arc_count))
        if record.kind not in ("X", "V"):
            raise MalformedRecordError(
                record.kind,
                f"unknown record kind, expected one of {', '.join(RECORD_KINDS)}",
                record.line_number,
                record.column_of(0),
            )

        record.expect_length(5)
        sign = self._sign(record)
        if record.kind == "X":
            return Crossing(
                sign,
                self._arc(record, 2, "over arc", arc_count),
                self._arc(record, 3, "under_in arc", arc_count),
                self._arc(record, 4, "under_out arc", arc_count),
            )
        return Vertex(
            sign,
            self._arc(record, 2, "arc a", arc_count),
            self._arc(record, 3, "arc b", arc_count),
            self._arc(record, 4, "arc c", arc_count),
        )

    def _sign(self, record: Record) -> int:
        token = record.get_field(1)
        if token not in SIGN_TOKENS:
            raise MalformedRecordError(
                record.kind,
                f"sign must be '+' or '-', got '{token}'",
                record.line_number,
                record.column_of(1),
            )
        return SIGN_TOKENS[token]

    def _arc(self, record: Record, index: int, name: str, arc_count: int) -> int:
        label = record.get_int(index, name)
        if not 1 <= label <= arc_count:
            raise MalformedRecordError(
                record.kind,
                f"{name} {label} outside 1..{arc_count}",
                record.line_number,
                record.column_of(index),
            )
        return label


def parse_diagram(content: str, strict: bool = True, name: str = "") -> Diagram:
    """
    Convenience function to parse a diagram.

    Args:
        content: Raw diagram text
        strict: Raise on structural violations instead of logging them
        name: Optional diagram name

    Returns:
        The parsed Diagram
    """
    return DiagramParser(strict_mode=strict).parse(content, name=name).diagram


def serialize(diagram: Diagram) -> str:
    """Render a diagram in the file format, records in their stored order."""
    lines = [f"arcs {diagram.arc_count}"]
    lines.extend(record.to_line() for record in diagram.records)
    return "\n".join(lines) + "\n"


# Validation
def _where(index: int, record: DiagramRecord, line_numbers: Optional[Sequence[int]]) -> str:
    if line_numbers is not None and index < len(line_numbers):
        return f"line {line_numbers[index]} ({record.to_line()})"
    return f"record {index + 1} ({record.to_line()})"


def validate(diagram: Diagram, line_numbers: Optional[Sequence[int]] = None) -> List[str]:
    """
    List the structural invariants a diagram violates.

    Every arc must start exactly once and end exactly once, and no vertex
    may be a source or a sink. An arc's direction at a vertex is read from
    its other end, so a vertex whose three arcs all point in (or all point
    out) is reported once as a source/sink instead of as dangling arcs.

    Args:
        diagram: Diagram to check
        line_numbers: Source line of each record, used in messages

    Returns:
        List of violation messages; empty when the diagram is valid
    """
    violations: List[str] = []
    starts = diagram.starts()
    ends = diagram.ends()
    explained: Set[int] = set()

    for index, record in enumerate(diagram.records):
        if not isinstance(record, Vertex):
            continue
        incoming = []
        for slot in (1, 2, 3):
            arc = slot_arc(record, slot)
            declared_in = slot in record.ending_slots()
            others_start = [o for o in starts.get(arc, []) if o != (index, slot)]
            others_end = [o for o in ends.get(arc, []) if o != (index, slot)]
            if len(others_start) + len(others_end) == 1:
                inferred_in = bool(others_start)
            else:
                inferred_in = declared_in
            incoming.append((arc, declared_in, inferred_in))
        inferred = [flag for _, _, flag in incoming]
        if all(inferred) or not any(inferred):
            kind = "sink" if all(inferred) else "source"
            violations.append(
                f"source/sink vertex at {_where(index, record, line_numbers)}: "
                f"all three arcs point {'in' if kind == 'sink' else 'out'}"
            )
            explained.update(arc for arc, declared, flag in incoming if declared != flag)

    for arc in diagram.arcs:
        if arc in explained:
            continue
        start_count = len(starts.get(arc, []))
        end_count = len(ends.get(arc, []))
        if start_count == 0 and end_count == 0:
            violations.append(f"dangling arc {arc}: never starts or ends")
        elif start_count == 0:
            violations.append(f"dangling arc {arc}: no outgoing end")
        elif end_count == 0:
            violations.append(f"dangling arc {arc}: no incoming end")
        if start_count > 1:
            violations.append(f"duplicate label: arc {arc} starts {start_count} times")
        if end_count > 1:
            violations.append(f"duplicate label: arc {arc} ends {end_count} times")

    signs = Counter(v.sign for v in diagram.vertices)
    if signs[POSITIVE] != signs[NEGATIVE] and not violations:
        violations.append(
            f"unbalanced vertices: {signs[POSITIVE]} positive, {signs[NEGATIVE]} negative"
        )
    return violations


# Graph structure
def _arc_graph(diagram: Diagram) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(diagram.arcs)
    for record in diagram.records:
        if isinstance(record, Crossing):
            graph.add_edge(record.under_in, record.under_out)
        elif isinstance(record, Vertex):
            graph.add_edge(record.a, record.b)
            graph.add_edge(record.b, record.c)
    return graph


def components(diagram: Diagram) -> List[Set[int]]:
    """Arc sets of the connected components, ordered by their lowest arc."""
    return sorted(
        (set(c) for c in nx.connected_components(_arc_graph(diagram))), key=min
    )


def genus(diagram: Diagram) -> int:
    """Sum over components of 1 + (#vertices)/2."""
    component_of: Dict[int, int] = {}
    parts = components(diagram)
    for i, part in enumerate(parts):
        for arc in part:
            component_of[arc] = i
    vertex_counts = Counter(component_of[v.a] for v in diagram.vertices)
    return sum(1 + vertex_counts[i] // 2 for i in range(len(parts)))
