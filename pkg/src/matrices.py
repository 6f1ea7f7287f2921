"""
Group-ring matrices, field matrices and exact linear algebra.

A GroupRingMatrix has entries in Z[G], kept as integer combinations of
group element indices. It only becomes a matrix over a field once a
representation is chosen: flatten() replaces each entry by a d x d block,
scalar_flatten() by a single element of an extension field.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .exceptions import GroupMismatchError, MalformedRecordError
from .fields import FiniteField
from .groups import FiniteGroup


# Group Ring Element
@dataclass(frozen=True)
class GroupRingElement:
    """A finite sum of integer multiples of group elements."""

    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: Dict[int, int]) -> "GroupRingElement":
        return cls(tuple(sorted((int(g), int(c)) for g, c in coefficients.items() if c)))

    @classmethod
    def of(cls, element: int, coefficient: int = 1) -> "GroupRingElement":
        return cls.from_dict({element: coefficient})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def coefficient(self, element: int) -> int:
        return self.as_dict().get(element, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        total = self.as_dict()
        for g, c in other.terms:
            total[g] = total.get(g, 0) + c
        return GroupRingElement.from_dict(total)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(tuple((g, -c) for g, c in self.terms))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def format(self) -> str:
        """Render as `c1*g1 + c2*g2`; the zero element is `0`."""
        if not self.terms:
            return "0"
        parts = []
        for i, (g, c) in enumerate(self.terms):
            if i == 0:
                parts.append(f"{c}*g{g}")
            elif c < 0:
                parts.append(f"- {-c}*g{g}")
            else:
                parts.append(f"+ {c}*g{g}")
        return " ".join(parts)


ZERO = GroupRingElement()
_TERM_RE = re.compile(r"([+-]?)\s*(\d+)\s*\*\s*g(\d+)")


def parse_group_ring_element(text: str) -> GroupRingElement:
    text = text.strip()
    if text == "0":
        return ZERO
    matches = list(_TERM_RE.finditer(text))
    if not matches or _TERM_RE.sub("", text).strip():
        raise MalformedRecordError("entry", f"cannot read group-ring entry '{text}'")
    total: Dict[int, int] = {}
    for m in matches:
        sign = -1 if m.group(1) == "-" else 1
        g = int(m.group(3))
        total[g] = total.get(g, 0) + sign * int(m.group(2))
    return GroupRingElement.from_dict(total)


# Group Ring Matrix
@dataclass(frozen=True)
class GroupRingMatrix:
    """A rows x cols matrix over Z[G]."""

    group: FiniteGroup
    entries: Tuple[Tuple[GroupRingElement, ...], ...]
    cols: int

    @property
    def rows(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(
        cls, group: FiniteGroup, rows: Sequence[Sequence[GroupRingElement]], cols: int
    ) -> "GroupRingMatrix":
        entries = tuple(tuple(row) for row in rows)
        for row in entries:
            if len(row) != cols:
                raise ValueError(f"row has {len(row)} entries, expected {cols}")
        return cls(group, entries, cols)

    def entry(self, i: int, j: int) -> GroupRingElement:
        return self.entries[i][j]

    def transpose(self) -> "GroupRingMatrix":
        rows = [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return GroupRingMatrix(self.group, tuple(tuple(r) for r in rows), self.rows)

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "GroupRingMatrix":
        rows = [[self.entries[i][j] for j in col_order] for i in row_order]
        return GroupRingMatrix(self.group, tuple(tuple(r) for r in rows), self.cols)

    def with_rows(self, extra: Iterable[Sequence[GroupRingElement]]) -> "GroupRingMatrix":
        rows = list(self.entries) + [tuple(r) for r in extra]
        return GroupRingMatrix.from_rows(self.group, rows, self.cols)

    def dump(self) -> str:
        """Serialize in the matrix dump format (exact and re-parseable)."""
        lines = [f"matrix {self.rows} {self.cols} order {self.group.order}"]
        for i, row in enumerate(self.entries, start=1):
            lines.append(f"row {i}: " + " | ".join(e.format() for e in row))
        return "\n".join(lines) + "\n"


def parse_matrix_dump(text: str, group: FiniteGroup) -> GroupRingMatrix:
    """Inverse of GroupRingMatrix.dump for matrices over `group`."""
    lines = [ln for ln in text.replace("\r\n", "\n").split("\n") if ln.strip()]
    if not lines:
        raise MalformedRecordError("matrix", "empty matrix dump")
    header = lines[0].split()
    if len(header) != 5 or header[0] != "matrix" or header[3] != "order":
        raise MalformedRecordError("matrix", "expected 'matrix <rows> <cols> order <n>'", 1)
    rows, cols, order = int(header[1]), int(header[2]), int(header[4])
    if order != group.order:
        raise GroupMismatchError(f"group of order {group.order}", f"order {order}")

    entries = []
    for line_number, line in enumerate(lines[1:], start=2):
        head, _, body = line.partition(":")
        if not head.strip().startswith("row"):
            raise MalformedRecordError("row", "expected 'row i: ...'", line_number)
        cells = [c for c in body.split("|")]
        if len(cells) != cols:
            raise MalformedRecordError(
                "row", f"expected {cols} entries, got {len(cells)}", line_number
            )
        try:
            entries.append(tuple(parse_group_ring_element(c) for c in cells))
        except MalformedRecordError as e:
            raise MalformedRecordError("row", e.reason, line_number)
    if len(entries) != rows:
        raise MalformedRecordError("matrix", f"expected {rows} rows, got {len(entries)}")
    return GroupRingMatrix(group, tuple(entries), cols)


# Field Matrix
@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """A matrix of field element indices."""

    field: FiniteField
    entries: np.ndarray

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.entries.T.copy())

    def block_transpose(self, d: int) -> "FieldMatrix":
        """Swap the d x d blocks (i, j) -> (j, i) without transposing each block."""
        r, c = self.rows // d, self.cols // d
        blocks = self.entries.reshape(r, d, c, d).transpose(2, 1, 0, 3)
        return FieldMatrix(self.field, blocks.reshape(c * d, r * d).copy())

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldMatrix):
            return self.field == other.field and np.array_equal(self.entries, other.entries)
        return False

    def __hash__(self) -> int:
        return hash((self.field, self.entries.tobytes()))


def field_matrix(field: FiniteField, rows: Sequence[Sequence[int]], cols: int = None) -> FieldMatrix:
    entries = np.asarray(rows, dtype=np.int64)
    if entries.ndim != 2:
        entries = entries.reshape(len(rows), cols or 0)
    return FieldMatrix(field, entries)


def row_reduce(field: FiniteField, entries: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form by exact Gaussian elimination.

    Args:
        field: Field the entries live in
        entries: 2-D array of element indices

    Returns:
        (reduced matrix, pivot column indices)
    """
    a = np.array(entries, dtype=np.int64, copy=True)
    if a.size == 0:
        return a, []
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(a[r:, c])
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = field.mul(a[r], field.inv(int(a[r, c])))
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            factors = a[others, c]
            a[others] = field.sub(a[others], field.mul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def field_rank(m: FieldMatrix) -> int:
    """Row rank of a field matrix; the empty matrix has rank 0."""
    _, pivots = row_reduce(m.field, m.entries)
    return len(pivots)


def left_nullspace(m: FieldMatrix) -> List[np.ndarray]:
    """Basis of {z : z M = 0} as a list of vectors of length m.rows."""
    field = m.field
    if m.rows == 0:
        return []
    reduced, pivots = row_reduce(field, m.entries.T)
    free = [j for j in range(m.rows) if j not in set(pivots)]
    basis = []
    for f in free:
        z = np.zeros(m.rows, dtype=np.int64)
        z[f] = 1
        for i, pc in enumerate(pivots):
            z[pc] = field.neg(int(reduced[i, f]))
        basis.append(z)
    return basis


def _check_group(a: GroupRingMatrix, group: FiniteGroup) -> None:
    if a.group != group:
        raise GroupMismatchError(repr(group), repr(a.group))


def flatten(a: GroupRingMatrix, eta) -> FieldMatrix:
    """
    Replace each entry sum(c_g g) by the d x d block sum(c_g eta(g)).

    Args:
        a: Matrix over Z[G]
        eta: Verified Representation of G into GL(d, F)

    Returns:
        FieldMatrix of shape (d * rows, d * cols)

    Raises:
        GroupMismatchError: If eta is defined on another group
    """
    _check_group(a, eta.group)
    field, d = eta.field, eta.d
    out = np.zeros((d * a.rows, d * a.cols), dtype=np.int64)
    for i, row in enumerate(a.entries):
        for j, entry in enumerate(row):
            if entry.is_zero():
                continue
            block = np.zeros((d, d), dtype=np.int64)
            for g, c in entry.terms:
                block = field.add(block, field.mul(field.from_int(c), eta.matrices[g]))
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = block
    return FieldMatrix(field, out)


def scalar_flatten(a: GroupRingMatrix, zeta) -> FieldMatrix:
    """Substitute each group element g by the unit zeta(g) of the extension field."""
    _check_group(a, zeta.group)
    field = zeta.field
    out = np.zeros((a.rows, a.cols), dtype=np.int64)
    for i, row in enumerate(a.entries):
        for j, entry in enumerate(row):
            value = 0
            for g, c in entry.terms:
                value = field.add(value, field.mul(field.from_int(c), int(zeta.values[g])))
            out[i, j] = value
    return FieldMatrix(field, out)
