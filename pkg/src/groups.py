"""
Finite groups given by Cayley tables.

Elements are the indices 0..order-1 and the identity is always index 0.
Constructors cover the groups the coloring computations need: trivial,
cyclic Z_k, symmetric S_n (through sympy), and groups read from the
line-oriented group file format::

    group <order>
    row 0: 0 1 2 ...
    row 1: 1 2 0 ...
"""

import re
from itertools import permutations
from typing import FrozenSet, Iterable, List, Optional, Sequence

import numpy as np
from sympy.combinatorics import Permutation

from .exceptions import AxiomViolationError, DescriptorError, MalformedRecordError
from .settings import MAX_GROUP_ORDER
from .tokenizer import tokenize


class FiniteGroup:
    """A finite group with identity 0, a Cayley table and an inverse table."""

    def __init__(
        self,
        cayley: Sequence[Sequence[int]],
        name: str = "G",
        labels: Optional[List[str]] = None,
    ):
        table = np.asarray(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise AxiomViolationError(name, "square Cayley table")
        order = table.shape[0]
        if order > MAX_GROUP_ORDER:
            raise AxiomViolationError(name, f"size limit |G| <= {MAX_GROUP_ORDER}")
        if table.min() < 0 or table.max() >= order:
            raise AxiomViolationError(name, "closure (entries in range)")

        self.order = order
        self.cayley = table
        self.name = name
        self.identity = 0
        self._verify()
        self.inverse = self._inverse_table()
        self.labels = labels if labels is not None else [str(i) for i in range(order)]

    def _verify(self) -> None:
        elements = np.arange(self.order)
        if not (
            np.array_equal(self.cayley[0], elements)
            and np.array_equal(self.cayley[:, 0], elements)
        ):
            raise AxiomViolationError(self.name, "identity law with identity at index 0")
        for a in range(self.order):
            # (ab)c == a(bc) for every b, c
            left = self.cayley[self.cayley[a]]
            right = self.cayley[a][self.cayley]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise AxiomViolationError(self.name, "associativity", (a, int(b), int(c)))

    def _inverse_table(self) -> np.ndarray:
        inverse = np.full(self.order, -1, dtype=np.int64)
        for a in range(self.order):
            candidates = np.flatnonzero(self.cayley[a] == 0)
            for b in candidates:
                if self.cayley[b, a] == 0:
                    inverse[a] = b
                    break
            if inverse[a] < 0:
                raise AxiomViolationError(self.name, "inverse law", (a,))
        return inverse

    # Element operations
    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conjugate(self, x: int, by: int) -> int:
        """by^-1 * x * by"""
        return int(self.cayley[self.cayley[self.inverse[by], x], by])

    def power(self, a: int, exponent: int) -> int:
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        result = 0
        for _ in range(exponent):
            result = int(self.cayley[result, a])
        return result

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = int(self.cayley[x, a])
            n += 1
        return n

    def generated_subgroup(self, generators: Iterable[int]) -> FrozenSet[int]:
        """Closure of the generators under the group product."""
        generators = sorted(set(int(g) for g in generators))
        subgroup = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = int(self.cayley[x, g])
                if y not in subgroup:
                    subgroup.add(y)
                    frontier.append(y)
        return frozenset(subgroup)

    def label(self, a: int) -> str:
        return self.labels[a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def to_text(self) -> str:
        """Serialize in the group file format."""
        lines = [f"group {self.order}"]
        for i, row in enumerate(self.cayley):
            lines.append(f"row {i}: " + " ".join(str(int(x)) for x in row))
        return "\n".join(lines) + "\n"

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, FiniteGroup):
            return np.array_equal(self.cayley, other.cayley)
        return False

    def __hash__(self) -> int:
        return hash(self.cayley.tobytes())


# Standard groups
def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="trivial", labels=["e"])


def cyclic_group(k: int) -> FiniteGroup:
    """Z_k with element i standing for t^i."""
    if k < 1:
        raise DescriptorError(f"z{k}", "cyclic group order must be positive")
    elements = np.arange(k)
    table = (elements[:, None] + elements[None, :]) % k
    labels = ["e", "t"] + [f"t^{i}" for i in range(2, k)]
    return FiniteGroup(table, name=f"Z_{k}", labels=labels[:k])


def _cycle_label(perm: Permutation) -> str:
    if perm.is_Identity:
        return "e"
    return "".join(
        "(" + "".join(str(i + 1) for i in cycle) + ")" for cycle in perm.cyclic_form
    )


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {1..n}; product a*b applies a first, then b."""
    if n < 1 or n > 5:
        raise DescriptorError(f"s{n}", "symmetric groups are supported for 1 <= n <= 5")
    perms = [Permutation(list(p)) for p in permutations(range(n))]
    index = {tuple(p.array_form): i for i, p in enumerate(perms)}
    table = [[index[tuple((a * b).array_form)] for b in perms] for a in perms]
    return FiniteGroup(table, name=f"S_{n}", labels=[_cycle_label(p) for p in perms])


def group_from_elements(elements: list, multiply, name: str, labels=None) -> FiniteGroup:
    """
    Build a Cayley table from hashable elements and a product function.

    elements[0] must be the identity.
    """
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[multiply(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, name=name, labels=labels)


def parse_group_text(text: str, name: str = "G") -> FiniteGroup:
    """
    Parse the group file format.

    Raises:
        MalformedRecordError: If the header or a row is malformed
        AxiomViolationError: If the table is not a group with identity 0
    """
    records = tokenize(text)
    if not records or records[0].kind != "group":
        line = records[0].line_number if records else None
        raise MalformedRecordError("group", "file must start with 'group <order>'", line)

    header = records[0]
    header.expect_length(2)
    order = header.get_int(1, "order")
    if order < 1:
        raise MalformedRecordError("group", "order must be positive", header.line_number)

    rows = {}
    for record in records[1:]:
        if record.kind != "row":
            raise MalformedRecordError(
                record.kind, "expected 'row i: ...'", record.line_number, record.column_of(0)
            )
        record.expect_length(order + 2)
        i = record.get_int(1, "row index")
        if not 0 <= i < order:
            raise MalformedRecordError(
                "row", f"row index {i} out of range", record.line_number, record.column_of(1)
            )
        if i in rows:
            raise MalformedRecordError(
                "row", f"duplicate row {i}", record.line_number, record.column_of(1)
            )
        rows[i] = [record.get_int(j, "entry") for j in range(2, order + 2)]

    missing = [i for i in range(order) if i not in rows]
    if missing:
        raise MalformedRecordError("group", f"missing rows {missing}", header.line_number)
    return FiniteGroup([rows[i] for i in range(order)], name=name)


_CYCLIC_RE = re.compile(r"^z_?(\d+)$")
_SYMMETRIC_RE = re.compile(r"^s_?(\d+)$")


def parse_group_descriptor(descriptor: str) -> FiniteGroup:
    """
    Build a named group: `trivial`, `z<k>` or `s<n>`.

    General linear groups (`gl(d,<field>)`) come with a representation and
    are built by representations.parse_general_linear_descriptor.
    """
    text = descriptor.strip().lower()
    if text in ("trivial", "e", "1"):
        return trivial_group()
    match = _CYCLIC_RE.match(text)
    if match:
        return cyclic_group(int(match.group(1)))
    match = _SYMMETRIC_RE.match(text)
    if match:
        return symmetric_group(int(match.group(1)))
    raise DescriptorError(descriptor, "expected trivial, z<k>, s<n> or gl(d,<field>)")
