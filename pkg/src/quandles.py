"""
Finite quandles and G-families of quandles.

Two kinds of family are supported:

* TableFamily: one operation table per group element, typically the
  Z_k-family (S_y^i) generated by a finite quandle of type k.
* AlexanderFamily: X = F^d with x *^g y = x eta(g) + y (I - eta(g)).

Elements of F^d are indexed by sum(c_j * q**j) over their coordinates, so
an extension-field family built from GF(p^k) keeps the field's own element
indices.
"""

import logging
import re
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from sympy import ilcm, isprime
from sympy.combinatorics import Permutation

from .exceptions import AxiomViolationError, DescriptorError, GroupMismatchError, MalformedRecordError
from .fields import FiniteField, parse_field_descriptor, split_field_descriptor
from .groups import FiniteGroup, cyclic_group, trivial_group
from .representations import (
    Representation,
    ScalarRepresentation,
    general_linear_group,
    multiplication_representation,
    parse_general_linear_descriptor,
)
from .settings import AXIOM_SAMPLE_SIZE, axiom_check_limit
from .tokenizer import tokenize

LOG = logging.getLogger(__name__)


# Quandle
class Quandle:
    """A finite quandle given by its operation table, op[x][y] = x * y."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = "X"):
        op = np.asarray(table, dtype=np.int64)
        if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[0] == 0:
            raise AxiomViolationError(name, "square operation table")
        n = op.shape[0]
        if op.min() < 0 or op.max() >= n:
            raise AxiomViolationError(name, "closure (entries in range)")
        self.size = n
        self.op = op
        self.name = name
        self._verify()

    def _verify(self) -> None:
        n = self.size
        elements = np.arange(n)
        diagonal = self.op[elements, elements]
        if not np.array_equal(diagonal, elements):
            x = int(np.flatnonzero(diagonal != elements)[0])
            raise AxiomViolationError(self.name, "idempotence x*x = x", (x,))
        columns = np.sort(self.op, axis=0)
        if not np.array_equal(columns, np.broadcast_to(elements[:, None], (n, n))):
            y = int(np.flatnonzero((columns != elements[:, None]).any(axis=0))[0])
            raise AxiomViolationError(self.name, "bijectivity of S_y", (y,))
        if n <= axiom_check_limit():
            left = self.op[self.op[:, :, None], elements[None, None, :]]
            right = self.op[self.op[:, None, :], self.op[None, :, :]]
            if not np.array_equal(left, right):
                x, y, z = (int(i) for i in np.argwhere(left != right)[0])
                raise AxiomViolationError(self.name, "right self-distributivity", (x, y, z))
            return
        LOG.info("%s: |X|=%d, checking distributivity on a sample", self.name, n)
        x, y, z = np.random.default_rng(0).integers(0, n, size=(3, AXIOM_SAMPLE_SIZE))
        bad = np.flatnonzero(self.op[self.op[x, y], z] != self.op[self.op[x, z], self.op[y, z]])
        if bad.size:
            i = int(bad[0])
            raise AxiomViolationError(
                self.name, "right self-distributivity", (int(x[i]), int(y[i]), int(z[i]))
            )

    def right_translation(self, y: int) -> np.ndarray:
        return self.op[:, y]

    def to_text(self) -> str:
        lines = [f"quandle {self.size}"]
        for x, row in enumerate(self.op):
            lines.append(f"{x}: " + " ".join(str(int(v)) for v in row))
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Quandle({self.name}, size={self.size})"


def quandle_type(q: Quandle) -> int:
    """Least n >= 1 with S_y^n = id for every y."""
    orders = [Permutation([int(v) for v in q.right_translation(y)]).order() for y in range(q.size)]
    return int(reduce(ilcm, orders, 1))


def dihedral_quandle(n: int) -> Quandle:
    """R_n: x * y = 2y - x mod n."""
    if n < 1:
        raise DescriptorError(f"dihedral({n})", "size must be positive")
    x = np.arange(n)
    return Quandle((2 * x[None, :] - x[:, None]) % n, name=f"R_{n}")


def trivial_quandle(n: int) -> Quandle:
    x = np.arange(n)
    return Quandle(np.broadcast_to(x[:, None], (n, n)).copy(), name=f"T_{n}")


def alexander_quandle(field: FiniteField, t: int) -> Quandle:
    """x * y = t x + (1 - t) y on the field itself."""
    if t == 0:
        raise AxiomViolationError("Alexander quandle", "t is a unit")
    x = np.arange(field.order)
    one_minus_t = field.sub(1, t)
    table = field.add(field.mul(t, x[:, None]), field.mul(one_minus_t, x[None, :]))
    return Quandle(table, name=f"Alexander({field.descriptor},{field.format_element(t)})")


def parse_quandle_text(text: str, name: str = "X") -> Quandle:
    """
    Parse the quandle file format: `quandle <n>` then rows `x: x*0 ... x*(n-1)`.

    Raises:
        MalformedRecordError: If the header or a row is malformed
        AxiomViolationError: If the table is not a quandle
    """
    records = tokenize(text)
    if not records or records[0].kind != "quandle":
        line = records[0].line_number if records else None
        raise MalformedRecordError("quandle", "file must start with 'quandle <n>'", line)
    header = records[0]
    header.expect_length(2)
    n = header.get_int(1, "size")

    rows: Dict[int, List[int]] = {}
    for record in records[1:]:
        record.expect_length(n + 1)
        x = record.get_int(0, "row element")
        if not 0 <= x < n or x in rows:
            raise MalformedRecordError(
                "row", f"bad or duplicate row label {x}", record.line_number, record.column_of(0)
            )
        rows[x] = [record.get_int(j, "entry") for j in range(1, n + 1)]
    if sorted(rows) != list(range(n)):
        missing = [x for x in range(n) if x not in rows]
        raise MalformedRecordError("quandle", f"missing rows {missing}", header.line_number)
    return Quandle([rows[x] for x in range(n)], name=name)


# G-Families
class GFamily:
    """Common interface of table-backed and Alexander G-families."""

    group: FiniteGroup
    size: int
    name: str

    def family_op(self, x: int, g: int, y: int) -> int:
        raise NotImplementedError

    def operation_table(self, g: int) -> np.ndarray:
        raise NotImplementedError

    @property
    def is_linear(self) -> bool:
        return False

    def _check_indices(self, x: int, g: int, y: int) -> None:
        if not (0 <= x < self.size and 0 <= y < self.size):
            raise IndexError(f"element index out of range for {self.name} (size {self.size})")
        if not 0 <= g < self.group.order:
            raise IndexError(f"group index {g} out of range for {self.group.name}")


class TableFamily(GFamily):
    """A G-family given by one n x n table per group element."""

    def __init__(self, group: FiniteGroup, ops: np.ndarray, name: str = "X", seed: int = 0):
        ops = np.asarray(ops, dtype=np.int64)
        if ops.ndim != 3 or ops.shape[0] != group.order or ops.shape[1] != ops.shape[2]:
            raise AxiomViolationError(name, f"one square table per element of {group.name}")
        self.group = group
        self.size = int(ops.shape[1])
        self.ops = ops
        self.name = name
        if self.size and (ops.min() < 0 or ops.max() >= self.size):
            raise AxiomViolationError(name, "closure (entries in range)")
        self._verify(seed)

    def _verify(self, seed: int) -> None:
        n, group, T = self.size, self.group, self.ops
        elements = np.arange(n)
        for g in range(group.order):
            if not np.array_equal(T[g][elements, elements], elements):
                raise AxiomViolationError(self.name, "x *^g x = x", (g,))
        if not np.array_equal(T[0], np.broadcast_to(elements[:, None], (n, n))):
            raise AxiomViolationError(self.name, "x *^e y = x")

        exhaustive = n <= axiom_check_limit()
        if not exhaustive:
            LOG.info("%s: |X|=%d, checking G-family axioms on a sample", self.name, n)
            rng = np.random.default_rng(seed)
            sample = rng.integers(0, n, size=(3, min(AXIOM_SAMPLE_SIZE, n ** 3)))

        for g in range(group.order):
            for h in range(group.order):
                gh = group.mul(g, h)
                composed = T[h][T[g], elements[None, :]]
                if not np.array_equal(T[gh], composed):
                    raise AxiomViolationError(self.name, "x *^(gh) y = (x *^g y) *^h y", (g, h))

                k = group.mul(group.mul(group.inv(h), g), h)
                if exhaustive:
                    left = T[h][T[g][:, :, None], elements[None, None, :]]
                    right = T[k][T[h][:, None, :], T[h][None, :, :]]
                else:
                    x, y, z = sample
                    left = T[h][T[g][x, y], z]
                    right = T[k][T[h][x, z], T[h][y, z]]
                if not np.array_equal(left, right):
                    raise AxiomViolationError(
                        self.name,
                        "(x *^g y) *^h z = (x *^h z) *^(h^-1 g h) (y *^h z)",
                        (g, h),
                    )

    def family_op(self, x: int, g: int, y: int) -> int:
        self._check_indices(x, g, y)
        return int(self.ops[g, x, y])

    def operation_table(self, g: int) -> np.ndarray:
        return self.ops[g]

    def __repr__(self) -> str:
        return f"TableFamily({self.name}, group={self.group.name}, size={self.size})"


class AlexanderFamily(GFamily):
    """X = F^d with x *^g y = x eta(g) + y (I - eta(g))."""

    def __init__(
        self,
        eta: Representation,
        zeta: Optional[ScalarRepresentation] = None,
        name: Optional[str] = None,
    ):
        self.eta = eta
        self.zeta = zeta
        self.group = eta.group
        self.field = eta.field
        self.d = eta.d
        self.size = self.field.order ** self.d
        self.name = name or f"alexander[{eta.name}]"
        self._weights = self.field.order ** np.arange(self.d, dtype=np.int64)
        identity = self.field.identity(self.d)
        self._complements = np.asarray(
            [self.field.sub(identity, m) for m in eta.matrices], dtype=np.int64
        )
        self._tables: Dict[int, np.ndarray] = {}
        if zeta is not None:
            if zeta.group != self.group:
                raise GroupMismatchError(repr(self.group), repr(zeta.group))
            if zeta.field.k != self.d or zeta.field.p != self.field.order:
                raise AxiomViolationError(self.name, "zeta lives in a degree-d extension of F")
            expected = zeta.as_matrices().matrices
            if not np.array_equal(expected, eta.matrices):
                raise AxiomViolationError(self.name, "eta is zeta written as matrices")

    @property
    def is_linear(self) -> bool:
        return True

    def coordinates(self, x) -> np.ndarray:
        """Coordinate vector(s) in F^d of element index(es)."""
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self._weights) % self.field.order

    def index_of(self, coords) -> int:
        coords = np.asarray(coords, dtype=np.int64)
        result = coords @ self._weights
        return int(result) if np.ndim(result) == 0 else result

    def family_op(self, x: int, g: int, y: int) -> int:
        self._check_indices(x, g, y)
        xa = self.field.matmul(self.coordinates([x]), self.eta.matrices[g])
        yb = self.field.matmul(self.coordinates([y]), self._complements[g])
        return int(self.index_of(self.field.add(xa, yb))[0])

    def operation_table(self, g: int) -> np.ndarray:
        if g not in self._tables:
            coords = self.coordinates(np.arange(self.size))
            xa = self.field.matmul(coords, self.eta.matrices[g])
            yb = self.field.matmul(coords, self._complements[g])
            summed = self.field.add(xa[:, None, :], yb[None, :, :])
            self._tables[g] = np.asarray(self.index_of(summed), dtype=np.int64)
        return self._tables[g]

    def as_table_family(self) -> TableFamily:
        ops = np.stack([self.operation_table(g) for g in range(self.group.order)])
        return TableFamily(self.group, ops, name=f"{self.name} (tables)")

    def __repr__(self) -> str:
        return f"AlexanderFamily({self.name}, d={self.d}, |X|={self.size})"


def zk_family_from_quandle(q: Quandle) -> TableFamily:
    """The Z_k-family {S_y^i} of a quandle of type k."""
    k = quandle_type(q)
    elements = np.arange(q.size)
    ops = [np.broadcast_to(elements[:, None], (q.size, q.size)).copy()]
    for _ in range(1, k):
        ops.append(q.op[ops[-1], elements[None, :]])
    group = cyclic_group(k)
    return TableFamily(group, np.stack(ops), name=f"Z_{k}-family of {q.name}")


def alexander_family(
    F,
    d: int,
    G: FiniteGroup,
    eta,
    name: Optional[str] = None,
) -> AlexanderFamily:
    """
    Build the G-family of Alexander quandles on F^d.

    Args:
        F: FiniteField or field descriptor string
        d: Dimension of X over F
        G: The group
        eta: Representation, or one d x d matrix per group element

    Raises:
        AxiomViolationError: If eta is not a homomorphism or eta(e) != I
    """
    field = parse_field_descriptor(F) if isinstance(F, str) else F
    if not isinstance(eta, Representation):
        eta = Representation(G, field, [np.asarray(m).reshape(d, d) for m in eta])
    if eta.group != G:
        raise GroupMismatchError(repr(G), repr(eta.group))
    if eta.field != field or eta.d != d:
        raise AxiomViolationError(name or "alexander family", f"eta maps into GL({d},{field.descriptor})")
    return AlexanderFamily(eta, name=name)


def family_op(fam: GFamily, x: int, g: int, y: int) -> int:
    """x *^g y in either representation."""
    return fam.family_op(x, g, y)


def extension_alexander_family(extension: FiniteField, t: int, name: Optional[str] = None) -> AlexanderFamily:
    """
    The Z_ord(t)-family on an extension E = GF(p^k) seen as GF(p)^k.

    Carries both the matrix form and the scalar form of the action.
    """
    _, eta, zeta = multiplication_representation(extension, t)
    return AlexanderFamily(
        eta,
        zeta=zeta,
        name=name or f"alexander({extension.descriptor},{extension.format_element(t)})",
    )


def general_linear_family(d: int, field: FiniteField, name: Optional[str] = None) -> AlexanderFamily:
    """The GL(d,F)-family on F^d, x *^A y = x A + y (I - A)."""
    _, eta = general_linear_group(d, field)
    return AlexanderFamily(eta, name=name or f"gl({d},{field.descriptor})")


def dihedral_family(n: int) -> GFamily:
    """R_n as a G-family: linear over GF(n) when n is an odd prime."""
    name = f"dihedral({n})"
    if isprime(n) and n > 2:
        family = extension_alexander_family(FiniteField(n), n - 1, name=name)
        return family
    family = zk_family_from_quandle(dihedral_quandle(n))
    family.name = name
    return family


def trivial_family(n: int) -> TableFamily:
    group = trivial_group()
    elements = np.arange(n)
    ops = np.broadcast_to(elements[:, None], (n, n))[None].copy()
    return TableFamily(group, ops, name=f"trivial({n})")


_CALL_RE = re.compile(r"^\s*([a-z]+)\s*\((.*)\)\s*$", re.IGNORECASE | re.DOTALL)


def family_from_descriptor(
    descriptor: str, read_text: Optional[Callable[[str], str]] = None
) -> GFamily:
    """
    Build a family from its CLI descriptor.

    Supported: dihedral(n), trivial(n), alexander(<field>,<t>),
    gl(<d>,<field>), zk(<quandle-file>).

    Args:
        descriptor: Family descriptor text
        read_text: Callable reading a file path, needed by zk(...)

    Raises:
        DescriptorError: If the descriptor cannot be understood
    """
    match = _CALL_RE.match(descriptor)
    if match is None:
        raise DescriptorError(descriptor, "expected name(arguments)")
    kind, args = match.group(1).lower(), match.group(2).strip()

    if kind in ("dihedral", "trivial"):
        if not re.fullmatch(r"\d+", args):
            raise DescriptorError(descriptor, "expected a positive integer size")
        n = int(args)
        if n < 1:
            raise DescriptorError(descriptor, "size must be positive")
        return dihedral_family(n) if kind == "dihedral" else trivial_family(n)

    if kind == "alexander":
        field_text, t_text = split_field_descriptor(args)
        extension = parse_field_descriptor(field_text)
        if not t_text:
            raise DescriptorError(descriptor, "missing action element t")
        t = extension.primitive_element if t_text.lower() == "primitive" else extension.parse_element(t_text)
        if t == 0:
            raise DescriptorError(descriptor, "t must be nonzero")
        return extension_alexander_family(extension, t, name=descriptor.strip())

    if kind == "gl":
        _, eta = parse_general_linear_descriptor(descriptor)
        return AlexanderFamily(eta, name=descriptor.strip())

    if kind == "zk":
        if read_text is None:
            raise DescriptorError(descriptor, "quandle files cannot be read here")
        quandle = parse_quandle_text(read_text(args), name=args)
        family = zk_family_from_quandle(quandle)
        family.name = descriptor.strip()
        return family

    raise DescriptorError(descriptor, f"unknown family kind '{kind}'")

