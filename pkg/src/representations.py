"""
Representations of finite groups over finite fields.

A Representation sends each group element to an invertible d x d matrix
acting on row vectors (x -> x eta(g)); a ScalarRepresentation sends it to
a unit of a field, usually an extension of the field the matrices live in.
Both are verified to be homomorphisms at construction.
"""

import re
from itertools import product
from typing import Optional, Sequence, Tuple

import numpy as np

from .exceptions import AxiomViolationError, DescriptorError
from .fields import FiniteField, parse_field_descriptor, split_field_descriptor
from .groups import FiniteGroup, cyclic_group, group_from_elements
from .matrices import field_matrix, field_rank
from .settings import MAX_FIELD_ORDER


class Representation:
    """A verified homomorphism G -> GL(d, F)."""

    def __init__(
        self,
        group: FiniteGroup,
        field: FiniteField,
        matrices: Sequence[np.ndarray],
        name: Optional[str] = None,
    ):
        stack = np.asarray(matrices, dtype=np.int64)
        if stack.ndim != 3 or stack.shape[0] != group.order or stack.shape[1] != stack.shape[2]:
            raise AxiomViolationError(
                name or "representation", f"one square matrix per element of {group.name}"
            )
        if stack.min() < 0 or stack.max() >= field.order:
            raise AxiomViolationError(name or "representation", "entries in the field")

        self.group = group
        self.field = field
        self.d = int(stack.shape[1])
        self.matrices = stack
        self.name = name or f"eta:{group.name}->GL({self.d},{field.descriptor})"
        self._verify()

    def _verify(self) -> None:
        if not np.array_equal(self.matrices[0], self.field.identity(self.d)):
            raise AxiomViolationError(self.name, "eta(e) = I")
        for g in range(self.group.order):
            for h in range(self.group.order):
                expected = self.matrices[self.group.mul(g, h)]
                actual = self.field.matmul(self.matrices[g], self.matrices[h])
                if not np.array_equal(expected, actual):
                    raise AxiomViolationError(self.name, "eta(gh) = eta(g) eta(h)", (g, h))

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def act(self, vectors: np.ndarray, g: int) -> np.ndarray:
        """Row vectors times eta(g)."""
        vectors = np.atleast_2d(vectors)
        return self.field.matmul(vectors, self.matrices[g])

    def is_trivial(self) -> bool:
        return all(np.array_equal(m, self.field.identity(self.d)) for m in self.matrices)

    def __repr__(self) -> str:
        return f"Representation({self.name})"


class ScalarRepresentation:
    """A verified homomorphism G -> F^x."""

    def __init__(self, group: FiniteGroup, field: FiniteField, values: Sequence[int], name=None):
        values = [int(v) for v in values]
        if len(values) != group.order:
            raise AxiomViolationError(name or "zeta", f"one value per element of {group.name}")
        if any(v == 0 for v in values):
            raise AxiomViolationError(name or "zeta", "values are units (nonzero)")
        if any(not 0 < v < field.order for v in values):
            raise AxiomViolationError(name or "zeta", "values in the field")
        self.group = group
        self.field = field
        self.values = np.asarray(values, dtype=np.int64)
        self.name = name or f"zeta:{group.name}->{field.descriptor}"
        if values[0] != 1:
            raise AxiomViolationError(self.name, "zeta(e) = 1")
        for g in range(group.order):
            for h in range(group.order):
                if field.mul(values[g], values[h]) != values[group.mul(g, h)]:
                    raise AxiomViolationError(self.name, "zeta(gh) = zeta(g) zeta(h)", (g, h))

    def as_matrices(self) -> Representation:
        """The same action written as k x k matrices over the prime subfield."""
        base = self.field.prime_subfield()
        return Representation(
            self.group,
            base,
            [multiplication_matrix(self.field, int(v)) for v in self.values],
            name=f"{self.name} over {base.descriptor}",
        )


def multiplication_matrix(field: FiniteField, element: int) -> np.ndarray:
    """k x k matrix over GF(p) of y -> y * element in the basis 1, t, ..., t^(k-1)."""
    basis = [field.p ** i for i in range(field.k)]
    return np.asarray([field.digits(field.mul(b, element)) for b in basis], dtype=np.int64)


def companion_matrix(field: FiniteField, coefficients: Sequence[int]) -> np.ndarray:
    """
    Matrix of multiplication by t modulo the monic polynomial with the given
    coefficients (low-to-high, leading 1 included), in row-vector convention.
    """
    coefficients = [int(c) for c in coefficients]
    k = len(coefficients) - 1
    m = np.zeros((k, k), dtype=np.int64)
    for i in range(k - 1):
        m[i, i + 1] = 1
    m[k - 1] = [field.neg(c) for c in coefficients[:k]]
    return m


def trivial_representation(group: FiniteGroup, field: FiniteField, d: int) -> Representation:
    identity = field.identity(d)
    return Representation(group, field, [identity] * group.order, name=f"trivial:{group.name}")


def cyclic_representation(field: FiniteField, generator: np.ndarray) -> Tuple[FiniteGroup, Representation]:
    """Z_k generated by an invertible matrix, k its multiplicative order."""
    generator = np.asarray(generator, dtype=np.int64)
    d = generator.shape[0]
    powers = [field.identity(d)]
    current = generator
    while not np.array_equal(current, powers[0]):
        powers.append(current)
        current = field.matmul(current, generator)
        if len(powers) > field.order ** (d * d):
            raise AxiomViolationError("generator", "invertibility")
    group = cyclic_group(len(powers))
    return group, Representation(group, field, powers)


def general_linear_group(d: int, field: FiniteField) -> Tuple[FiniteGroup, Representation]:
    """
    GL(d, F) with its tautological representation.

    The identity comes first; the remaining invertible matrices follow in
    lexicographic order of their entries.
    """
    if field.order ** (d * d) > MAX_FIELD_ORDER:
        raise DescriptorError(
            f"gl({d},{field.descriptor})", "too many matrices to enumerate"
        )
    identity = tuple(field.identity(d).ravel())
    invertible = []
    for entries in product(range(field.order), repeat=d * d):
        if entries == identity:
            continue
        m = field_matrix(field, np.asarray(entries).reshape(d, d))
        if field_rank(m) == d:
            invertible.append(entries)
    elements = [identity] + invertible

    def multiply(a, b):
        left = np.asarray(a, dtype=np.int64).reshape(d, d)
        right = np.asarray(b, dtype=np.int64).reshape(d, d)
        return tuple(int(x) for x in field.matmul(left, right).ravel())

    name = f"GL({d},{field.descriptor})"
    group = group_from_elements(elements, multiply, name=name)
    matrices = [np.asarray(e, dtype=np.int64).reshape(d, d) for e in elements]
    return group, Representation(group, field, matrices, name=f"tautological:{name}")


def multiplication_representation(
    extension: FiniteField, t: int
) -> Tuple[FiniteGroup, Representation, ScalarRepresentation]:
    """
    The cyclic group <t> of units of an extension field, both as scalars in
    the extension and as k x k matrices over the prime field.
    """
    if t == 0:
        raise AxiomViolationError("multiplication by 0", "invertibility")
    k = extension.element_order(t)
    group = cyclic_group(k)
    values = [extension.power(t, i) for i in range(k)]
    zeta = ScalarRepresentation(group, extension, values)
    return group, zeta.as_matrices(), zeta


_GL_RE = re.compile(r"^\s*gl\(\s*(\d+)\s*,\s*(.+)\)\s*$", re.IGNORECASE)


def parse_general_linear_descriptor(descriptor: str) -> Tuple[FiniteGroup, Representation]:
    """`gl(<d>,<field descriptor>)`"""
    match = _GL_RE.match(descriptor)
    if match is None:
        raise DescriptorError(descriptor, "expected gl(<d>,<field>)")
    field_text, rest = split_field_descriptor(match.group(2))
    if rest:
        raise DescriptorError(descriptor, f"unexpected trailing text '{rest}'")
    return general_linear_group(int(match.group(1)), parse_field_descriptor(field_text))
