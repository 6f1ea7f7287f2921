"""Unit tests for group-ring matrices and field linear algebra."""

import numpy as np
import pytest

from src.exceptions import GroupMismatchError, MalformedRecordError
from src.fields import FiniteField
from src.groups import cyclic_group
from src.matrices import (
    ZERO,
    GroupRingElement,
    GroupRingMatrix,
    field_matrix,
    field_rank,
    flatten,
    left_nullspace,
    parse_group_ring_element,
    parse_matrix_dump,
    row_reduce,
    scalar_flatten,
)
from src.representations import Representation, multiplication_representation


@pytest.fixture
def sign_rep():
    """Z_2 acting by -1 on GF(3)."""
    return Representation(cyclic_group(2), FiniteField(3), [[[1]], [[2]]])


# Tests for group ring elements
class TestGroupRingElement:
    """Tests for elements of Z[G]."""

    def test_arithmetic(self):
        """Test sums and differences cancel terms."""
        x = GroupRingElement.of(1) - GroupRingElement.of(0)

        assert x.as_dict() == {0: -1, 1: 1}
        assert (x + GroupRingElement.of(0)).as_dict() == {1: 1}
        assert (x - x).is_zero()

    def test_format(self):
        """Test the printed form of an entry."""
        x = GroupRingElement.of(1) - GroupRingElement.of(0)

        assert x.format() == "-1*g0 + 1*g1"
        assert ZERO.format() == "0"

    def test_parse(self):
        """Test reading entries back."""
        assert parse_group_ring_element("-1*g0 + 1*g1").as_dict() == {0: -1, 1: 1}
        assert parse_group_ring_element("2*g3").coefficient(3) == 2
        assert parse_group_ring_element("0") == ZERO

    def test_parse_garbage(self):
        """Test that unreadable entries are rejected."""
        with pytest.raises(MalformedRecordError) as exc:
            parse_group_ring_element("g0 + x")

        assert "cannot read group-ring entry" in str(exc.value)


# Tests for group ring matrices
class TestGroupRingMatrix:
    """Tests for matrices over Z[G]."""

    def test_dump_and_parse(self):
        """Test that a dump reads back to the same matrix."""
        z2 = cyclic_group(2)
        one, t = GroupRingElement.of(0), GroupRingElement.of(1)
        a = GroupRingMatrix.from_rows(z2, [[one, t - one], [ZERO, -t]], 2)

        dumped = a.dump()

        assert dumped.splitlines()[0] == "matrix 2 2 order 2"
        assert parse_matrix_dump(dumped, z2) == a

    def test_dump_order_mismatch(self):
        """Test that a dump from another group is refused."""
        a = GroupRingMatrix.from_rows(cyclic_group(3), [[GroupRingElement.of(0)]], 1)

        with pytest.raises(GroupMismatchError):
            parse_matrix_dump(a.dump(), cyclic_group(2))

    def test_ragged_rows(self):
        """Test that every row needs `cols` entries."""
        with pytest.raises(ValueError):
            GroupRingMatrix.from_rows(cyclic_group(2), [[ZERO, ZERO], [ZERO]], 2)

    def test_transpose_and_with_rows(self):
        """Test transposition and appending rows."""
        z2 = cyclic_group(2)
        one = GroupRingElement.of(0)
        a = GroupRingMatrix.from_rows(z2, [[one, ZERO, ZERO]], 3)

        assert a.transpose().rows == 3
        assert a.transpose().cols == 1
        assert a.with_rows([[ZERO, one, ZERO]]).rows == 2


# Tests for flattening
class TestFlatten:
    """Tests for substituting a representation into Z[G] matrices."""

    def test_flatten_sign_representation(self, sign_rep):
        """Test that 1 - t becomes 1 - (-1) = 2 over GF(3)."""
        z2 = sign_rep.group
        entry = GroupRingElement.of(0) - GroupRingElement.of(1)
        a = GroupRingMatrix.from_rows(z2, [[entry, ZERO]], 2)

        assert flatten(a, sign_rep).entries.tolist() == [[2, 0]]

    def test_flatten_group_mismatch(self, sign_rep):
        """Test that the representation must live on the matrix's group."""
        a = GroupRingMatrix.from_rows(cyclic_group(3), [[ZERO]], 1)

        with pytest.raises(GroupMismatchError):
            flatten(a, sign_rep)

    def test_scalar_flatten_and_matrix_flatten_agree_on_rank(self):
        """Test that GF(4) scalars and their 2 x 2 matrices give matching ranks."""
        group, eta, zeta = multiplication_representation(FiniteField(2, [1, 1, 1]), 2)
        one, t = GroupRingElement.of(0), GroupRingElement.of(1)
        a = GroupRingMatrix.from_rows(group, [[t - one, one], [one, t]], 2)

        scalar_rank = field_rank(scalar_flatten(a, zeta))
        matrix_rank = field_rank(flatten(a, eta))

        assert matrix_rank == 2 * scalar_rank

    def test_block_transpose(self):
        """Test that blocks move but are not transposed."""
        m = field_matrix(FiniteField(11), np.arange(8).reshape(4, 2))

        assert m.block_transpose(2).entries.tolist() == [[0, 1, 4, 5], [2, 3, 6, 7]]
        assert m.block_transpose(1) == m.transpose()


# Tests for exact linear algebra
class TestLinearAlgebra:
    """Tests for row reduction, rank and left null spaces."""

    def test_rank_depends_on_the_field(self):
        """Test that [[1,2],[2,1]] is singular over GF(3) only."""
        rows = [[1, 2], [2, 1]]

        assert field_rank(field_matrix(FiniteField(3), rows)) == 1
        assert field_rank(field_matrix(FiniteField(5), rows)) == 2

    def test_row_reduce_pivots(self):
        """Test the reduced echelon form over GF(2)."""
        reduced, pivots = row_reduce(FiniteField(2), np.array([[0, 1, 1], [1, 1, 0]]))

        assert pivots == [0, 1]
        assert reduced.tolist() == [[1, 0, 1], [0, 1, 1]]

    def test_left_nullspace(self):
        """Test a basis of {z : z M = 0} for a column of ones."""
        field = FiniteField(2)
        m = field_matrix(field, [[1], [1], [1]])

        basis = left_nullspace(m)

        assert [z.tolist() for z in basis] == [[1, 1, 0], [1, 0, 1]]
        for z in basis:
            assert field.matmul(z[None, :], m.entries).tolist() == [[0]]

    def test_left_nullspace_dimension(self):
        """Test rank-nullity over GF(5)."""
        field = FiniteField(5)
        m = field_matrix(field, [[1, 2, 3], [2, 4, 1], [3, 1, 4], [0, 0, 0]])

        basis = left_nullspace(m)

        assert len(basis) == m.rows - field_rank(m)
        for z in basis:
            assert not field.matmul(z[None, :], m.entries).any()

    def test_empty_matrix(self):
        """Test that an empty matrix has rank 0 and no null vectors."""
        m = field_matrix(FiniteField(2), np.zeros((0, 3), dtype=np.int64))

        assert field_rank(m) == 0
        assert left_nullspace(m) == []
