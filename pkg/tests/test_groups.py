"""Unit tests for finite groups."""

import pytest

from src.exceptions import AxiomViolationError, DescriptorError, MalformedRecordError
from src.groups import (
    FiniteGroup,
    cyclic_group,
    parse_group_descriptor,
    parse_group_text,
    symmetric_group,
    trivial_group,
)


# Tests for standard groups
class TestStandardGroups:
    """Tests for the built-in group constructors."""

    def test_cyclic_group(self):
        """Test Z_3 arithmetic and labels."""
        z3 = cyclic_group(3)

        assert z3.order == 3
        assert z3.mul(2, 2) == 1
        assert z3.inv(1) == 2
        assert z3.labels == ["e", "t", "t^2"]

    def test_symmetric_group_is_nonabelian(self):
        """Test that S_3 has order 6 and is not abelian."""
        s3 = symmetric_group(3)

        assert s3.order == 6
        assert not s3.is_abelian()
        assert s3.label(0) == "e"

    def test_conjugate(self):
        """Test by^-1 x by in S_3."""
        s3 = symmetric_group(3)
        for x in range(6):
            for g in range(6):
                expected = s3.mul(s3.mul(s3.inv(g), x), g)
                assert s3.conjugate(x, g) == expected

    def test_element_order_and_power(self):
        """Test orders of elements of Z_4."""
        z4 = cyclic_group(4)

        assert z4.element_order(0) == 1
        assert z4.element_order(2) == 2
        assert z4.element_order(1) == 4
        assert z4.power(1, -1) == 3

    def test_generated_subgroup(self):
        """Test subgroup closure."""
        z4 = cyclic_group(4)

        assert z4.generated_subgroup([2]) == frozenset({0, 2})
        assert z4.generated_subgroup([]) == frozenset({0})
        assert z4.generated_subgroup([1]) == frozenset(range(4))

    def test_transposition_generates_order_two_subgroup(self):
        """Test that a single transposition of S_3 generates {e, (12)}."""
        s3 = symmetric_group(3)
        transposition = s3.labels.index("(12)")

        assert s3.generated_subgroup([transposition]) == frozenset({0, transposition})

    def test_trivial_group(self):
        """Test the one-element group."""
        g = trivial_group()

        assert g.order == 1
        assert g.label(0) == "e"

    def test_equality_uses_the_table(self):
        """Test that groups with the same Cayley table compare equal."""
        assert cyclic_group(2) == FiniteGroup([[0, 1], [1, 0]], name="other")
        assert cyclic_group(2) != cyclic_group(3)


# Tests for group axioms
class TestGroupAxioms:
    """Tests for Cayley table verification."""

    def test_identity_must_be_first(self):
        """Test that element 0 must be the identity."""
        with pytest.raises(AxiomViolationError) as exc:
            FiniteGroup([[1, 0], [0, 1]])

        assert "identity law" in str(exc.value)

    def test_associativity(self):
        """Test that a non-associative loop is rejected."""
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(AxiomViolationError) as exc:
            FiniteGroup(table)

        assert "associativity" in str(exc.value)

    def test_entries_out_of_range(self):
        """Test closure of the table."""
        with pytest.raises(AxiomViolationError) as exc:
            FiniteGroup([[0, 1], [1, 2]])

        assert "closure" in str(exc.value)


# Tests for group files and descriptors
class TestGroupParsing:
    """Tests for the group file format and descriptors."""

    def test_parse_group_text(self):
        """Test reading Z_3 from its table."""
        text = "group 3\nrow 0: 0 1 2\nrow 1: 1 2 0\nrow 2: 2 0 1\n"

        group = parse_group_text(text, name="mine")

        assert group == cyclic_group(3)
        assert group.name == "mine"

    def test_to_text_round_trip(self):
        """Test that to_text output parses back to the same group."""
        s3 = symmetric_group(3)

        assert parse_group_text(s3.to_text()) == s3

    def test_missing_row(self):
        """Test that every row must be present."""
        with pytest.raises(MalformedRecordError) as exc:
            parse_group_text("group 2\nrow 0: 0 1\n")

        assert "missing rows [1]" in str(exc.value)

    def test_bad_header(self):
        """Test that the file must start with a group header."""
        with pytest.raises(MalformedRecordError) as exc:
            parse_group_text("row 0: 0\n")

        assert "group <order>" in str(exc.value)

    def test_descriptors(self):
        """Test the named group descriptors."""
        assert parse_group_descriptor("z2") == cyclic_group(2)
        assert parse_group_descriptor("Z_5").order == 5
        assert parse_group_descriptor("s3").order == 6
        assert parse_group_descriptor("trivial").order == 1

    def test_unknown_descriptor(self):
        """Test that an unknown descriptor is rejected."""
        with pytest.raises(DescriptorError) as exc:
            parse_group_descriptor("q8")

        assert "expected trivial" in str(exc.value)

    def test_symmetric_group_size_limit(self):
        """Test that S_6 and larger are refused."""
        with pytest.raises(DescriptorError):
            parse_group_descriptor("s6")
