"""Unit tests for lower bounds and constituent obstructions."""

from fractions import Fraction

import pytest

from src.bounds import (
    best_tunnel_lower_bound,
    checked_genus,
    constituent_obstruction_coloring,
    constituent_obstruction_flowcount,
    cutting_lower_bound,
    flow_dimension_table,
    tunnel_lower_bound,
)
from src.catalog import get_entry, list_entries
from src.exceptions import DescriptorError, GenusMismatchError, GenusOrderError, GroupMismatchError
from src.flows import count_trivial_flows, enumerate_flows
from src.groups import cyclic_group
from src.parser import components
from src.quandles import dihedral_family, family_from_descriptor


# Tests for the tunnel bound
class TestTunnelBound:
    """Tests for max dim / d - 1."""

    def test_trefoil(self, trefoil, dihedral3):
        """Test that the trefoil has tunnel number at least 1."""
        report = tunnel_lower_bound(trefoil, None, dihedral3)

        assert report.value == 1
        assert report.raw_value == Fraction(1)
        assert report.witness["flow"] == 1
        assert report.witness["dimension"] == 2
        assert [row["contribution"] for row in report.rows] == [0, 1]

    def test_8_18(self, knot_8_18, dihedral3):
        """Test that 8_18 needs at least two tunnels."""
        report = tunnel_lower_bound(knot_8_18, 1, dihedral3)

        assert report.value == 2
        assert report.witness["assignment"] == ["t"] * 8

    def test_figure_eight_needs_r5(self, figure_eight, dihedral3):
        """Test that R_3 gives nothing on the figure-eight but R_5 does."""
        assert tunnel_lower_bound(figure_eight, None, dihedral3).value == 0
        assert tunnel_lower_bound(figure_eight, None, dihedral_family(5)).value == 1

    def test_trivial_handlebody_knots(self, trivial_diagrams, dihedral3):
        """Test that O_g gets the bound 0."""
        for g, diagram in trivial_diagrams.items():
            assert tunnel_lower_bound(diagram, g, dihedral3).value == 0

    def test_declared_genus_must_match(self, trefoil, dihedral3):
        """Test that a wrong genus is refused."""
        with pytest.raises(GenusMismatchError) as exc:
            tunnel_lower_bound(trefoil, 2, dihedral3)

        assert "Declared genus 2 does not match diagram genus 1" in str(exc.value)

    def test_needs_alexander_family(self, trefoil):
        """Test that table families have no dimension."""
        with pytest.raises(DescriptorError) as exc:
            tunnel_lower_bound(trefoil, None, dihedral_family(4))

        assert "dimensions need an Alexander family" in str(exc.value)

    def test_dimension_table(self, trefoil, dihedral3):
        """Test the per-flow dimension rows."""
        table = flow_dimension_table(trefoil, dihedral3)

        assert [row.dimension for row in table] == [1, 2]
        assert table[1].to_dict() == {"index": 1, "image": ["e", "t"], "dimension": 2}

    def test_report_records(self, trefoil, dihedral3):
        """Test the JSON form of a bound."""
        records = tunnel_lower_bound(trefoil, None, dihedral3).records()

        assert len(records) == 3
        assert records[-1]["bound"] == "tunnel"
        assert records[-1]["raw_value"] == "1"

    def test_best_over_families(self, trefoil, dihedral3):
        """Test that the strongest Alexander family is the witness."""
        families = [dihedral_family(5), dihedral3, dihedral_family(4)]

        report = best_tunnel_lower_bound(trefoil, None, families)

        assert report.value == 1
        assert report.witness["family"] == "dihedral(3)"
        assert report.witness["compared"] == {"dihedral(5)": 0, "dihedral(3)": 1}
        assert report.warnings == ["table families skipped: dihedral(4)"]

    def test_best_needs_an_alexander_family(self, trefoil):
        """Test that table families alone give no tunnel bound."""
        with pytest.raises(DescriptorError) as exc:
            best_tunnel_lower_bound(trefoil, None, [dihedral_family(4)])

        assert "the tunnel bound needs an Alexander family" in str(exc.value)


# Tests for the cutting bound
class TestCuttingBound:
    """Tests for g - log_|G| T."""

    def test_trefoil(self, trefoil, z2, dihedral3):
        """Test that one trivial flow out of two gives the bound 1."""
        report = cutting_lower_bound(trefoil, None, z2, [dihedral3])

        assert report.value == 1
        assert report.raw_value == Fraction(1)
        assert report.witness["trivial_flows"] == 1
        assert not report.exact
        assert "may be weak" in report.warnings[0]

    def test_trivial_handlebody_knot(self, trivial_diagrams, z2, dihedral3):
        """Test that every flow of O_2 is trivial."""
        report = cutting_lower_bound(trivial_diagrams[2], 2, z2, [dihedral3])

        assert report.witness["trivial_flows"] == 4
        assert report.value == 0
        assert report.raw_value == Fraction(0)

    def test_irrational_logarithm(self, trefoil, s3):
        """Test that a non-power T keeps the logarithm symbolic."""
        report = cutting_lower_bound(trefoil, None, s3, [])

        assert report.witness["trivial_flows"] == 12
        assert report.raw_value == "1 - log_6(12)"
        assert report.value == 0
        assert report.warnings == ["no families given: every flow counts as trivial"]

    def test_trivial_group(self, trefoil):
        """Test that the trivial group only warns."""
        report = cutting_lower_bound(trefoil, None, cyclic_group(1), [])

        assert report.value == 0
        assert report.warnings == ["the trivial group gives no information"]

    def test_group_mismatch(self, trefoil, s3, dihedral3):
        """Test that the families must use the given group."""
        with pytest.raises(GroupMismatchError):
            cutting_lower_bound(trefoil, None, s3, [dihedral3])

    @pytest.mark.parametrize("entry", list_entries(), ids=lambda e: e.name)
    def test_more_families_give_a_stronger_bound(self, entry, z2, dihedral3):
        """Test that the bound stays in [0, g] and grows as trivial flows drop out."""
        diagram = entry.diagram()
        chain = [[], [dihedral3], [dihedral3, dihedral_family(5)]]

        reports = [cutting_lower_bound(diagram, entry.genus, z2, families) for families in chain]
        trivial = [r.witness["trivial_flows"] for r in reports]
        values = [r.value for r in reports]

        assert trivial == sorted(trivial, reverse=True)
        assert values == sorted(values)
        assert all(0 <= value <= entry.genus for value in values)


# Tests for the trivial handlebody-knots
class TestTrivialHandlebodyKnots:
    """Tests that O_g has only trivial flows and the smallest coloring spaces."""

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    @pytest.mark.parametrize(
        "descriptor", ["dihedral(3)", "alexander(gf(2^2;1,1,1),t)", "gl(2,gf(2))"]
    )
    def test_every_flow_is_trivial(self, trivial_diagrams, g, descriptor):
        """Test |G|^g trivial flows, each with dimension d times the component count."""
        diagram = trivial_diagrams[g]
        family = family_from_descriptor(descriptor)
        expected = family.d * len(components(diagram))

        assert count_trivial_flows(diagram, family.group, [family]) == family.group.order ** g
        assert all(row.dimension == expected for row in flow_dimension_table(diagram, family))
        assert cutting_lower_bound(diagram, g, family.group, [family]).value == 0


# Tests for constituent obstructions
class TestConstituentObstruction:
    """Tests for the coloring and flow-count constituent tests."""

    def test_8_18_is_not_a_constituent_of_o2(self, knot_8_18, trivial_diagrams, z2, dihedral3):
        """Test that the dimension drop of 8_18 is too large for O_2."""
        flow = enumerate_flows(knot_8_18, z2)[1]

        report = constituent_obstruction_coloring(
            knot_8_18, 1, flow, trivial_diagrams[2], 2, dihedral3
        )

        assert report.obstructed
        assert report.verdict == "obstructed"
        assert report.details["dimension"] == 3
        assert report.details["threshold"] == 1
        assert report.details["matching_flows"] == 3
        assert all(row["difference"] == 2 for row in report.rows if row["matches"])

    def test_trefoil_against_o2(self, trefoil, trivial_diagrams, z2, dihedral3):
        """Test that a drop of 1 stays within d (g - g')."""
        flow = enumerate_flows(trefoil, z2)[1]

        report = constituent_obstruction_coloring(trefoil, None, flow, trivial_diagrams[2], None, dihedral3)

        assert not report.obstructed
        assert report.to_dict()["verdict"] == "not-obstructed"

    def test_trefoil_against_its_tunnel(self, trefoil, z2, dihedral3):
        """Test that the trefoil is not obstructed in trefoil + tunnel."""
        big = get_entry("trefoil+tunnel").diagram()
        flow = enumerate_flows(trefoil, z2)[1]

        report = constituent_obstruction_coloring(trefoil, 1, flow, big, 2, dihedral3)

        assert not report.obstructed
        assert report.warnings == []

    def test_coloring_needs_smaller_genus(self, trefoil, figure_eight, z2, dihedral3):
        """Test that g' < g is required."""
        flow = enumerate_flows(trefoil, z2)[0]

        with pytest.raises(GenusOrderError) as exc:
            constituent_obstruction_coloring(trefoil, None, flow, figure_eight, None, dihedral3)

        assert "needs g' < g, got g'=1 and g=1" in str(exc.value)

    def test_flowcount_obstruction(self, trivial_diagrams, trefoil, z2, dihedral3):
        """Test that O_1 has more trivial flows than the trefoil."""
        report = constituent_obstruction_flowcount(trivial_diagrams[1], trefoil, z2, [dihedral3])

        assert report.obstructed
        assert report.exact
        assert report.details["trivial_small"] == 2
        assert report.details["trivial_big"] == 1

    def test_flowcount_not_obstructed(self, trivial_diagrams, z2, dihedral3):
        """Test O_1 against O_2."""
        report = constituent_obstruction_flowcount(trivial_diagrams[1], trivial_diagrams[2], z2, [dihedral3])

        assert not report.obstructed
        assert report.details["trivial_big"] == 4

    def test_flowcount_heuristic_warning(self, trefoil, knot_8_18, z2, dihedral3):
        """Test that a small diagram with crossings gives a heuristic verdict."""
        report = constituent_obstruction_flowcount(trefoil, knot_8_18, z2, [dihedral3])

        assert not report.exact
        assert "heuristic" in report.warnings[0]

    def test_flowcount_genus_order(self, trivial_diagrams, trefoil, z2):
        """Test that g' <= g is required."""
        with pytest.raises(GenusOrderError) as exc:
            constituent_obstruction_flowcount(trivial_diagrams[2], trefoil, z2, [])

        assert "needs g' <= g" in str(exc.value)

    def test_checked_genus(self, trefoil):
        """Test the genus cross-check helper."""
        assert checked_genus(trefoil) == 1
        assert checked_genus(trefoil, 1) == 1
        with pytest.raises(GenusMismatchError):
            checked_genus(trefoil, 3)
