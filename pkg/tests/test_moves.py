"""Unit tests for Reidemeister moves, walks and tunnels."""

from functools import lru_cache

import pytest

from src.catalog import get_entry, list_entries
from src.coloring import invariant_multiset
from src.exceptions import DiagramValidationError, MoveNotApplicableError
from src.flows import enumerate_flows
from src.groups import cyclic_group
from src.models import Crossing, MoveSpec, Vertex
from src.moves import (
    add_tunnel,
    apply_move,
    candidate_moves,
    canonical_form,
    is_isomorphic,
    random_move_walk,
    walk_with_report,
)
from src.parser import genus, parse_diagram, serialize, validate
from src.quandles import dihedral_family, family_from_descriptor

# Strand 4->5->6 passes under the circle 1, then under strand 2->3
TRIANGLE = """arcs 6
X + 1 2 3
X + 1 4 5
X + 3 5 6
X + 1 3 2
X + 1 6 4
loop 1
"""

# Theta curve with a circle passing under the edge leaving its + vertex
THETA_UNDER_EDGE = """arcs 4
V - 1 2 3
V + 1 2 3
X + 3 4 4
"""

# Theta curve whose edge 5 runs from the + vertex under the circle 3
THETA_EDGE_UNDER_CIRCLE = """arcs 5
V - 1 2 4
V + 1 2 5
X + 3 5 4
loop 3
"""


def _invariants(diagram, z2, dihedral3, gl_family):
    return (
        invariant_multiset(diagram, z2, dihedral3),
        invariant_multiset(diagram, gl_family.group, gl_family),
    )


# Tests for single moves
class TestMoves:
    """Tests for applying and undoing moves."""

    def test_r1_adds_a_kink(self, trefoil):
        """Test that R1 splits an arc with a kink crossing."""
        result = apply_move(trefoil, MoveSpec("R1", "apply", (1,), "under_first"))

        assert result.n == 4
        assert result.records[1] == Crossing(-1, 3, 4, 2)
        assert result.records[3] == Crossing(1, 4, 1, 4)

    def test_r1_round_trip(self, trefoil):
        """Test that undoing the kink restores the diagram."""
        kinked = apply_move(trefoil, MoveSpec("R1", "apply", (1,), "over_first"))

        assert apply_move(kinked, MoveSpec("R1", "undo", (3,))) == trefoil

    def test_r1_on_a_loop(self, trivial_diagrams, unknot):
        """Test that a kink on a circle gives the one-crossing unknot."""
        assert apply_move(trivial_diagrams[1], MoveSpec("R1", "apply", (1,))) == unknot
        assert apply_move(unknot, MoveSpec("R1", "undo", (0,))) == trivial_diagrams[1]

    def test_r1_undo_needs_a_kink(self, trefoil):
        """Test that an ordinary crossing cannot be removed by R1."""
        with pytest.raises(MoveNotApplicableError) as exc:
            apply_move(trefoil, MoveSpec("R1", "undo", (0,)))

        assert "is not a kink" in str(exc.value)

    def test_r2_round_trip(self, trefoil):
        """Test that an R2 bigon can be added and removed."""
        result = apply_move(trefoil, MoveSpec("R2", "apply", (1, 2)))

        assert result.n == 5
        assert result.n1 == 5
        assert apply_move(result, MoveSpec("R2", "undo", (3, 4))) == trefoil

    def test_r2_needs_distinct_arcs(self, trefoil):
        """Test that an arc cannot pass over itself in R2."""
        with pytest.raises(MoveNotApplicableError) as exc:
            apply_move(trefoil, MoveSpec("R2", "apply", (2, 2)))

        assert "over and under arc must differ" in str(exc.value)

    def test_r4_round_trip(self):
        """Test twisting and untwisting the ends of a vertex."""
        theta = get_entry("theta").diagram()

        twisted = apply_move(theta, MoveSpec("R4", "apply", (1,), "first_over"))

        assert twisted.n1 == 1
        assert validate(twisted) == []
        assert (1, 2) in [m.anchor for m in candidate_moves(twisted, "R4", "undo")]
        assert apply_move(twisted, MoveSpec("R4", "undo", (1, 2), "first_over")) == theta

    def test_unknown_move(self, trefoil):
        """Test that unknown kinds are rejected."""
        with pytest.raises(MoveNotApplicableError) as exc:
            apply_move(trefoil, MoveSpec("R7", "apply", (1,)))

        assert "unknown move R7/apply" in str(exc.value)

    def test_wrong_record_type(self, trefoil):
        """Test that anchors must point at the right kind of record."""
        with pytest.raises(MoveNotApplicableError) as exc:
            apply_move(trefoil, MoveSpec("R4", "apply", (0,)))

        assert "is not a vertex" in str(exc.value)

    def test_candidates_are_applicable(self, trefoil):
        """Test that every listed candidate applies."""
        kinked = apply_move(trefoil, MoveSpec("R1", "apply", (2,)))

        candidates = candidate_moves(kinked, "R1", "undo")

        assert [m.anchor for m in candidates] == [(3,)]

    def test_describe(self):
        """Test the readable form of a move."""
        move = MoveSpec("R5", "undo", (0, 2, 3), "over")

        assert move.describe() == "R5 undo at (0,2,3) [over]"


# Tests for R3, R5 and R6
class TestTriangleAndVertexMoves:
    """Tests for sliding strands across crossings and vertices."""

    def test_r3_round_trip(self, z2, dihedral3, gl_family):
        """Test that R3 moves strand 4->6 across crossing 0 and back."""
        triangle = parse_diagram(TRIANGLE)

        assert [m.anchor for m in candidate_moves(triangle, "R3", "apply")] == [(0, 1, 2)]
        moved = apply_move(triangle, MoveSpec("R3", "apply", (0, 1, 2)))

        assert moved.records[1] == Crossing(1, 2, 4, 5)
        assert moved.records[2] == Crossing(1, 1, 5, 6)
        assert apply_move(moved, MoveSpec("R3", "undo", (0, 1, 2))) == triangle
        assert _invariants(moved, z2, dihedral3, gl_family) == _invariants(triangle, z2, dihedral3, gl_family)

    def test_r3_needs_a_triangle(self):
        """Test that three unrelated crossings are refused."""
        with pytest.raises(MoveNotApplicableError) as exc:
            apply_move(parse_diagram(TRIANGLE), MoveSpec("R3", "apply", (0, 1, 3)))

        assert "crossings do not form a triangle" in str(exc.value)

    def test_r5_under_round_trip(self, z2, dihedral3, gl_family):
        """Test passing a circle from under edge 3 to under edges 1 and 2 of a theta curve."""
        theta = parse_diagram(THETA_UNDER_EDGE)

        moved = apply_move(theta, MoveSpec("R5", "apply", (2, 1), "under"))

        assert moved.records == (
            Vertex(-1, 1, 2, 3),
            Vertex(1, 1, 2, 3),
            Crossing(1, 1, 4, 5),
            Crossing(1, 2, 5, 4),
        )
        assert (2, 3, 1) in [m.anchor for m in candidate_moves(moved, "R5", "undo")]
        assert apply_move(moved, MoveSpec("R5", "undo", (2, 3, 1), "under")) == theta
        assert _invariants(moved, z2, dihedral3, gl_family) == _invariants(theta, z2, dihedral3, gl_family)

    def test_r5_over_round_trip(self, z2, dihedral3, gl_family):
        """Test sliding a vertex of a theta curve under a circle and back."""
        theta = parse_diagram(THETA_EDGE_UNDER_CIRCLE)

        assert (1, 2) in [m.anchor for m in candidate_moves(theta, "R5", "apply")]
        moved = apply_move(theta, MoveSpec("R5", "apply", (1, 2), "over"))

        assert moved.n == 6
        assert moved.records[1] == Vertex(1, 5, 6, 4)
        assert moved.records[2] == Crossing(1, 3, 1, 5)
        assert moved.records[4] == Crossing(1, 3, 2, 6)
        assert genus(moved) == 3
        assert apply_move(moved, MoveSpec("R5", "undo", (1, 2, 4), "over")) == theta
        assert _invariants(moved, z2, dihedral3, gl_family) == _invariants(theta, z2, dihedral3, gl_family)

    def test_r6_candidates(self):
        """Test that each same-sign pair of the tetrahedron admits one IH move."""
        tetrahedron = get_entry("tetrahedron").diagram()

        assert [m.anchor for m in candidate_moves(tetrahedron, "R6", "apply")] == [(0, 1), (2, 3)]
        assert candidate_moves(tetrahedron, "R6", "undo") == []

    def test_r6_positive_round_trip(self, z2, dihedral3, gl_family):
        """Test the IH move on edge 4 between the two positive vertices."""
        tetrahedron = get_entry("tetrahedron").diagram()

        moved = apply_move(tetrahedron, MoveSpec("R6", "apply", (0, 1)))

        assert moved.records[:2] == (Vertex(1, 2, 3, 4), Vertex(1, 1, 4, 5))
        assert moved.records[2:] == tetrahedron.records[2:]
        assert apply_move(moved, MoveSpec("R6", "undo", (0, 1))) == tetrahedron
        assert _invariants(moved, z2, dihedral3, gl_family) == _invariants(tetrahedron, z2, dihedral3, gl_family)

    def test_r6_negative_round_trip(self, z2, dihedral3, gl_family):
        """Test the IH move on edge 6 between the two negative vertices."""
        tetrahedron = get_entry("tetrahedron").diagram()

        moved = apply_move(tetrahedron, MoveSpec("R6", "apply", (2, 3)))

        assert moved.records[2:] == (Vertex(-1, 6, 3, 5), Vertex(-1, 1, 2, 6))
        assert apply_move(moved, MoveSpec("R6", "undo", (2, 3))) == tetrahedron
        assert _invariants(moved, z2, dihedral3, gl_family) == _invariants(tetrahedron, z2, dihedral3, gl_family)

    def test_r6_needs_same_signs(self):
        """Test that a positive and a negative vertex are refused."""
        tetrahedron = get_entry("tetrahedron").diagram()

        with pytest.raises(MoveNotApplicableError) as exc:
            apply_move(tetrahedron, MoveSpec("R6", "apply", (0, 2)))

        assert "vertices have different signs" in str(exc.value)


# Tests for random walks
class TestWalks:
    """Tests for seeded random move walks."""

    def test_walk_is_deterministic(self, trefoil):
        """Test that a seed fixes the walk."""
        first = walk_with_report(trefoil, 25, seed=7)
        second = walk_with_report(trefoil, 25, seed=7)

        assert first.diagram == second.diagram
        assert [m.describe() for m in first.applied] == [m.describe() for m in second.applied]
        assert len(first.applied) + first.skipped == 25

    def test_walk_keeps_the_diagram_valid(self, figure_eight):
        """Test that every walk ends on a valid diagram."""
        for seed in range(3):
            assert validate(random_move_walk(figure_eight, 20, seed=seed)) == []

    def test_walk_preserves_flow_count(self, trefoil, s3):
        """Test that the number of S_3-flows survives the moves."""
        walked = random_move_walk(trefoil, 15, seed=1)

        assert len(enumerate_flows(walked, s3)) == 12

    def test_walk_with_vertices_preserves_genus_and_flows(self, z2):
        """Test walks on a handlebody-knot with all six moves."""
        diagram = get_entry("trefoil+tunnel").diagram()
        before = len(enumerate_flows(diagram, z2))

        for seed in (0, 1):
            walked = random_move_walk(diagram, 20, seed=seed)
            assert genus(walked) == 2
            assert len(enumerate_flows(walked, z2)) == before

    def test_walk_restricted_kinds(self, trefoil):
        """Test that only the requested move kinds are used."""
        report = walk_with_report(trefoil, 10, seed=3, kinds=["R1"])

        assert all(m.kind == "R1" for m in report.applied)
        assert report.to_dict()["seed"] == 3

    def test_negative_steps(self, trefoil):
        """Test that a negative step count is refused."""
        with pytest.raises(ValueError):
            walk_with_report(trefoil, -1)

    def test_walk_with_ih_moves(self):
        """Test that a walk on the tetrahedron finds IH moves."""
        tetrahedron = get_entry("tetrahedron").diagram()

        report = walk_with_report(tetrahedron, 20, seed=5, kinds=["R6"])

        assert report.applied
        assert all(m.kind == "R6" for m in report.applied)
        assert validate(report.diagram) == []
        assert genus(report.diagram) == 3


@lru_cache(maxsize=None)
def _catalog_invariants(name):
    diagram = get_entry(name).diagram()
    gl = family_from_descriptor("gl(2,gf(2))")
    return _invariants(diagram, cyclic_group(2), dihedral_family(3), gl)


# Tests for invariance along walks
class TestWalkInvariance:
    """Tests that every catalog diagram keeps its coloring invariants along walks."""

    @pytest.mark.parametrize("seed", [1, 2, 3])
    @pytest.mark.parametrize("entry", list_entries(), ids=lambda e: e.name)
    def test_catalog_walk_keeps_the_invariant(self, entry, seed, z2, dihedral3, gl_family):
        """Test 50 random moves on a catalog diagram."""
        walked = random_move_walk(entry.diagram(), 50, seed=seed)

        assert validate(walked) == []
        assert genus(walked) == entry.genus
        assert _invariants(walked, z2, dihedral3, gl_family) == _catalog_invariants(entry.name)


# Tests for canonical forms
class TestCanonicalForm:
    """Tests for relabeling-invariant comparison."""

    def test_relabeled_diagram_is_isomorphic(self, trefoil):
        """Test that a permutation of labels is detected."""
        relabeled = trefoil.relabeled({1: 2, 2: 3, 3: 1})

        assert relabeled != trefoil
        assert is_isomorphic(trefoil, relabeled)

    def test_different_diagrams(self, trefoil, figure_eight):
        """Test that different knots are not isomorphic."""
        assert not is_isomorphic(trefoil, figure_eight)

    def test_canonical_form_is_a_relabeling(self, knot_8_18):
        """Test that the canonical form is a valid diagram of the same size."""
        canonical = canonical_form(knot_8_18)

        assert canonical.n == 8
        assert canonical.n1 == 8
        assert validate(canonical) == []


# Tests for tunnels
class TestAddTunnel:
    """Tests for joining two arcs by a new edge."""

    def test_tunnel_on_trefoil(self, trefoil):
        """Test the records of trefoil with a tunnel from arc 1 to arc 3."""
        result, edge = add_tunnel(trefoil, 1, 3)

        assert edge == 4
        assert result.n == 6
        assert result.records[1] == Crossing(-1, 3, 5, 2)
        assert result.records[2] == Crossing(-1, 2, 6, 1)
        assert result.records[3] == Vertex(-1, 5, 4, 1)
        assert result.records[4] == Vertex(1, 3, 4, 6)
        assert genus(result) == 2

    def test_tunnel_between_circles(self, trivial_diagrams):
        """Test that joining O_1 to itself gives a valid genus 2 diagram."""
        result, edge = add_tunnel(trivial_diagrams[1], 1, 1)

        assert edge == 2
        assert validate(result) == []
        assert genus(result) == 2
        assert serialize(result).startswith("arcs 3\n")

    def test_tunnel_bad_arc(self, trefoil):
        """Test that the arcs must exist."""
        with pytest.raises(DiagramValidationError) as exc:
            add_tunnel(trefoil, 1, 9)

        assert "arc 9 does not exist" in str(exc.value)

    def test_tunnel_flows_over_z2(self, trefoil, z2):
        """Test that the edge value is free: both ends carry any Z_2 value."""
        result, _ = add_tunnel(trefoil, 1, 3)

        assert len(enumerate_flows(result, z2)) == 4
