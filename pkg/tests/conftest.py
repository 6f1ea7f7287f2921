"""Test configuration and fixtures."""

import sys
from pathlib import Path

import pytest

# Add src directory to path for imports
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from src.catalog import get_entry  # noqa: E402
from src.groups import cyclic_group, symmetric_group  # noqa: E402
from src.quandles import dihedral_family, family_from_descriptor  # noqa: E402

# Diagram whose single vertex pair is a sink and a source
SOURCE_SINK_DIAGRAM = """arcs 6
X + 4 4 1
X + 5 5 2
X + 6 6 3
V + 1 2 3
V - 4 5 6
"""


@pytest.fixture
def trefoil():
    return get_entry("trefoil").diagram()


@pytest.fixture
def figure_eight():
    return get_entry("figure-eight").diagram()


@pytest.fixture
def knot_8_18():
    return get_entry("8_18").diagram()


@pytest.fixture
def unknot():
    return get_entry("unknot").diagram()


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def dihedral3():
    """R_3 as a Z_2-family, linear over GF(3) with t = -1."""
    return dihedral_family(3)


@pytest.fixture
def trivial_diagrams():
    """O_1 .. O_4 keyed by genus."""
    return {g: get_entry(f"O_{g}").diagram() for g in range(1, 5)}


@pytest.fixture
def gf4_family():
    """Alexander quandle GF(4) with t, a Z_3-family."""
    return family_from_descriptor("alexander(gf(2^2;1,1,1),t)")


@pytest.fixture
def gl_family():
    """GF(2)^2 with the tautological GL(2, GF(2)) action, a non-abelian family."""
    return family_from_descriptor("gl(2,gf(2))")
