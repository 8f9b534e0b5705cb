"""Collapsing schemes, free resolutions and homology for monoids presented
by complete string rewriting systems."""

from .collapsing import (
    CellClass,
    Truncation,
    build_matching_digraph,
    cell_height,
    classify_brown,
    lift_classify,
    verify_scheme,
)
from .homology import (
    ChainComplexZ,
    HomologyGroup,
    IntegerMatrix,
    bar_complex_oracle,
    homology_of_complex,
    smith_normal_form,
    verify_exactness,
)
from .monoid import (
    enumerate_elements,
    f1_certificate,
    multiply,
    right_cayley_graph,
    two_sided_cayley_graph,
    weak_orbits,
)
from .morse import build_resolution, enumerate_essential, morse_boundary, trivialize
from .nerve import EquivariantCell, Variant, boundary_faces, degeneracy, enumerate_cells
from .presentation import PresentationFile, parse_presentation, read_presentation
from .rewriting import (
    Alphabet,
    RewritingSystem,
    Rule,
    check_complete,
    critical_pairs,
    is_irreducible,
    junction_reducibility,
    knuth_bendix,
    normal_form,
)

__version__ = "0.1.0"
