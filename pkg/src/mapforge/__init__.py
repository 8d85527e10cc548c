"""Toolkit for maps and maniplexes as flag systems.

Everything revolves around validated connection arrays: two-colorings
of flags, the group of colorable index sets, classical map operators,
two-sheet covers and their recognition, and constructive realization
of any admissible group on any admissible surface.
"""

from .coloring import (
    ArrowAssignment,
    Coloring,
    ColoringGroup,
    ColorSet,
    all_subgroups,
    coloring_group,
    coloring_group_excluding_cell,
    cycle_consistent,
    direct_pso,
    find_coloring,
    i_face_bipartite,
    is_pseudo_orientable,
    is_valid_coloring,
    subgroup_closure,
)
from .construct import (
    GluingWord,
    MAKE_GOALS,
    PLATONIC_NAMES,
    RotationSystem,
    build_map_with_group,
    connected_sum,
    crosscap_map,
    cube_maniplex,
    double_edge,
    edge_of,
    from_rotation_system,
    grid_map,
    make_property,
    platonic,
    polygon_gluing,
    strip_map,
    subdivide_edge,
    tri_torus,
    triple_edge,
)
from .corpus import (
    CorpusSpec,
    DEFAULT_GENERATORS,
    PROPERTY_CHECKS,
    build_corpus,
    invoke_generator,
    random_surgery,
    run_verify,
)
from .doubles import DoubleResult, i_double, quotient, recognize_i_double, sherk_double
from .errors import MapforgeError, ValidationError
from .fileio import parse_flag_text, read_flag_file, write_flag_file, write_flag_text
from .flagsys import (
    Cell,
    FlagSystem,
    SurfaceSignature,
    apply_word,
    cell_labels,
    cells,
    check_projection,
    deck_transformations,
    euler_characteristic,
    is_isomorphic,
    surface_signature,
    validate,
)
from .operators import dual, medial, opposite, petrie

__version__ = "0.1.0"

__all__ = [
    "ArrowAssignment",
    "Cell",
    "ColorSet",
    "Coloring",
    "ColoringGroup",
    "CorpusSpec",
    "DEFAULT_GENERATORS",
    "DoubleResult",
    "FlagSystem",
    "GluingWord",
    "MAKE_GOALS",
    "MapforgeError",
    "PLATONIC_NAMES",
    "PROPERTY_CHECKS",
    "RotationSystem",
    "SurfaceSignature",
    "ValidationError",
    "all_subgroups",
    "apply_word",
    "build_corpus",
    "build_map_with_group",
    "cell_labels",
    "cells",
    "check_projection",
    "coloring_group",
    "coloring_group_excluding_cell",
    "connected_sum",
    "crosscap_map",
    "cube_maniplex",
    "cycle_consistent",
    "deck_transformations",
    "direct_pso",
    "double_edge",
    "dual",
    "edge_of",
    "euler_characteristic",
    "find_coloring",
    "from_rotation_system",
    "grid_map",
    "i_double",
    "i_face_bipartite",
    "invoke_generator",
    "is_isomorphic",
    "is_pseudo_orientable",
    "is_valid_coloring",
    "make_property",
    "medial",
    "opposite",
    "parse_flag_text",
    "petrie",
    "platonic",
    "polygon_gluing",
    "quotient",
    "random_surgery",
    "read_flag_file",
    "recognize_i_double",
    "run_verify",
    "sherk_double",
    "strip_map",
    "subdivide_edge",
    "subgroup_closure",
    "surface_signature",
    "tri_torus",
    "triple_edge",
    "validate",
    "write_flag_file",
    "write_flag_text",
]
