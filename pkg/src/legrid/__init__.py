"""Grid-diagram calculus for Legendrian and transverse knots."""

from ._backend import backend_name
from .grid import (
    ClassicalInvariants,
    GridDiagram,
    canonical_key,
    classical_invariants,
    corner_census,
    load_grid,
    parse_grid,
    save_grid,
    transpose_flip,
    validate_grid,
    write_grid,
    writhe,
)
from .alexander import (
    LaurentPoly,
    alexander_polynomial,
    cable_alexander,
    torus_knot_alexander,
)
from .moves import (
    Move,
    apply_commutation,
    apply_cyclic_flip,
    apply_move,
    destabilize,
    destabilization_sites,
    enumerate_moves,
    stabilize,
)

__version__ = "0.1.0"

__all__ = [
    "ClassicalInvariants",
    "GridDiagram",
    "LaurentPoly",
    "Move",
    "alexander_polynomial",
    "apply_commutation",
    "apply_cyclic_flip",
    "apply_move",
    "backend_name",
    "cable_alexander",
    "canonical_key",
    "classical_invariants",
    "corner_census",
    "destabilization_sites",
    "destabilize",
    "enumerate_moves",
    "load_grid",
    "parse_grid",
    "save_grid",
    "stabilize",
    "torus_knot_alexander",
    "transpose_flip",
    "validate_grid",
    "write_grid",
    "writhe",
]
