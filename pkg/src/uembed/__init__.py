"""Toolkit for unique-Hahn-Banach-extension embeddings into C(K) spaces.

Polyhedral finite-dimensional normed spaces are presented by the extreme
points of their dual unit balls (exact rational coordinates, or float64
with a tolerance).  The package decides embeddability, constructs the
evaluation embedding on a half-selection of dual extremes, certifies
uniqueness of norm-preserving extensions by exact linear programming, and
verifies the discretized constructions between spaces of continuous
functions (composition, retraction, Bezier and G-delta fields).
"""

from .errors import (
    AsymmetricInput,
    DegenerateInput,
    DimensionMismatch,
    InputError,
    InternalConsistencyError,
    NotAnIsometry,
    NotAUnitBall,
    PreconditionError,
    SelectorError,
    ToolkitError,
)
from .ratgeom import (
    LPProblem,
    LPSolution,
    Rat,
    enumerate_faces,
    is_affinely_independent,
    optimal_face_is_singleton,
    reduce_to_vertices,
    solve_lp,
)

__all__ = [
    "AsymmetricInput",
    "DegenerateInput",
    "DimensionMismatch",
    "InputError",
    "InternalConsistencyError",
    "LPProblem",
    "LPSolution",
    "NotAUnitBall",
    "NotAnIsometry",
    "PreconditionError",
    "Rat",
    "SelectorError",
    "ToolkitError",
    "enumerate_faces",
    "is_affinely_independent",
    "optimal_face_is_singleton",
    "reduce_to_vertices",
    "solve_lp",
]

__version__ = "0.1.0"
