"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes, so keep the split between bad input
(InputError and children), geometric/analytic obstructions (reported in
results, never raised) and internal consistency failures (bugs or broken
invariants, exit code 4).
"""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToolkitError, ValueError):
    """Malformed or out-of-contract input."""


class DimensionMismatch(InputError):
    """Vectors or matrices of incompatible dimensions."""


class DegenerateInput(InputError):
    """Point set not full-dimensional where a solid body is required."""


class NotAUnitBall(InputError):
    """Vertex set cannot be the unit ball of a norm (0 not interior)."""


class AsymmetricInput(InputError):
    """Dual extreme set lacks antipodes and symmetrization was not allowed."""


class PreconditionError(InputError):
    """A documented precondition of an operation does not hold."""


class NotAnIsometry(InputError):
    """Index points fail the covering criterion, so the map cannot be isometric."""


class SelectorError(InputError):
    """Separating vector annihilates a dual extreme point."""


class InternalConsistencyError(ToolkitError):
    """Two independent computations of the same quantity disagree."""
