"""Half-selections of the dual extreme points (U-suitable sets).

A U-suitable set E picks one functional out of each antipodal pair of
dual extremes: (i) E and -E are disjoint, (ii) together they cover all
dual extremes.  A proper one additionally traces faces correctly:
(iii) E meets a face only in the face's extreme points.

For finite polyhedral spaces (iii) comes for free once E consists of
dual extremes, because a dual extreme lying in a face is an extreme
point of that face.  The verification still walks every face and checks
it, rather than assuming the derivation.

The selection itself is made by a separating vector z: E = {e : <z,e> > 0}.
This is deterministic (a fixed perturbation schedule), reproducible, and
produces a constructive witness.  No notion of an "optimal" selector is
introduced; none exists in the underlying theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratgeom, space as space_mod
from .errors import InputError, SelectorError
from .ratgeom import dot


@dataclass(frozen=True)
class SuitabilityChecks:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool

    @property
    def proper(self):
        return self.cond_i and self.cond_ii and self.cond_iii


@dataclass(frozen=True)
class USuitableSet:
    space: object
    indices: tuple
    selector_z: tuple
    checks: SuitabilityChecks

    def points(self):
        return tuple(self.space.dual_extremes[i] for i in self.indices)

    def to_json_dict(self):
        return {
            "E": list(self.indices),
            "z": ratgeom.vector_to_json(self.selector_z)
            if self.selector_z is not None
            else None,
            "cond_i": self.checks.cond_i,
            "cond_ii": self.checks.cond_ii,
            "cond_iii": self.checks.cond_iii,
            "proper": self.checks.proper,
        }


def find_selector(space):
    """A vector z with <z, e> != 0 for every dual extreme e.

    Perturbs the all-ones vector along the moment curve (1, t, t^2, ...)
    for t = 1, 1/2, 1/3, ...; each extreme point kills at most dim-1
    parameter values, so the schedule terminates.
    """
    d = space.dim
    one = Fraction(1) if space.exact else 1.0
    k = 1
    limit = (d - 1) * len(space.dual_extremes) + 2
    while k <= limit:
        t = one / k
        z = tuple(t**j for j in range(d))
        if all(abs(dot(z, e)) > space.tol for e in space.dual_extremes):
            return z
        k += 1
    raise SelectorError("no separating vector found; schedule exhausted")


def build_u_suitable(space, z=None) -> USuitableSet:
    """Select E = {e : <z, e> > 0} and verify all three conditions.

    Conditions (i) and (ii) hold by construction for any valid selector:
    the antipodal image flips the sign of <z, .>, so exactly one of each
    pair lands in E.
    """
    if z is None:
        z = find_selector(space)
    else:
        z = tuple(z)
        for e in space.dual_extremes:
            if abs(dot(z, e)) <= space.tol:
                raise SelectorError(f"selector annihilates dual extreme {e}")
    indices = tuple(
        i for i, e in enumerate(space.dual_extremes) if dot(z, e) > space.tol
    )
    checks = verify_u_suitable(space, indices)
    return USuitableSet(space=space, indices=indices, selector_z=z, checks=checks)


def verify_u_suitable(space, indices) -> SuitabilityChecks:
    """Check conditions (i)-(iii) for an arbitrary index selection."""
    n = len(space.dual_extremes)
    for i in indices:
        if not 0 <= i < n:
            raise InputError(f"extreme index {i} out of range")
    pts = {space.dual_extremes[i] for i in indices}
    neg = {ratgeom.vneg(p) for p in pts}
    cond_i = not (pts & neg)
    cond_ii = (pts | neg) == set(space.dual_extremes)

    cond_iii = True
    tol = space.tol
    for face in space.faces():
        on_face = {
            i
            for i in indices
            if abs(dot(face.supporting_x, space.dual_extremes[i]) - 1) <= tol
        }
        if on_face != (set(indices) & set(face.extreme_indices)):
            cond_iii = False
            break
    return SuitabilityChecks(cond_i=cond_i, cond_ii=cond_ii, cond_iii=cond_iii)


@dataclass(frozen=True)
class ObstructionReport:
    space_name: str
    obstruction: str
    statement: str

    def to_json_dict(self):
        return {
            "space": self.space_name,
            "obstruction": self.obstruction,
            "statement": self.statement,
        }


def prove_no_u_suitable(smooth2d) -> ObstructionReport:
    """Why the Euclidean plane admits no U-suitable set.

    Its dual extreme points fill the whole dual sphere, a connected set,
    and a connected set is never the disjoint union of two nonempty closed
    sets E and -E.  Hence no embedding into a space of continuous
    functions can have the unique-extension property.
    """
    if not isinstance(smooth2d, space_mod.SmoothSpace2D):
        raise InputError(
            "obstruction argument applies to the smooth Euclidean plane only"
        )
    return ObstructionReport(
        space_name=smooth2d.name,
        obstruction="connected extreme sphere",
        statement=(
            "every dual sphere point is extreme, the sphere is connected, "
            "so no closed half-selection E with E and -E disjoint and "
            "covering can exist: not U-embeddable into any C(K)"
        ),
    )
