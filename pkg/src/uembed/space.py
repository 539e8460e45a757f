"""Polyhedral normed spaces presented by the extreme points of the dual ball.

A space is the data ``(dim, dual_extremes)`` where ``dual_extremes`` is a
canonical (deduplicated, vertex-reduced, antipodally symmetric, sorted)
list of vectors whose convex hull is the dual unit ball.  The primal norm
is then ``||x|| = max |<x, e>|`` over the dual extremes, faces of the dual
ball are cut out by primal unit vectors, and smoothness / simplexoid /
connectivity verdicts are finite computations on that data.

The one non-polyhedral citizen is ``SmoothSpace2D``, the Euclidean plane,
which carries the negative verdicts (its whole dual sphere consists of
extreme points, and a connected extreme sphere admits no half-selection).

A caveat recorded rather than worked around: in general normed spaces the
subdifferential of the norm can have affine dimension n without being a
polytope; such faces are not representable here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import ratgeom
from .errors import (
    AsymmetricInput,
    DegenerateInput,
    DimensionMismatch,
    InputError,
    PreconditionError,
)
from .ratgeom import dot, vneg


@dataclass(frozen=True)
class Face:
    """A proper face of the dual ball: all dual extremes attaining 1 at x.

    ``extreme_indices`` is maximal for ``supporting_x`` and equals the set
    of extreme points of the face (extreme points of a polytope face are
    polytope extreme points lying in it).
    """

    supporting_x: tuple
    extreme_indices: tuple
    affine_dim: int


class PolyhedralSpace:
    """Immutable after construction; build through :func:`make_space`."""

    def __init__(self, dim, dual_extremes, name, tol):
        self.dim = dim
        self.dual_extremes = tuple(tuple(p) for p in dual_extremes)
        self.name = name
        self.tol = tol
        self.exact = tol == 0
        self._faces = None
        self._primal_vertices = None

    def __repr__(self):
        return (
            f"PolyhedralSpace({self.name!r}, dim={self.dim}, "
            f"extremes={len(self.dual_extremes)})"
        )

    def index_of(self, point):
        """Index of a dual extreme point, tolerance-aware on the float path."""
        for i, e in enumerate(self.dual_extremes):
            if all(abs(a - b) <= self.tol for a, b in zip(e, point)):
                return i
        raise InputError(f"{point} is not a dual extreme point of {self.name}")

    def faces(self):
        """Every proper face of the dual ball, facets first (cached)."""
        if self._faces is None:
            raw = ratgeom.enumerate_faces(self.dual_extremes, self.tol)
            decorated = []
            for f in raw:
                pts = [self.dual_extremes[i] for i in f.vertex_indices]
                decorated.append(
                    Face(
                        supporting_x=f.support,
                        extreme_indices=f.vertex_indices,
                        affine_dim=ratgeom.affine_dim(pts, self.tol),
                    )
                )
            self._faces = tuple(decorated)
        return self._faces

    def facets(self):
        return tuple(f for f in self.faces() if f.affine_dim == self.dim - 1)

    def primal_vertices(self):
        """Extreme points of the primal unit ball.

        By polarity these are exactly the supporting vectors of the dual
        ball's facets, normalized to attain maximum value 1.
        """
        if self._primal_vertices is None:
            self._primal_vertices = tuple(
                sorted(f.supporting_x for f in self.facets())
            )
        return self._primal_vertices

    def to_json_dict(self):
        return {
            "name": self.name,
            "dim": self.dim,
            "representation": "polyhedral",
            "dual_extreme_points": [
                ratgeom.vector_to_json(p) for p in self.dual_extremes
            ],
            "allow_symmetrize": False,
        }


@dataclass(frozen=True)
class SmoothSpace2D:
    """The Euclidean plane: every dual sphere point is extreme, none isolated."""

    name: str = "euclidean2d"
    dim: int = 2

    def norm(self, x):
        if len(x) != 2:
            raise DimensionMismatch("SmoothSpace2D vectors have dimension 2")
        return math.hypot(float(x[0]), float(x[1]))

    def to_json_dict(self):
        return {"name": self.name, "dim": 2, "representation": "euclidean2d"}


def make_space(points, name="space", allow_symmetrize=False, tol=None):
    """Canonicalize a dual extreme set into a PolyhedralSpace.

    Deduplicates, optionally adds missing antipodes, reduces to hull
    vertices and validates full dimension.  The stored set is therefore
    exactly the extreme-point set of its convex hull, so presenting a
    superset of the true dual extremes is harmless.
    """
    pts, d = ratgeom._checked_points(points)
    exact = ratgeom.vectors_are_exact(pts)
    if tol is None:
        tol = 0 if exact else 1e-9
    if not exact and tol == 0:
        raise InputError("float coordinates need a positive tolerance")

    uniq = sorted(set(pts))
    missing = [p for p in uniq if vneg(p) not in set(uniq)]
    if missing:
        if not allow_symmetrize:
            raise AsymmetricInput(
                f"{len(missing)} dual extreme points lack antipodes "
                "(pass allow_symmetrize to add them)"
            )
        uniq = sorted(set(uniq) | {vneg(p) for p in uniq})

    verts = ratgeom.reduce_to_vertices(uniq, tol)
    if ratgeom.affine_dim(verts, tol) != d:
        raise DegenerateInput(
            "dual extreme points span a degenerate hull: not a norm"
        )
    return PolyhedralSpace(dim=d, dual_extremes=verts, name=name, tol=tol)


def norm(space, x):
    """max |<x, e>| over the dual extremes, exact on the rational path."""
    if len(x) != space.dim:
        raise DimensionMismatch(
            f"vector of dimension {len(x)} in a {space.dim}-dimensional space"
        )
    return max(abs(dot(x, e)) for e in space.dual_extremes)


def face_of(space, x) -> Face:
    """The face of the dual ball cut out by a primal unit vector x."""
    if abs(norm(space, x) - 1) > space.tol:
        raise PreconditionError(f"face_of needs a unit vector, got norm {norm(space, x)}")
    idx = tuple(
        i
        for i, e in enumerate(space.dual_extremes)
        if abs(dot(x, e) - 1) <= space.tol
    )
    pts = [space.dual_extremes[i] for i in idx]
    return Face(
        supporting_x=tuple(x),
        extreme_indices=idx,
        affine_dim=ratgeom.affine_dim(pts, space.tol),
    )


def almost_gateaux_order(space, x) -> int:
    """Affine dimension of the norm's subdifferential at x; 0 means smooth there."""
    return face_of(space, x).affine_dim


def is_gateaux_smooth(space):
    """Global smoothness verdict with a witness of non-smoothness.

    A polyhedral space of dimension >= 2 is never smooth: any facet of the
    dual ball is the subdifferential at its supporting vector and has
    positive affine dimension.  Returns ``(verdict, witness_x)``.
    """
    if isinstance(space, SmoothSpace2D):
        return True, None
    if space.dim == 1:
        return True, None
    witness = space.facets()[0].supporting_x
    return False, witness


def is_simplexoid(space):
    """Are all proper faces of the dual ball simplices?

    Checked on facets only: a face of a simplex is a simplex, so for
    polytopes the facet check settles every subface.  Returns
    ``(verdict, offending_face_or_None)``.
    """
    for facet in space.facets():
        pts = [space.dual_extremes[i] for i in facet.extreme_indices]
        if not ratgeom.is_affinely_independent(pts, space.tol):
            return False, facet
    return True, None


def extreme_sphere_connected(space) -> bool:
    """Connectivity of the extreme points of the dual ball inside the sphere.

    Finite extreme sets with at least two points are disconnected; the
    Euclidean circle is connected.  (Extreme sets of polytope faces are
    finite, hence closed: the Bauer condition is automatic here.)
    """
    if isinstance(space, SmoothSpace2D):
        return True
    return len(space.dual_extremes) < 2


def linf_space(n, name=None, tol=0):
    """The sup-norm space on n points: dual ball is the cross-polytope."""
    if n < 1:
        raise InputError("need at least one point")
    pts = []
    for i in range(n):
        e = [ratgeom.Rat(0)] * n
        e[i] = ratgeom.Rat(1)
        pts.append(tuple(e))
        pts.append(vneg(tuple(e)))
    return make_space(pts, name=name or f"linf{n}", tol=tol)


def space_from_json_dict(data):
    """Inverse of ``to_json_dict``; tolerates extra annotation keys."""
    rep = data.get("representation", "polyhedral")
    name = data.get("name", "space")
    if rep == "euclidean2d":
        return SmoothSpace2D(name=name)
    if rep != "polyhedral":
        raise InputError(f"unknown representation {rep!r}")
    raw = data.get("dual_extreme_points")
    if not raw:
        raise InputError("polyhedral space needs dual_extreme_points")
    pts = [ratgeom.parse_vector(p) for p in raw]
    dim = data.get("dim")
    if dim is not None and any(len(p) != dim for p in pts):
        raise InputError("declared dim disagrees with the extreme points")
    return make_space(
        pts, name=name, allow_symmetrize=bool(data.get("allow_symmetrize", False))
    )
