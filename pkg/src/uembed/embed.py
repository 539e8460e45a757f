"""Evaluation embeddings into C(K) and unique-extension certificates.

An embedding is stored as its index set K, a finite list of dual vectors:
``u(x)(k) = <x, p_k>``.  It is isometric exactly when the index points and
their antipodes cover the dual extreme points.  For a functional x*, the
set of norm-preserving extensions through u is the polytope

    { mu : sum_k mu_k p_k = x*,  sum_k |mu_k| = ||x*|| },

computed here as a split-variable total-variation LP, with uniqueness
decided by an exact optimal-face singleton certificate.  The minimal LP
value is asserted against an independent dual-norm LP over the primal
ball on every call.

Certification of the unique-extension property runs two tracks:

* theorem track: dual ball a simplexoid and the index set a proper
  half-selection of the dual extremes certifies uniqueness outright
  (exact data only);
* sampling track: uniqueness is checked on every dual extreme, one
  relative-interior point per face of the dual ball (barycenters), and a
  seeded batch of random unit functionals.

The sampling verdict is evidence, never a certificate, and uniqueness can
only break on positive-dimensional faces, which is why every barycenter
is probed.  A zero functional has the single extension 0: the LP yields
value 0 with the zero point, no special casing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import ratgeom, space as space_mod, usuit as usuit_mod
from .errors import (
    DimensionMismatch,
    InputError,
    InternalConsistencyError,
    NotAnIsometry,
    PreconditionError,
)
from .ratgeom import LPProblem, dot, solve_unique, vneg


@dataclass(frozen=True)
class SignedWeightVector:
    """A discrete signed measure on the index set, one weight per point."""

    weights: tuple

    def total_variation(self):
        return sum(abs(w) for w in self.weights)

    def support(self):
        return tuple(i for i, w in enumerate(self.weights) if w != 0)

    def positive_support(self):
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    def negative_support(self):
        return tuple(i for i, w in enumerate(self.weights) if w < 0)

    def to_json(self):
        return ratgeom.vector_to_json(self.weights)


@dataclass(frozen=True)
class ExtensionPolytope:
    """Outcome of the extension LP for one functional."""

    functional: tuple
    norm_value: object
    lp_min_value: object
    unique: bool
    point: SignedWeightVector
    second_witness: SignedWeightVector = None
    norming_x: tuple = None


class FiniteEmbedding:
    """Linear isometry x -> (<x, p_k>)_k into the sup-norm space on K."""

    def __init__(self, space, index_points, kind):
        self.space = space
        self.index_points = tuple(tuple(p) for p in index_points)
        self.kind = kind

    @property
    def matrix(self):
        """Row k is index point k, so u(x) = matrix @ x."""
        return self.index_points

    @property
    def exact(self):
        return self.space.exact

    def __len__(self):
        return len(self.index_points)

    def evaluate(self, x):
        if len(x) != self.space.dim:
            raise DimensionMismatch("vector dimension differs from space")
        return tuple(dot(p, x) for p in self.index_points)

    def __repr__(self):
        return (
            f"FiniteEmbedding({self.space.name!r}, K={len(self.index_points)}, "
            f"kind={self.kind!r})"
        )


def build_tf(space, index_points, kind="general-TF", sphere_checks=1000, seed=0):
    """Embedding from an explicit index set, validated to be isometric.

    The covering criterion (every dual extreme is an index point or the
    antipode of one) is necessary and sufficient; on top of it the norm
    identity is re-verified exhaustively on the primal ball vertices and
    on a seeded batch of random unit vectors.
    """
    pts = [tuple(p) for p in index_points]
    for p in pts:
        if len(p) != space.dim:
            raise DimensionMismatch("index point dimension differs from space")
    tol = space.tol
    covered = pts + [vneg(p) for p in pts]

    def is_covered(e):
        return any(all(abs(a - b) <= tol for a, b in zip(e, q)) for q in covered)

    for e in space.dual_extremes:
        if not is_covered(e):
            raise NotAnIsometry(
                f"dual extreme {e} not covered by the index points or their "
                "antipodes; the evaluation map cannot be isometric"
            )
    emb = FiniteEmbedding(space=space, index_points=pts, kind=kind)
    _check_isometry(emb, sphere_checks, seed)
    return emb


def _check_isometry(emb, sphere_checks, seed):
    space = emb.space
    tol = space.tol
    for x in space.primal_vertices():
        image = max(abs(v) for v in emb.evaluate(x))
        if abs(image - space_mod.norm(space, x)) > tol:
            raise InternalConsistencyError(
                f"norm not preserved at primal vertex {x}"
            )
    for x in sample_sphere_points(space, sphere_checks, seed):
        image = max(abs(v) for v in emb.evaluate(x))
        if abs(image - space_mod.norm(space, x)) > tol:
            raise InternalConsistencyError(f"norm not preserved at {x}")


def build_uE(space, suitable, sphere_checks=1000, seed=0):
    """Canonical embedding indexed by a half-selection of dual extremes."""
    if not (suitable.checks.cond_i and suitable.checks.cond_ii):
        raise PreconditionError(
            "index selection must satisfy conditions (i) and (ii)"
        )
    emb = build_tf(
        space,
        suitable.points(),
        kind="canonical-uE",
        sphere_checks=sphere_checks,
        seed=seed,
    )
    emb.usuitable = suitable
    return emb


def build_canonical(space, sphere_checks=1000, seed=0):
    """Embedding indexed by the full symmetric dual extreme set.

    Never has unique extensions: a unit functional e* that is itself an
    index point has the two extensions delta_{e*} and -delta_{-e*}.
    Kept as the standard negative example.
    """
    return build_tf(
        space,
        space.dual_extremes,
        kind="canonical-ball",
        sphere_checks=sphere_checks,
        seed=seed,
    )


def adjoint_apply(emb, mu):
    """Pull a weight vector back to a functional: sum_k mu_k p_k."""
    weights = mu.weights if isinstance(mu, SignedWeightVector) else tuple(mu)
    if len(weights) != len(emb.index_points):
        raise DimensionMismatch("weight count differs from index set size")
    out = [0] * emb.space.dim
    for w, p in zip(weights, emb.index_points):
        if w != 0:
            for j, c in enumerate(p):
                out[j] += w * c
    return tuple(out)


def dual_norm(space, xstar):
    """Dual norm by maximizing over the primal ball vertices (exact)."""
    return max(dot(v, xstar) for v in space.primal_vertices())


def _dual_norm_lp(space, xstar, tol):
    """Dual norm as an LP over the primal ball: max <x, x*>, ||x|| <= 1.

    Independent of the extension LP; also returns the norming vector x.
    """
    d = space.dim
    extremes = space.dual_extremes
    nslack = len(extremes)
    rows = []
    for i, e in enumerate(extremes):
        slack = [0] * nslack
        slack[i] = 1
        rows.append(tuple(e) + tuple(slack))
    one = Fraction(1) if space.exact else 1.0
    problem = LPProblem(
        objective=tuple(xstar) + tuple(0 for _ in range(nslack)),
        eq_matrix=tuple(rows),
        eq_rhs=tuple(one for _ in range(nslack)),
        bounds=tuple((None, None) for _ in range(d))
        + tuple((0, None) for _ in range(nslack)),
        sense="max",
    )
    sol = ratgeom.solve_lp(problem, tol)
    if sol.status != "optimal":
        raise InternalConsistencyError(
            f"dual norm LP ended {sol.status}; the primal ball is compact"
        )
    return sol.value, sol.point[:d]


def _extension_problem(emb, xstar):
    """Split-variable LP: min sum(mu+ + mu-) s.t. sum_k mu_k p_k = x*."""
    d = emb.space.dim
    npts = len(emb.index_points)
    rows = []
    for r in range(d):
        pos = tuple(p[r] for p in emb.index_points)
        neg = tuple(-p[r] for p in emb.index_points)
        rows.append(pos + neg)
    return LPProblem(
        objective=tuple(1 for _ in range(2 * npts)),
        eq_matrix=tuple(rows),
        eq_rhs=tuple(xstar),
    )


def _split_to_measure(point, npts):
    return SignedWeightVector(
        weights=tuple(point[k] - point[npts + k] for k in range(npts))
    )


def hb_extensions(emb, xstar) -> ExtensionPolytope:
    """All norm-preserving extensions of a functional, as an LP verdict.

    The optimal face of the total-variation LP is affinely isomorphic to
    the set of norm-preserving extensions (minimality forces the split
    parts to be complementary), so the singleton certificate decides
    uniqueness and any two distinct optima convert to two extensions.
    """
    if len(xstar) != emb.space.dim:
        raise DimensionMismatch("functional dimension differs from space")
    tol = emb.space.tol
    npts = len(emb.index_points)
    problem = _extension_problem(emb, xstar)
    sol, unique, pair = solve_unique(problem, tol)
    if sol.status != "optimal":
        raise InternalConsistencyError(
            f"extension LP ended {sol.status} for an isometric embedding"
        )
    norm_value, norming_x = _dual_norm_lp(emb.space, xstar, tol)
    if abs(sol.value - norm_value) > tol:
        raise InternalConsistencyError(
            f"minimal total variation {sol.value} differs from dual norm "
            f"{norm_value}"
        )
    point = _split_to_measure(sol.point, npts)
    second = None
    if not unique:
        w1, w2 = pair
        m1, m2 = _split_to_measure(w1, npts), _split_to_measure(w2, npts)
        point = m1
        second = m2
    return ExtensionPolytope(
        functional=tuple(xstar),
        norm_value=norm_value,
        lp_min_value=sol.value,
        unique=unique,
        point=point,
        second_witness=second,
        norming_x=tuple(norming_x),
    )


def phelps_support(emb, xstar) -> int:
    """Support size of the basic optimal extension of a unit functional.

    For a certified unique-extension embedding of an n-dimensional space
    this is at most n (each unit functional is a convex combination of at
    most n evaluations); the LP basic solution realizes the bound.
    """
    poly = hb_extensions(emb, xstar)
    if abs(poly.norm_value - 1) > emb.space.tol:
        raise PreconditionError("phelps_support expects a unit functional")
    size = len(poly.point.support())
    if size > emb.space.dim:
        raise InternalConsistencyError(
            f"basic extension support {size} exceeds dimension {emb.space.dim}"
        )
    return size


def u_core(emb):
    """Indices of the index points that are dual extreme points.

    For any isometric embedding the core's points, together with their
    antipodes, recover the whole dual extreme set; this is asserted.
    """
    space = emb.space
    tol = space.tol

    def match(p, e):
        return all(abs(a - b) <= tol for a, b in zip(p, e))

    core = tuple(
        k
        for k, p in enumerate(emb.index_points)
        if any(match(p, e) for e in space.dual_extremes)
    )
    core_pts = [emb.index_points[k] for k in core]
    recovered = {
        i
        for i, e in enumerate(space.dual_extremes)
        if any(match(p, e) or match(vneg(p), e) for p in core_pts)
    }
    if recovered != set(range(len(space.dual_extremes))):
        raise InternalConsistencyError(
            "core points and their antipodes fail to recover the dual extremes"
        )
    return core


def compose(inner, outer) -> FiniteEmbedding:
    """Compose X -> C(E1) with an embedding C(E1) -> C(E2).

    The outer embedding must live on the sup-norm space of the inner
    index set; each outer index point is a weight vector on E1 and pulls
    back through the inner adjoint.  If the outer map has unique
    extensions, the composition does exactly when the inner one does.
    """
    n1 = len(inner.index_points)
    if outer.space.dim != n1:
        raise DimensionMismatch(
            f"outer embedding lives on dimension {outer.space.dim}, "
            f"inner index set has {n1} points"
        )
    expected = space_mod.linf_space(n1, tol=outer.space.tol)
    if set(outer.space.dual_extremes) != set(expected.dual_extremes):
        raise InputError(
            "outer embedding must be defined on the sup-norm space of the "
            "inner index set"
        )
    composite_points = [adjoint_apply(inner, w) for w in outer.index_points]
    return build_tf(inner.space, composite_points, kind="general-TF")


# ---------------------------------------------------------------------------
# functional sampling and the two-track verdict
# ---------------------------------------------------------------------------

def sample_sphere_points(space, count, seed=0):
    """Seeded random unit vectors of the primal norm (rational on exact path)."""
    rng = random.Random(seed)
    out = []
    d = space.dim
    while len(out) < count:
        if space.exact:
            x = tuple(
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d)
            )
        else:
            x = tuple(rng.uniform(-1, 1) for _ in range(d))
        n = space_mod.norm(space, x)
        if n <= space.tol:
            continue
        out.append(tuple(c / n for c in x))
    return out


def sample_unit_functionals(space, count, seed=0):
    """Seeded random dual-sphere functionals.

    Drawn as random rational combinations of the dual extremes, then
    renormalized exactly (dual norm via the primal ball vertices).
    """
    rng = random.Random(seed)
    out = []
    extremes = space.dual_extremes
    while len(out) < count:
        if space.exact:
            coeffs = [
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in extremes
            ]
        else:
            coeffs = [rng.uniform(-1, 1) for _ in extremes]
        xstar = [0] * space.dim
        for c, e in zip(coeffs, extremes):
            if c != 0:
                for j, v in enumerate(e):
                    xstar[j] += c * v
        n = dual_norm(space, tuple(xstar))
        if n <= space.tol:
            continue
        out.append(tuple(c / n for c in xstar))
    return out


def face_barycenters(space):
    """One relative-interior point per face of the dual ball.

    The equal-weight average of a face's extreme points lies in its
    relative interior, and faces of the unit ball sit on the unit sphere,
    so barycenters are unit functionals without renormalization.
    """
    out = []
    for face in space.faces():
        pts = [space.dual_extremes[i] for i in face.extreme_indices]
        out.append(ratgeom.vmean(pts))
    return out


@dataclass(frozen=True)
class SamplingFailure:
    functional: tuple
    witness1: SignedWeightVector
    witness2: SignedWeightVector

    def to_json_dict(self):
        return {
            "functional": ratgeom.vector_to_json(self.functional),
            "witness1": self.witness1.to_json(),
            "witness2": self.witness2.to_json(),
        }


@dataclass(frozen=True)
class UCertificate:
    space_name: str
    e_indices: tuple
    simplexoid: bool
    proper_u_suitable: bool
    certified_U: bool
    level: str  # "certificate" for exact data, "evidence" for the float path
    checked: int
    failures: tuple
    seed: int

    @property
    def evidence_U(self):
        return not self.failures

    def to_json_dict(self):
        return {
            "space": self.space_name,
            "E": list(self.e_indices) if self.e_indices is not None else None,
            "simplexoid": self.simplexoid,
            "proper_u_suitable": self.proper_u_suitable,
            "certified_U": self.certified_U,
            "level": self.level,
            "sampling": {
                "checked": self.checked,
                "failures": [f.to_json_dict() for f in self.failures],
            },
            "seed": self.seed,
        }


def verification_functionals(space, samples, seed=0):
    """Dual extremes, all face barycenters, then seeded random functionals."""
    funcs = list(space.dual_extremes)
    funcs.extend(face_barycenters(space))
    funcs.extend(sample_unit_functionals(space, samples, seed))
    return funcs


def verify_u_embedding(emb, samples=1000, seed=0) -> UCertificate:
    """Two-track unique-extension verdict for a finite embedding.

    Track (a), the certificate: simplexoid dual ball plus a proper
    half-selection index set.  Track (b), the evidence: LP uniqueness on
    extremes, face barycenters and sampled functionals.  Exact-path
    disagreement between a positive certificate and a sampling failure is
    an internal error, not a report.
    """
    space = emb.space
    simplexoid, _ = space_mod.is_simplexoid(space)
    suitable = getattr(emb, "usuitable", None)
    proper = bool(suitable and suitable.checks.proper)
    certified = bool(emb.exact and simplexoid and proper)
    level = "certificate" if emb.exact else "evidence"

    failures = []
    funcs = verification_functionals(space, samples, seed)
    for xstar in funcs:
        poly = hb_extensions(emb, xstar)
        if not poly.unique:
            failures.append(
                SamplingFailure(
                    functional=tuple(xstar),
                    witness1=poly.point,
                    witness2=poly.second_witness,
                )
            )
    if certified and failures:
        raise InternalConsistencyError(
            f"theorem track certifies uniqueness but sampling found "
            f"{len(failures)} failures (first at {failures[0].functional})"
        )
    return UCertificate(
        space_name=space.name,
        e_indices=tuple(suitable.indices) if suitable else None,
        simplexoid=simplexoid,
        proper_u_suitable=proper,
        certified_U=certified,
        level=level,
        checked=len(funcs),
        failures=tuple(failures),
        seed=seed,
    )
