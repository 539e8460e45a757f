"""Discretized measure-valued fields between compacta and their verification.

An operator C(K) -> C(S) corresponds to a weak*-continuous map F from S
into the measures on K; here both compacta are finite label sets or
regular grids on [0,1], and F is a per-point list of signed atoms.  The
operator acts by (T x)(s) = sum of atom weights times x at the atom label.

Such an operator is an isometric embedding with unique norm-preserving
extensions exactly when F sends a closed subset S0 homeomorphically onto
signed Diracs (one per K label, with a locally constant sign) and keeps
total variation strictly below 1 everywhere off S0.  ``verify_cks`` checks
the grid rendition of those two conditions and reports the margin
1 - max off-S0 norm.  Margins are honest about resolution: nothing is
claimed between grid points, and the recorded continuity bound (largest
total-variation jump between neighbors) quantifies what refinement
could still reveal.  A margin within tolerance of zero is reported as
inconclusive rather than pass or fail.

Constructions shipped: composition fields (Diracs along a map S -> K),
retraction fields with weight (1-f)/(1+f) at the retraction image, the
quadratic Bezier walk realizing convergent sequences inside C[0,1], and
the dyadic tent-sum field pinning finitely many targets at norm one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import embed as embed_mod, space as space_mod
from .errors import InputError, PreconditionError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class GridCompact:
    """Ordered labels with coordinates; adjacency is consecutive on grids."""

    labels: tuple
    coords: tuple
    kind: str  # "grid" (implicit chain adjacency) or "finite" (discrete)

    def __len__(self):
        return len(self.labels)

    def neighbors(self, i):
        if self.kind != "grid":
            return ()
        out = []
        if i > 0:
            out.append(i - 1)
        if i + 1 < len(self.labels):
            out.append(i + 1)
        return tuple(out)

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "labels": [_json_label(x) for x in self.labels],
            "coords": list(self.coords),
        }


def _json_label(x):
    return x if isinstance(x, (int, float, str)) else str(x)


def interval_grid(step, lo=0.0, hi=1.0) -> GridCompact:
    if step <= 0 or step > hi - lo:
        raise InputError("grid step must lie in (0, hi-lo]")
    n = round((hi - lo) / step)
    if abs(n * step - (hi - lo)) > 1e-12:
        raise InputError("grid step must divide the interval length")
    coords = tuple(lo + (hi - lo) * i / n for i in range(n + 1))
    return GridCompact(labels=coords, coords=coords, kind="grid")


def finite_set(labels) -> GridCompact:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise InputError("labels must be unique")
    return GridCompact(
        labels=labels, coords=tuple(range(len(labels))), kind="finite"
    )


@dataclass
class MeasureField:
    """Per-point signed atoms: F(s) = sum of weight * dirac(label).

    ``atoms[s]`` is a tuple of (codomain index, weight) pairs.  Every
    point's total variation is checked against 1 + tol at construction,
    and the largest jump between grid neighbors is recorded in
    ``meta["continuity_bound"]``.
    """

    domain: GridCompact
    codomain: GridCompact
    atoms: tuple
    tol: float = DEFAULT_TOL
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.atoms) != len(self.domain):
            raise InputError("one atom list per domain point required")
        for s, lst in enumerate(self.atoms):
            for k, w in lst:
                if not 0 <= k < len(self.codomain):
                    raise InputError(f"atom label index {k} out of range")
            tv = self.norm_at(s)
            if tv > 1 + self.tol:
                raise InputError(
                    f"total variation {tv} exceeds 1 at domain point "
                    f"{self.domain.labels[s]}"
                )
        self.meta.setdefault("continuity_bound", self._continuity_bound())

    def norm_at(self, s):
        return sum(abs(w) for _, w in self.atoms[s])

    def _as_dict(self, s):
        out = {}
        for k, w in self.atoms[s]:
            out[k] = out.get(k, 0.0) + w
        return out

    def _continuity_bound(self):
        if self.domain.kind != "grid":
            return None
        worst = 0.0
        for s in range(len(self.domain) - 1):
            a, b = self._as_dict(s), self._as_dict(s + 1)
            jump = sum(abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in set(a) | set(b))
            worst = max(worst, jump)
        return worst

    def to_json_dict(self):
        return {
            "S": self.domain.to_json_dict(),
            "K": self.codomain.to_json_dict(),
            "atoms": [[[k, w] for k, w in lst] for lst in self.atoms],
            "tolerance": self.tol,
        }


def field_from_json_dict(data) -> MeasureField:
    def grid(d):
        if d["kind"] == "grid":
            return GridCompact(
                labels=tuple(d["labels"]), coords=tuple(d["coords"]), kind="grid"
            )
        return finite_set(d["labels"])

    return MeasureField(
        domain=grid(data["S"]),
        codomain=grid(data["K"]),
        atoms=tuple(
            tuple((int(k), float(w)) for k, w in lst) for lst in data["atoms"]
        ),
        tol=float(data.get("tolerance", DEFAULT_TOL)),
    )


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def composition_field(domain, codomain, h, tol=DEFAULT_TOL) -> MeasureField:
    """F(s) = dirac at h(s): the field of a composition operator x -> x o h."""
    h = tuple(h)
    if len(h) != len(domain):
        raise InputError("h must assign a codomain index to every domain point")
    atoms = tuple(((int(k), 1.0),) for k in h)
    return MeasureField(
        domain=domain,
        codomain=codomain,
        atoms=atoms,
        tol=tol,
        meta={"construction": "composition", "h": list(h)},
    )


def retraction_field(domain, retract_indices, r, f, tol=DEFAULT_TOL) -> MeasureField:
    """Field of the embedding along a retraction onto a zero set.

    ``retract_indices`` lists the domain points forming K, ``r`` maps each
    domain index to an index into that list, and ``f`` is a [0,1]-valued
    function on the domain vanishing exactly on K.  The atom at s is
    dirac(r(s)) with weight (1 - f(s)) / (1 + f(s)); points of K keep
    weight exactly 1 and everything else stays strictly below 1.
    """
    retract_indices = tuple(retract_indices)
    r = tuple(r)
    f = tuple(f)
    if len(r) != len(domain) or len(f) != len(domain):
        raise InputError("r and f must be defined on every domain point")
    kset = set(retract_indices)
    position = {s: j for j, s in enumerate(retract_indices)}
    for j, s in enumerate(retract_indices):
        if r[s] != j:
            raise InputError("retraction must fix the retract pointwise")
    for s, val in enumerate(f):
        if val < 0 or val > 1:
            raise InputError("f must take values in [0, 1]")
        if (abs(val) <= tol) != (s in kset):
            raise InputError("zero set of f must be exactly the retract")
    atoms = []
    for s in range(len(domain)):
        w = (1.0 - f[s]) / (1.0 + f[s])
        atoms.append(((int(r[s]), w),))
    codomain = finite_set(tuple(domain.labels[s] for s in retract_indices))
    return MeasureField(
        domain=domain,
        codomain=codomain,
        atoms=tuple(atoms),
        tol=tol,
        meta={"construction": "retraction", "retract": list(retract_indices)},
    )


def bezier_field(big_n, grid_step, tol=DEFAULT_TOL) -> MeasureField:
    """Walk of quadratic Bezier arcs realizing 1/n -> dirac(n) in C[0,1].

    On the segment between consecutive breakpoints 1/(n+1) and 1/n the
    field is (1-u)^2 dirac(n+1) + u^2 dirac(n) (middle control point 0),
    so the norm dips to 1/2 mid-segment and reaches 1 only at the
    breakpoints.  Labels stop at ``big_n``; the tail of the sequence
    collapses to the limit label "inf" and is modeled by a single arc
    from dirac(inf) at t=0 to dirac(big_n) at the last breakpoint.
    Breakpoints snap to the nearest grid point so the boundary Diracs
    are exact on the grid.
    """
    if big_n < 2:
        raise InputError("need at least two sequence labels")
    domain = interval_grid(grid_step)
    npts = len(domain) - 1  # coords are i/npts
    labels = tuple(range(1, big_n + 1)) + ("inf",)
    codomain = finite_set(labels)
    label_index = {lab: i for i, lab in enumerate(labels)}

    def snap(t):
        return min(max(round(t * npts), 0), npts)

    breaks = [snap(1.0 / n) for n in range(1, big_n + 1)]
    if len(set(breaks)) != len(breaks) or 0 in breaks:
        raise InputError("grid too coarse to separate the breakpoints")
    # segments as (start grid index, end grid index, start label, end label)
    segments = []
    for n in range(1, big_n):
        segments.append((breaks[n], breaks[n - 1], n + 1, n))
    segments.append((0, breaks[big_n - 1], "inf", big_n))

    atoms = [None] * len(domain)
    for lo, hi, lab_start, lab_end in segments:
        ks, ke = label_index[lab_start], label_index[lab_end]
        span = hi - lo
        for i in range(lo, hi + 1):
            u = (i - lo) / span
            pair = []
            w0 = (1.0 - u) ** 2
            w1 = u * u
            if w0 > 0:
                pair.append((ks, w0))
            if w1 > 0:
                pair.append((ke, w1))
            atoms[i] = tuple(pair)
    return MeasureField(
        domain=domain,
        codomain=codomain,
        atoms=tuple(atoms),
        tol=tol,
        meta={
            "construction": "bezier",
            "N": big_n,
            "segments": segments,
            "breakpoints": breaks,
        },
    )


def gdelta_field(
    domain,
    targets,
    n_max=20,
    base_radius=None,
    renormalize=True,
    tol=DEFAULT_TOL,
) -> MeasureField:
    """Dyadic tent-sum field pinning each target at total variation one.

    Around target p_i, tents g_n of halving radius (all peaking at p_i,
    supported in disjoint base neighborhoods) are summed with weights
    2^-n up to ``n_max``.  The raw sum at a target is 1 - 2^-n_max; with
    ``renormalize`` the whole field is scaled so targets sit at exactly 1
    (the scaling is logged in ``meta``), keeping everything else strictly
    below 1.
    """
    if domain.kind != "grid":
        raise InputError("tent-sum field needs an interval grid")
    targets = tuple(float(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise InputError("targets must be distinct")
    coords = domain.coords
    idx = []
    for t in targets:
        j = min(range(len(coords)), key=lambda i: abs(coords[i] - t))
        idx.append(j)
    snapped = [coords[j] for j in idx]
    if base_radius is None:
        gaps = [
            abs(a - b) for i, a in enumerate(snapped) for b in snapped[:i]
        ]
        base_radius = (min(gaps) if gaps else 0.5) / 2.0
    for i, a in enumerate(snapped):
        for b in snapped[:i]:
            if abs(a - b) < 2 * base_radius:
                raise InputError("base neighborhoods of the targets overlap")

    radii = [base_radius * 2.0 ** (1 - n) for n in range(1, n_max + 1)]
    raw_peak = 1.0 - 2.0 ** (-n_max)
    scale = 1.0 / raw_peak if renormalize else 1.0

    atoms = []
    for s, t in enumerate(coords):
        entry = ()
        for i, p in enumerate(snapped):
            dist = abs(t - p)
            if dist < base_radius:
                w = 0.0
                for n, rad in enumerate(radii, start=1):
                    if dist < rad:
                        w += 2.0 ** (-n) * (1.0 - dist / rad)
                if w > 0:
                    entry = ((i, w * scale),)
                break
        atoms.append(entry)
    codomain = finite_set(tuple(snapped))
    return MeasureField(
        domain=domain,
        codomain=codomain,
        atoms=tuple(atoms),
        tol=tol,
        meta={
            "construction": "gdelta",
            "targets": list(snapped),
            "n_max": n_max,
            "base_radius": base_radius,
            "renormalized": bool(renormalize),
            "raw_target_norm": raw_peak,
            "scale": scale,
        },
    )


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CksVerdict:
    """Grid verdict for the two embedding-characterization conditions."""

    s0: tuple  # domain indices carrying signed Diracs
    h: tuple  # h[k] = domain index mapped to codomain label k, or None
    epsilon: tuple  # sign per codomain label, or None
    margin: float
    passed: bool
    inconclusive: bool
    failure: str = None

    def to_json_dict(self):
        return {
            "s0": list(self.s0),
            "h": list(self.h) if self.h is not None else None,
            "epsilon": list(self.epsilon) if self.epsilon is not None else None,
            "margin": self.margin,
            "pass": self.passed,
            "inconclusive": self.inconclusive,
            "failure": self.failure,
        }


def verify_cks(fieldmap: MeasureField) -> CksVerdict:
    """Dirac locus, induced bijection, sign continuity and strict margin.

    s0 collects the domain points where F is a signed Dirac within the
    atom tolerance; the verdict passes when the induced map label -> point
    is a bijection, the sign is constant on grid components of s0, and
    every off-s0 norm stays below 1 by more than the tolerance.
    """
    tol = fieldmap.tol
    s0 = []
    assignment = {}  # domain index -> (codomain index, sign)
    for s in range(len(fieldmap.domain)):
        d = fieldmap._as_dict(s)
        main = [(k, w) for k, w in d.items() if abs(w) > tol]
        if len(main) == 1:
            k, w = main[0]
            if abs(abs(w) - 1) <= tol:
                rest = sum(abs(v) for kk, v in d.items() if kk != k)
                if rest <= tol:
                    s0.append(s)
                    assignment[s] = (k, 1 if w > 0 else -1)

    preimages = {}
    for s in s0:
        k, sign = assignment[s]
        preimages.setdefault(k, []).append(s)

    failure = None
    for k, pre in sorted(preimages.items()):
        if len(pre) > 1:
            a, b = pre[0], pre[1]
            failure = (
                f"h not injective: s={fieldmap.domain.labels[a]}, "
                f"s={fieldmap.domain.labels[b]} collide on "
                f"k={fieldmap.codomain.labels[k]}"
            )
            break
    if failure is None:
        missing = [
            k for k in range(len(fieldmap.codomain)) if k not in preimages
        ]
        if missing:
            failure = (
                f"no point carries a Dirac at "
                f"k={fieldmap.codomain.labels[missing[0]]}"
            )

    h = None
    epsilon = None
    if failure is None:
        h = tuple(preimages[k][0] for k in range(len(fieldmap.codomain)))
        epsilon = tuple(
            assignment[h[k]][1] for k in range(len(fieldmap.codomain))
        )
        # sign must be constant on grid-connected components of s0
        s0set = set(s0)
        for s in s0:
            for nb in fieldmap.domain.neighbors(s):
                if nb in s0set and assignment[nb][1] != assignment[s][1]:
                    failure = (
                        f"sign flips between adjacent Dirac points "
                        f"{fieldmap.domain.labels[s]} and "
                        f"{fieldmap.domain.labels[nb]}"
                    )
                    break
            if failure:
                break

    off = [
        fieldmap.norm_at(s) for s in range(len(fieldmap.domain)) if s not in set(s0)
    ]
    margin = 1.0 - max(off) if off else 1.0
    inconclusive = failure is None and abs(margin) <= tol
    passed = failure is None and margin > tol
    if failure is None and not passed:
        failure = (
            "inconclusive at this resolution"
            if inconclusive
            else f"norm reaches 1 off the Dirac locus (margin {margin})"
        )
    return CksVerdict(
        s0=tuple(s0),
        h=h,
        epsilon=epsilon,
        margin=margin,
        passed=passed,
        inconclusive=inconclusive,
        failure=failure,
    )


@dataclass(frozen=True)
class ZeroSetReport:
    indices: tuple
    note: str

    def to_json_dict(self):
        return {"zero_set": list(self.indices), "note": self.note}


def minimal_ideal_zeroset(fieldmap: MeasureField) -> ZeroSetReport:
    """Vanishing locus of the field: Z = {s : F(s) = 0 within tolerance}.

    The operator's range lies inside the ideal of functions vanishing on
    Z, and that ideal is the smallest closed one containing the range.
    """
    z = tuple(
        s
        for s in range(len(fieldmap.domain))
        if fieldmap.norm_at(s) <= fieldmap.tol
    )
    return ZeroSetReport(
        indices=z,
        note=(
            "the operator range vanishes on the zero set, and the ideal of "
            "functions vanishing there is the minimal closed ideal "
            "containing it"
        ),
    )


def apply_field(fieldmap: MeasureField, values):
    """Apply the operator: (T x)(s) = sum of atom weights times x(label)."""
    values = tuple(values)
    if len(values) != len(fieldmap.codomain):
        raise InputError("need one value per codomain label")
    out = []
    for lst in fieldmap.atoms:
        out.append(sum(w * values[k] for k, w in lst))
    return tuple(out)


def sup_norm(values):
    return max(abs(v) for v in values) if values else 0.0


def to_finite_embedding(fieldmap: MeasureField, sphere_checks=200, seed=0):
    """Densify a finite-domain field into an embedding of the sup-norm space.

    Each domain point's atoms become a weight vector on the codomain; the
    result is an isometric embedding of the codomain's sup-norm space iff
    the field covers every Dirac up to sign, which build_tf validates.
    """
    n = len(fieldmap.codomain)
    rows = []
    for lst in fieldmap.atoms:
        row = [0.0] * n
        for k, w in lst:
            row[k] += w
        rows.append(tuple(row))
    base = space_mod.linf_space(n, tol=fieldmap.tol)
    return embed_mod.build_tf(
        base, rows, kind="general-TF", sphere_checks=sphere_checks, seed=seed
    )
