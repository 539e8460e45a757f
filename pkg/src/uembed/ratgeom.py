"""Exact rational linear algebra, convex hulls, polytope faces and a simplex solver.

Vectors are plain tuples.  Two numeric regimes share every code path:

* exact rationals (``fractions.Fraction`` entries, tolerance ``0``), and
* float64 (tolerance around ``1e-9``).

All sign and equality decisions go through an explicit tolerance, so the
same rank, face-enumeration and simplex routines serve both regimes.  With
tolerance 0 every verdict below is exact; this is what makes "the optimal
face is a singleton" a meaningful dichotomy rather than a numerical guess.

Rationals serialize as ``"p/q"`` (or ``"p"`` when the denominator is 1),
vectors as arrays of such strings; float vectors serialize as JSON numbers.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    InputError,
    InternalConsistencyError,
    NotAUnitBall,
    PreconditionError,
)

Rat = Fraction


# ---------------------------------------------------------------------------
# vectors and serialization
# ---------------------------------------------------------------------------

def parse_rat(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational."""
    return Fraction(str(text))


def format_rat(value) -> str:
    return str(value)


def parse_vector(items):
    """Build a vector from JSON entries.

    String entries (``"p/q"``) and ints parse exactly; any float entry puts
    the whole vector on the float path.  Mixing strings and floats is
    rejected because silently coercing exact data would lose its meaning.
    """
    has_float = any(isinstance(x, float) for x in items)
    has_str = any(isinstance(x, str) for x in items)
    if has_float and has_str:
        raise InputError("vector mixes exact ('p/q') and float coordinates")
    if has_float:
        return tuple(float(x) for x in items)
    return tuple(Fraction(str(x)) for x in items)


def vector_to_json(vec):
    if vectors_are_exact([vec]):
        return [str(c) for c in vec]
    return [float(c) for c in vec]


def vectors_are_exact(points) -> bool:
    """True when every coordinate is a Fraction/int, raising on a mix."""
    saw_exact = saw_float = False
    for p in points:
        for c in p:
            if isinstance(c, float):
                saw_float = True
            else:
                saw_exact = True
    if saw_exact and saw_float:
        raise InputError("point set mixes exact and float coordinates")
    return not saw_float


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(v):
    return tuple(-a for a in v)


def vscale(s, v):
    return tuple(s * a for a in v)


def vmean(points):
    n = len(points)
    acc = list(points[0])
    for p in points[1:]:
        for j, c in enumerate(p):
            acc[j] += c
    if vectors_are_exact(points):
        return tuple(c / n for c in acc)
    return tuple(c / float(n) for c in acc)


def _checked_points(points):
    pts = [tuple(p) for p in points]
    if not pts:
        raise InputError("empty point list")
    d = len(pts[0])
    if d == 0:
        raise InputError("zero-dimensional points")
    for p in pts:
        if len(p) != d:
            raise DimensionMismatch(
                f"points of dimension {len(p)} and {d} in one set"
            )
    return pts, d


# ---------------------------------------------------------------------------
# exact/float Gaussian elimination
# ---------------------------------------------------------------------------

def matrix_rank(rows, tol=0) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot, best = -1, tol
        for i in range(rank, len(rows)):
            a = abs(rows[i][col])
            if a > best:
                pivot, best = i, a
        if pivot < 0:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f != 0:
                fac = f / pval
                row = rows[i]
                for j in range(col, ncols):
                    row[j] -= fac * prow[j]
        rank += 1
        if rank == len(rows):
            break
    return rank


def solve_square(matrix, rhs, tol=0):
    """Solve a square linear system; None when there is no unique solution."""
    n = len(matrix)
    work = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot, best = -1, tol
        for i in range(col, n):
            a = abs(work[i][col])
            if a > best:
                pivot, best = i, a
        if pivot < 0:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        prow = work[col]
        pval = prow[col]
        for i in range(col + 1, n):
            f = work[i][col]
            if f != 0:
                fac = f / pval
                row = work[i]
                for j in range(col, n + 1):
                    row[j] -= fac * prow[j]
    sol = [0] * n
    for i in range(n - 1, -1, -1):
        acc = work[i][n]
        row = work[i]
        for j in range(i + 1, n):
            acc -= row[j] * sol[j]
        sol[i] = acc / row[i]
    return tuple(sol)


def affine_dim(points, tol=0) -> int:
    pts, _ = _checked_points(points)
    base = pts[0]
    return matrix_rank([vsub(p, base) for p in pts[1:]], tol)


def is_affinely_independent(points, tol=0) -> bool:
    """True iff the differences from the first point are linearly independent."""
    pts, _ = _checked_points(points)
    return affine_dim(pts, tol) == len(pts) - 1


# ---------------------------------------------------------------------------
# convex hull vertex reduction and face enumeration
# ---------------------------------------------------------------------------

def reduce_to_vertices(points, tol=0):
    """Keep exactly the extreme points of conv(points), in lexicographic order.

    A point survives iff it is not a convex combination of the others,
    decided by an exact LP feasibility check.
    """
    pts, d = _checked_points(points)
    uniq = sorted(set(pts))
    if len(uniq) <= 1:
        return uniq
    kept = []
    for i, p in enumerate(uniq):
        others = uniq[:i] + uniq[i + 1:]
        if not _in_convex_hull(p, others, tol):
            kept.append(p)
    return kept


def _in_convex_hull(point, generators, tol=0) -> bool:
    d = len(point)
    rows = []
    for r in range(d):
        rows.append(tuple(g[r] for g in generators))
    rows.append(tuple(1 for _ in generators))
    rhs = tuple(point) + (1,)
    problem = LPProblem(
        objective=tuple(0 for _ in generators),
        eq_matrix=tuple(rows),
        eq_rhs=rhs,
    )
    return solve_lp(problem, tol=tol).status == "optimal"


FaceDescriptor = namedtuple("FaceDescriptor", ["support", "vertex_indices"])
"""A proper face of a polytope: a supporting vector ``z`` with max value 1,
and the (maximal) indices of the vertices lying on the hyperplane <z,.> = 1."""


def enumerate_faces(vertices, tol=0):
    """All proper nonempty faces of a symmetric full-dimensional polytope.

    Facets come from supporting hyperplanes through dimension-many vertices;
    lower faces are intersections of facets (every proper face of a polytope
    is an intersection of the facets containing it).  The supporting vector
    of an intersection is the average of the facet supports, which exposes
    exactly the intersection.
    """
    pts, d = _checked_points(vertices)
    if affine_dim(pts, tol) != d:
        raise DegenerateInput("polytope is not full-dimensional")
    pset = set(pts)
    if any(vneg(p) not in pset for p in pts):
        raise NotAUnitBall(
            "vertex set is not antipodally symmetric, so 0 need not be interior"
        )

    ones = tuple(1 for _ in range(d))
    facets = {}
    for comb in combinations(range(len(pts)), d):
        mat = [pts[i] for i in comb]
        z = solve_square(mat, ones, tol)
        if z is None:
            continue
        vals = [dot(z, p) for p in pts]
        if any(v > 1 + tol for v in vals):
            continue
        idx = frozenset(i for i, v in enumerate(vals) if abs(v - 1) <= tol)
        if idx not in facets:
            facets[idx] = z

    faces = dict(facets)
    frontier = list(facets.items())
    facet_items = list(facets.items())
    while frontier:
        fresh = []
        for idx_a, z_a in frontier:
            for idx_f, z_f in facet_items:
                inter = idx_a & idx_f
                if inter and inter not in faces:
                    z = tuple((a + b) / 2 for a, b in zip(z_a, z_f))
                    faces[inter] = z
                    fresh.append((inter, z))
        frontier = fresh

    described = [
        FaceDescriptor(support=z, vertex_indices=tuple(sorted(idx)))
        for idx, z in faces.items()
    ]
    described.sort(key=lambda f: (-len(f.vertex_indices), f.vertex_indices))
    return described


# ---------------------------------------------------------------------------
# linear programming: exact two-phase simplex with Bland's rule
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LPProblem:
    """min/max objective . x subject to eq_matrix @ x = eq_rhs and bounds.

    ``bounds`` holds one (lower, upper) pair per variable, with None for
    an unbounded side; omitted bounds default to (0, None).
    """

    objective: tuple
    eq_matrix: tuple
    eq_rhs: tuple
    bounds: tuple = None
    sense: str = "min"

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in ("min", "max"):
            raise InputError(f"unknown sense {self.sense!r}")
        for row in self.eq_matrix:
            if len(row) != n:
                raise DimensionMismatch(
                    f"constraint row of length {len(row)}, expected {n}"
                )
        if len(self.eq_rhs) != len(self.eq_matrix):
            raise DimensionMismatch("rhs length differs from row count")
        if self.bounds is not None and len(self.bounds) != n:
            raise DimensionMismatch("bounds length differs from variable count")

    def variable_bounds(self):
        if self.bounds is None:
            return tuple((0, None) for _ in self.objective)
        return self.bounds


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: object = None
    point: tuple = None
    basis: frozenset = frozenset()


class _Standard:
    """Standard form min c.y, A y = b, y >= 0, plus the recovery map."""

    __slots__ = ("a_rows", "b", "c", "cols", "shifts", "nvars")

    def __init__(self, problem: LPProblem):
        n = len(problem.objective)
        sign = -1 if problem.sense == "max" else 1
        bounds = problem.variable_bounds()
        cols = []  # (original variable, +1/-1); slack columns use (None, +1)
        col_lists = [[] for _ in range(n)]
        shifts = [0] * n
        upper_rows = []  # (column, width) pairs, one slack row each
        for i, (lo, hi) in enumerate(bounds):
            if lo is not None and hi is not None and lo == hi:
                shifts[i] = lo
                continue
            if lo is not None:
                shifts[i] = lo
                col_lists[i].append((len(cols), 1))
                cols.append((i, 1))
                if hi is not None:
                    upper_rows.append((len(cols) - 1, hi - lo))
            elif hi is not None:
                shifts[i] = hi
                col_lists[i].append((len(cols), -1))
                cols.append((i, -1))
            else:
                col_lists[i].append((len(cols), 1))
                cols.append((i, 1))
                col_lists[i].append((len(cols), -1))
                cols.append((i, -1))
        nslack = len(upper_rows)
        width = len(cols) + nslack

        a_rows = []
        b = []
        for r, row in enumerate(problem.eq_matrix):
            out = [0] * width
            rhs = problem.eq_rhs[r]
            for i in range(n):
                coeff = row[i]
                if coeff == 0:
                    continue
                if shifts[i] != 0:
                    rhs = rhs - coeff * shifts[i]
                for col, s in col_lists[i]:
                    out[col] = coeff * s
            a_rows.append(out)
            b.append(rhs)
        for k, (col, span) in enumerate(upper_rows):
            out = [0] * width
            out[col] = 1
            out[len(cols) + k] = 1
            a_rows.append(out)
            b.append(span)
        for _ in range(nslack):
            cols.append((None, 1))

        c = [0] * width
        for i in range(n):
            ci = sign * problem.objective[i]
            if ci == 0:
                continue
            for col, s in col_lists[i]:
                c[col] = ci * s

        self.a_rows = a_rows
        self.b = b
        self.c = c
        self.cols = cols
        self.shifts = shifts
        self.nvars = n

    def recover(self, y):
        x = list(self.shifts)
        for col, (var, s) in enumerate(self.cols):
            if var is not None and y[col] != 0:
                x[var] += s * y[col]
        return tuple(x)

    def basis_vars(self, basis_cols):
        out = set()
        for col in basis_cols:
            var, _ = self.cols[col]
            if var is not None:
                out.add(var)
        return frozenset(out)


def _pivot(rows, cost, basis, r, col):
    prow = rows[r]
    pval = prow[col]
    if pval != 1:
        rows[r] = prow = [x / pval for x in prow]
    for i, row in enumerate(rows):
        if i != r:
            f = row[col]
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(row, prow)]
    f = cost[col]
    if f != 0:
        for j in range(len(cost)):
            cost[j] -= f * prow[j]
    basis[r] = col


def _bland_iterate(rows, cost, basis, ncols, tol):
    """Run Bland-rule pivots to optimality; returns None or an unbounded ray."""
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] < -tol:
                enter = j
                break
        if enter < 0:
            return None
        leave = -1
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > tol:
                ratio = row[-1] / a
                if best is None or ratio < best - tol:
                    best, leave = ratio, i
                elif abs(ratio - best) <= tol and basis[i] < basis[leave]:
                    leave = i
        if leave < 0:
            ray = [0] * ncols
            ray[enter] = 1
            for i, row in enumerate(rows):
                if basis[i] < ncols:
                    ray[basis[i]] = -row[enter]
            return ray
        _pivot(rows, cost, basis, leave, enter)


def _simplex_standard(a_rows, b, c, tol):
    """Two-phase primal simplex on min c.y, A y = b, y >= 0.

    Returns a dict with status / y / basis (column indices) / reduced costs /
    ray (for unbounded problems).  Deterministic: Bland's entering rule and
    smallest-basis-index tie-breaking in the ratio test.
    """
    m = len(a_rows)
    n = len(c)
    rows = []
    for i in range(m):
        if b[i] < -tol:
            rows.append([-x for x in a_rows[i]] + [-b[i]])
        else:
            rows.append(list(a_rows[i]) + [b[i]])

    # crash basis from existing unit columns, artificials elsewhere
    basis = [-1] * m
    claimed = set()
    for j in range(n):
        nz = [i for i in range(m) if abs(rows[i][j]) > tol]
        if len(nz) == 1:
            i = nz[0]
            if i not in claimed and abs(rows[i][j] - 1) <= tol:
                basis[i] = j
                claimed.add(i)

    art_rows = [i for i in range(m) if basis[i] < 0]
    if art_rows:
        for k, i in enumerate(art_rows):
            for r in range(m):
                rows[r].insert(n + k, 1 if r == i else 0)
            basis[i] = n + k
        ncols = n + len(art_rows)
        cost = [0] * (ncols + 1)
        for i in art_rows:
            row = rows[i]
            for j in range(ncols + 1):
                cost[j] -= row[j]
        for j in range(n, ncols):
            cost[j] += 1
        ray = _bland_iterate(rows, cost, basis, ncols, tol)
        if ray is not None:  # phase-1 objective is bounded below by 0
            raise InternalConsistencyError("phase-1 simplex reported unbounded")
        if -cost[-1] > tol:
            return {"status": "infeasible"}
        # purge basic artificials, dropping redundant rows
        keep = []
        for i in range(len(rows)):
            if basis[i] < n:
                keep.append(i)
                continue
            pivot_col = -1
            for j in range(n):
                if abs(rows[i][j]) > tol:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                _pivot(rows, cost, basis, i, pivot_col)
                keep.append(i)
        rows = [rows[i][:n] + [rows[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        m = len(rows)

    cost = list(c) + [0]
    for i in range(m):
        f = cost[basis[i]]
        if f != 0:
            row = rows[i]
            for j in range(n + 1):
                cost[j] -= f * row[j]

    ray = _bland_iterate(rows, cost, basis, n, tol)
    y = [0] * n
    for i in range(m):
        y[basis[i]] = rows[i][-1]
    if ray is not None:
        return {"status": "unbounded", "y": y, "ray": ray, "basis": basis}
    return {"status": "optimal", "y": y, "basis": basis, "reduced": cost[:n]}


def _solve_detailed(problem: LPProblem, tol=0):
    std = _Standard(problem)
    res = _simplex_standard(std.a_rows, std.b, std.c, tol)
    if res["status"] == "infeasible":
        return LPSolution(status="infeasible"), std, res
    if res["status"] == "unbounded":
        return LPSolution(status="unbounded"), std, res
    x = std.recover(res["y"])
    value = dot(problem.objective, x)
    sol = LPSolution(
        status="optimal",
        value=value,
        point=x,
        basis=std.basis_vars(res["basis"]),
    )
    return sol, std, res


def solve_lp(problem: LPProblem, tol=0) -> LPSolution:
    """Solve an LP exactly (tol=0) or in float64 (tol>0).

    Infeasibility and unboundedness are reported in the status, never
    raised.  With identical inputs the returned basic solution is
    reproducible across runs (no randomized choices anywhere).
    """
    sol, _, _ = _solve_detailed(problem, tol)
    return sol


def solve_unique(problem: LPProblem, tol=0):
    """Solve and decide whether the optimal face is a single point.

    Returns ``(solution, unique, witnesses)`` where witnesses is None or a
    pair of distinct optimal points.  The test pins the objective value and
    maximizes the total mass of the nonbasic variables with zero reduced
    cost; by complementary slackness that maximum is 0 exactly when the
    optimal face is the solved basic point alone.
    """
    sol, std, res = _solve_detailed(problem, tol)
    if sol.status != "optimal":
        raise PreconditionError(f"LP is {sol.status}, optimal face undefined")

    basic = set(res["basis"])
    reduced = res["reduced"]
    n = len(std.c)
    free_mass = [j for j in range(n) if j not in basic and reduced[j] <= tol]
    if not free_mass:
        return sol, True, None

    v_std = dot(std.c, res["y"])
    a2 = [list(r) for r in std.a_rows] + [list(std.c)]
    b2 = list(std.b) + [v_std]
    c2 = [0] * n
    for j in free_mass:
        c2[j] = -1
    res2 = _simplex_standard(a2, b2, c2, tol)
    if res2["status"] == "optimal" and -dot(c2, res2["y"]) <= tol:
        return sol, True, None
    if res2["status"] == "unbounded":
        y2 = [a + r for a, r in zip(res2["y"], res2["ray"])]
    else:
        y2 = res2["y"]
    x1, x2 = sol.point, std.recover(y2)
    if _distinct(x1, x2, tol):
        return sol, False, (x1, x2)
    # split free variables can collapse two standard-form points into one;
    # fall back to coordinate-wise probing over the pinned optimal face
    pair = _coordinate_probe(problem, sol.value, tol)
    if pair is None:
        return sol, True, None
    return sol, False, pair


def _distinct(x1, x2, tol):
    return any(abs(a - b) > tol for a, b in zip(x1, x2))


def _coordinate_probe(problem, value, tol):
    pinned_rows = tuple(problem.eq_matrix) + (tuple(problem.objective),)
    pinned_rhs = tuple(problem.eq_rhs) + (value,)
    for i in range(len(problem.objective)):
        obj = tuple(1 if j == i else 0 for j in range(len(problem.objective)))
        lo = solve_lp(
            LPProblem(obj, pinned_rows, pinned_rhs, problem.bounds, "min"), tol
        )
        hi = solve_lp(
            LPProblem(obj, pinned_rows, pinned_rhs, problem.bounds, "max"), tol
        )
        if lo.status == "optimal" and hi.status == "optimal":
            if hi.value - lo.value > tol:
                return lo.point, hi.point
    return None


def optimal_face_is_singleton(problem: LPProblem, tol=0):
    """Is the set of optimal solutions a single point?

    Returns ``(True, None)`` or ``(False, (p, q))`` with two distinct optima.
    """
    _, unique, pair = solve_unique(problem, tol)
    return unique, pair
