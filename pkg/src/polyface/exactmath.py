"""Exact rational vectors, matrices, and linear-algebra kernels.

Everything here is arbitrary-precision `fractions.Fraction` arithmetic; no
operation ever rounds.  Vectors are tuples, matrices are lists of row
tuples; integers are accepted anywhere a rational is (they are exact).

The kernels other modules rely on:

* ``solve_linear_system`` -- exact solve with an inconsistency witness
  (row combination y with y*A = 0, y*b != 0) when there is none.
* ``matrix_rank`` / ``nullspace`` -- rank and kernel over the rationals.
* ``affine_dependencies`` -- basis of the affine dependencies of a point
  list (coefficients summing to zero with vanishing weighted sum).
* ``affine_hull_frame`` -- exact reduced coordinates on the affine hull
  of a point set, used to shrink LP dimensions before face tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Q = Fraction

Vector = tuple  # tuple of Fraction|int
Matrix = list  # list of Vector rows


def as_vector(entries: Sequence) -> Vector:
    return tuple(Q(e) for e in entries)


def zero_vector(dim: int) -> Vector:
    return (Q(0),) * dim


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def vec_dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Q(0))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(vec_dot(row, v) for row in m)


def mat_transpose(m: Sequence[Sequence]) -> Matrix:
    return [tuple(col) for col in zip(*m)] if m else []


def _pivot_row(rows, start, col):
    """Index of the pivot row for `col`: largest |value|, lowest row on ties."""
    best = -1
    best_val = None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if v == 0:
            continue
        a = -v if v < 0 else v
        if best_val is None or a > best_val:
            best, best_val = r, a
    return best


def row_reduce(rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan elimination to reduced row echelon form.

    Returns (rows, pivot_cols).  Entries are reduced to lowest terms by
    Fraction arithmetic at every step.
    """
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        p = _pivot_row(rows, r, c)
        if p < 0:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def matrix_rank(m: Sequence[Sequence]) -> int:
    rows = [[Q(x) for x in row] for row in m]
    _, pivots = row_reduce(rows)
    return len(pivots)


@dataclass(frozen=True)
class LinearSolveResult:
    """Outcome of an exact linear solve A x = b.

    status is "unique", "underdetermined" (solution is one particular
    solution, free variables set to zero), or "inconsistent" (witness is
    a row combination y with y*A = 0 and y*b != 0).
    """

    status: str
    solution: Vector | None = None
    witness: Vector | None = None
    free_columns: tuple[int, ...] = ()


def solve_linear_system(a: Sequence[Sequence], b: Sequence) -> LinearSolveResult:
    """Solve A x = b exactly over the rationals."""
    nrows = len(a)
    if nrows != len(b):
        raise ValueError(f"A has {nrows} rows but b has {len(b)} entries")
    ncols = len(a[0]) if nrows else 0
    # Augment with an identity block to track the row operations, then b.
    rows = [
        [Q(x) for x in a[r]] + [Q(1) if i == r else Q(0) for i in range(nrows)] + [Q(b[r])]
        for r in range(nrows)
    ]
    work = [row[:ncols] for row in rows]
    # Reduce jointly: eliminate using only the A block for pivot choice.
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = _pivot_row(work, r, c)
        if p < 0:
            continue
        work[r], work[p] = work[p], work[r]
        rows[r], rows[p] = rows[p], rows[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    rank = len(pivots)
    # Inconsistent iff some zero row of A maps to a nonzero rhs.
    for i in range(rank, nrows):
        if rows[i][-1] != 0:
            witness = tuple(rows[i][ncols : ncols + nrows])
            return LinearSolveResult(status="inconsistent", witness=witness)
    sol = [Q(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    free = tuple(c for c in range(ncols) if c not in set(pivots))
    status = "unique" if rank == ncols else "underdetermined"
    return LinearSolveResult(status=status, solution=tuple(sol), free_columns=free)


def nullspace(m: Sequence[Sequence]) -> list[Vector]:
    """Basis of {x : M x = 0}, one vector per free column of the rref."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rows = [[Q(x) for x in row] for row in m]
    rows, pivots = row_reduce(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Q(0)] * ncols
        v[free] = Q(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][free]
        basis.append(tuple(v))
    return basis


def canonical_integer_vector(v: Sequence) -> Vector:
    """Scale to coprime integers with a positive leading nonzero entry."""
    fracs = [Q(x) for x in v]
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
        if g == 1:
            break
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(Q(x) for x in ints)


def _gcd(a: int, b: int) -> int:
    import math

    return math.gcd(a, b)


def affine_dependencies(points: Sequence[Sequence]) -> list[Vector]:
    """Basis of all lambda with sum(lambda_i * p_i) = 0 and sum(lambda_i) = 0.

    Basis vectors are canonicalized to coprime integers with positive
    leading entry, so expected dependency patterns can be asserted
    verbatim in tests.
    """
    if not points:
        return []
    dim = len(points[0])
    cols = len(points)
    m = [[Q(points[j][i]) for j in range(cols)] for i in range(dim)]
    m.append([Q(1)] * cols)
    return [canonical_integer_vector(v) for v in nullspace(m)]


@dataclass(frozen=True)
class AffineHullFrame:
    """Exact reduced coordinates on the affine hull of a point set.

    origin + sum(c_i * basis_i) reconstructs any hull point from its
    reduced coordinates c.  `pivot_cols` are ambient coordinate positions
    at which the basis matrix is invertible; `inv_pivot` is the inverse
    of that square submatrix, so coordinates are a single matrix-vector
    product away.
    """

    origin: Vector
    basis: tuple[Vector, ...]
    pivot_cols: tuple[int, ...]
    inv_pivot: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.origin)

    def coords_of(self, point: Sequence, check: bool = True) -> Vector:
        delta = [Q(point[c]) - self.origin[c] for c in self.pivot_cols]
        coords = tuple(vec_dot(row, delta) for row in self.inv_pivot)
        if check and self.reconstruct(coords) != tuple(Q(x) for x in point):
            raise ValueError("point does not lie in the affine hull")
        return coords

    def reconstruct(self, coords: Sequence) -> Vector:
        out = list(self.origin)
        for c, direction in zip(coords, self.basis, strict=True):
            if c == 0:
                continue
            for i, d in enumerate(direction):
                if d != 0:
                    out[i] += c * d
        return tuple(out)

    def ambient_functional(self, a_frame: Sequence, b_frame) -> tuple[Vector, Fraction]:
        """Lift a functional on frame coordinates to ambient coordinates.

        Returns (a, b) with a . p - b == a_frame . coords_of(p) - b_frame
        for every p in the hull.
        """
        t = [vec_dot(a_frame, col) for col in zip(*self.inv_pivot)] if self.dim else []
        a = [Q(0)] * self.ambient_dim
        for c, val in zip(self.pivot_cols, t):
            a[c] = val
        a_t = tuple(a)
        b = Q(b_frame) + vec_dot(a_t, self.origin)
        return a_t, b


def affine_hull_frame(points: Sequence[Sequence]) -> AffineHullFrame:
    """Build an AffineHullFrame from a nonempty point list.

    Basis directions are chosen greedily in input order (first point is
    the origin), so the frame is deterministic.
    """
    if not points:
        raise ValueError("need at least one point")
    origin = as_vector(points[0])
    dim = len(origin)
    basis: list[Vector] = []
    reduced: list[list] = []  # echelon state of accepted directions
    pivot_cols: list[int] = []
    for p in points[1:]:
        d = [Q(x) - o for x, o in zip(p, origin, strict=True)]
        for row, c in zip(reduced, pivot_cols):
            if d[c] != 0:
                f = d[c] / row[c]
                d = [x - f * y for x, y in zip(d, row)]
        lead = next((i for i, x in enumerate(d) if x != 0), None)
        if lead is None:
            continue
        basis.append(tuple(Q(x) - o for x, o in zip(p, origin, strict=True)))
        reduced.append(d)
        pivot_cols.append(lead)
    m = len(basis)
    if m:
        square = [[basis[j][c] for j in range(m)] for c in pivot_cols]
        inv = _invert(square)
    else:
        inv = []
    # inv maps pivot-coordinate deltas to basis coefficients:
    # coords = inv * (p - origin)[pivot_cols].
    return AffineHullFrame(
        origin=origin,
        basis=tuple(basis),
        pivot_cols=tuple(pivot_cols),
        inv_pivot=tuple(tuple(row) for row in inv),
    )


def _invert(square: list[list]) -> list[list]:
    n = len(square)
    aug = [[Q(x) for x in row] + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(square)]
    aug, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug]
