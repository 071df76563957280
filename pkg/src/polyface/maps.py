"""Exact affine maps between the family coordinate spaces.

The four named constructions:

* ``prop1_projection`` -- the linear surjection from assignment-tensor
  space onto edge-permutation space (each edge-pair coordinate is the
  sum of the two tensor coordinates that can light it up).
* ``thm1_embedding``  -- the coordinate identification exhibiting the
  assignment-tensor vertices as the face of the Boolean-quadric cube
  cut out by zero fixings plus row/column-sum equations.
* ``lemma1_face_iso`` -- the face of the edge-permutation polytope fixing
  all graph vertices above 3, affinely isomorphic to the n = 3 polytope;
  the inverse map reconstructs every coordinate via the h indicator
  combinations.
* ``thm2_face_iso``   -- the face of the even-order edge-permutation
  polytope whose generators swap-or-fix the pairs (2i-1, 2i), affinely
  isomorphic to the Boolean quadric polytope.

plus generic affine-map fitting over vertex correspondences and the
brute-force affine-isomorphism search used for the non-isomorphism
verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .exactmath import affine_dependencies, affine_hull_frame, row_reduce
from .faces import FaceByEquations, face_by_equations, q_str
from .families import (
    VertexSet,
    bqp_scheme,
    bqp_vertices,
    edge_list,
    phi_scheme,
    phi_vertices,
    qap_scheme,
)

Q = Fraction


@dataclass(frozen=True)
class AffineMap:
    """apply(v) = linear . v + offset, all entries exact rationals."""

    name: str
    domain_dim: int
    codomain_dim: int
    linear: tuple
    offset: tuple

    def __post_init__(self):
        if len(self.linear) != self.codomain_dim or len(self.offset) != self.codomain_dim:
            raise ValueError("map shape mismatch")
        for row in self.linear:
            if len(row) != self.domain_dim:
                raise ValueError("map shape mismatch")

    def apply(self, point: Sequence) -> tuple:
        nz = [(j, x) for j, x in enumerate(point) if x != 0]
        out = list(self.offset)
        for r in range(self.codomain_dim):
            row = self.linear[r]
            acc = out[r]
            for j, x in nz:
                if row[j] != 0:
                    acc += row[j] * x
            out[r] = acc
        return tuple(out)

    def apply_vertex(self, onepositions: Sequence[int]) -> tuple:
        """apply to a 0/1 point given by its one-position offsets."""
        out = list(self.offset)
        for r in range(self.codomain_dim):
            row = self.linear[r]
            out[r] = out[r] + sum((row[j] for j in onepositions if row[j] != 0), Q(0))
        return tuple(out)

    def to_json(self) -> dict:
        triplets = [
            [r, c, q_str(x)]
            for r, row in enumerate(self.linear)
            for c, x in enumerate(row)
            if x != 0
        ]
        return {
            "name": self.name,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "linear": triplets,
            "offset": [q_str(x) for x in self.offset],
        }

    @staticmethod
    def from_json(data: dict) -> "AffineMap":
        rows = [[Q(0)] * data["domain_dim"] for _ in range(data["codomain_dim"])]
        for r, c, x in data["linear"]:
            rows[r][c] = Q(x)
        return AffineMap(
            name=data["name"],
            domain_dim=data["domain_dim"],
            codomain_dim=data["codomain_dim"],
            linear=tuple(tuple(row) for row in rows),
            offset=tuple(Q(x) for x in data["offset"]),
        )


@dataclass(frozen=True)
class VertexCorrespondence:
    """Bijection between two vertex index sets, with generator semantics."""

    pairs: tuple[tuple[int, int], ...]
    description: str

    def __post_init__(self):
        dom = [a for a, _ in self.pairs]
        cod = [b for _, b in self.pairs]
        if len(set(dom)) != len(dom) or len(set(cod)) != len(cod):
            raise ValueError("correspondence is not bijective")


def _zero_rows(nrows, ncols):
    return [[Q(0)] * ncols for _ in range(nrows)]


# --- projection of assignment tensors onto edge permutations --------------


def prop1_projection(n: int) -> AffineMap:
    """Linear map sending y to z by z[(i,j),(k,l)] = y_{ikjl} + y_{iljk}."""
    if n < 3:
        raise ValueError("need n >= 3")
    qs, ps = qap_scheme(n), phi_scheme(n)
    rows = _zero_rows(ps.ambient_dim, qs.ambient_dim)
    for i, j in edge_list(n):
        for k, l in edge_list(n):
            r = ps.encode((i, j), (k, l))
            rows[r][qs.encode(i, k, j, l)] += 1
            rows[r][qs.encode(i, l, j, k)] += 1
    return AffineMap(
        name=f"qap({n})->phi({n}) projection",
        domain_dim=qs.ambient_dim,
        codomain_dim=ps.ambient_dim,
        linear=tuple(tuple(r) for r in rows),
        offset=(Q(0),) * ps.ambient_dim,
    )


# --- the assignment polytope as a face of the Boolean quadric cube --------


@dataclass(frozen=True)
class QuadricFaceEmbedding:
    """Data identifying assignment tensors inside the quadric polytope.

    Flat offsets of the two ambient spaces coincide (cell-major order),
    so the coordinate identification is the identity on offsets.

    row_zero_fixings kill same-row diagonal-cell products, making each
    row of the generator carry at most one 1; setting the row sums to 1
    then cuts a further face (row sums <= 1 is valid once the zeros
    hold).  The column sums alone are NOT one-sided on that face -- a
    row-stochastic generator can put two 1s in a column -- so
    col_zero_fixings (same-column products) are provided as the
    coordinate form that makes the column-sum equations a face; with
    them the column sums become derived consequences.
    """

    n: int
    ambient_dim: int
    row_zero_fixings: tuple[tuple[int, int], ...]  # (offset, 0)
    col_zero_fixings: tuple[tuple[int, int], ...]  # (offset, 0)
    row_sum_groups: tuple[tuple[int, ...], ...]  # each sums to 1
    col_sum_groups: tuple[tuple[int, ...], ...]


def thm1_embedding(n: int) -> QuadricFaceEmbedding:
    if n < 2:
        raise ValueError("need n >= 2")
    qs = qap_scheme(n)
    row_fixings = []
    col_fixings = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for l in range(1, n + 1):
                if j != l:
                    row_fixings.append((qs.encode(i, j, i, l), 0))
                    col_fixings.append((qs.encode(j, i, l, i), 0))
    row_groups = tuple(
        tuple(qs.encode(i, j, i, j) for j in range(1, n + 1)) for i in range(1, n + 1)
    )
    col_groups = tuple(
        tuple(qs.encode(i, j, i, j) for i in range(1, n + 1)) for j in range(1, n + 1)
    )
    return QuadricFaceEmbedding(
        n=n,
        ambient_dim=qs.ambient_dim,
        row_zero_fixings=tuple(row_fixings),
        col_zero_fixings=tuple(col_fixings),
        row_sum_groups=row_groups,
        col_sum_groups=col_groups,
    )


# --- the n = 3 edge polytope as a face of the order-n one ------------------


@dataclass(frozen=True)
class FaceIsoResult:
    vertex_set: VertexSet
    face: FaceByEquations
    forward: AffineMap
    inverse: AffineMap
    correspondence: VertexCorrespondence
    extra: dict


def _h_indicator_cells(i: int, k: int):
    """phi(3) cells whose sum minus one indicates 'image of i is k'."""
    cells = []
    for jp in range(1, 4):
        if jp == i:
            continue
        for lp in range(1, 4):
            if lp == k:
                continue
            e = (min(i, jp), max(i, jp))
            f = (min(k, lp), max(k, lp))
            cells.append((e, f))
    return cells


def lemma1_face_iso(n: int, vs: VertexSet | None = None) -> FaceIsoResult:
    """Face of phi(n) fixing graph vertices 4..n, mapped onto phi(3).

    forward: projection onto the 9 coordinates with all endpoints in [3];
    inverse: reconstructs every coordinate, using h_{ik} (an affine
    combination of four low-block coordinates minus one) for the mixed
    coordinates z[(i,j),(k,j)] with j > 3.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    if vs is None:
        vs = phi_vertices(n)
    ps, p3 = phi_scheme(n), phi_scheme(3)
    equations = []
    for i, j in edge_list(n):
        if j <= 3:
            continue
        for k, l in edge_list(n):
            if l != j:
                equations.append((ps.encode((i, j), (k, l)), 0))
    face = face_by_equations(vs, equations)

    fwd_rows = _zero_rows(p3.ambient_dim, ps.ambient_dim)
    for e in edge_list(3):
        for f in edge_list(3):
            fwd_rows[p3.encode(e, f)][ps.encode(e, f)] = Q(1)
    forward = AffineMap(
        name=f"phi({n}) face -> phi(3) projection",
        domain_dim=ps.ambient_dim,
        codomain_dim=p3.ambient_dim,
        linear=tuple(tuple(r) for r in fwd_rows),
        offset=(Q(0),) * p3.ambient_dim,
    )

    inv_rows = _zero_rows(ps.ambient_dim, p3.ambient_dim)
    inv_offset = [Q(0)] * ps.ambient_dim
    for i, j in edge_list(n):
        for k, l in edge_list(n):
            r = ps.encode((i, j), (k, l))
            if j <= 3 and l <= 3:
                inv_rows[r][p3.encode((i, j), (k, l))] = Q(1)
            elif j >= 4 and i <= 3:
                if l == j and k <= 3:
                    # z[(i,j),(k,j)] = h_{ik}
                    for e, f in _h_indicator_cells(i, k):
                        inv_rows[r][p3.encode(e, f)] += 1
                    inv_offset[r] -= 1
            elif i >= 4:
                if (k, l) == (i, j):
                    inv_offset[r] = Q(1)
            # remaining coordinates stay identically zero on the face
    inverse = AffineMap(
        name=f"phi(3) -> phi({n}) face",
        domain_dim=p3.ambient_dim,
        codomain_dim=ps.ambient_dim,
        linear=tuple(tuple(r) for r in inv_rows),
        offset=tuple(inv_offset),
    )

    phi3 = phi_vertices(3)
    label_to_phi3 = {lab: i for i, lab in enumerate(phi3.labels)}
    pairs = []
    for face_pos, vidx in enumerate(face.subset):
        restricted = vs.labels[vidx][:3]
        pairs.append((vidx, label_to_phi3[restricted]))
    corr = VertexCorrespondence(
        pairs=tuple(pairs),
        description="generator restricted to the first three graph vertices",
    )
    h12_cells = tuple(phi_scheme(3).encode(e, f) for e, f in _h_indicator_cells(1, 2))
    return FaceIsoResult(
        vertex_set=vs,
        face=face,
        forward=forward,
        inverse=inverse,
        correspondence=corr,
        extra={"phi3": phi3, "h12_cells": h12_cells},
    )


# --- the Boolean quadric polytope as a face of phi(2k) ---------------------


def _block(x: int) -> int:
    return (x + 1) // 2


def thm2_face_iso(k: int, vs: VertexSet | None = None) -> FaceIsoResult:
    """Face of phi(2k) whose generators swap or fix each pair (2i-1, 2i).

    The face is cut out by fixing the intra-pair coordinates to one; its
    vertices correspond to bit vectors u with u_i = 1 exactly when pair i
    is left unchanged, and the face is affinely isomorphic to the Boolean
    quadric polytope of order k under x = u (x) u.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    n2 = 2 * k
    if vs is None:
        vs = phi_vertices(n2)
    ps, bs = phi_scheme(n2), bqp_scheme(k)
    equations = [(ps.encode((2 * i - 1, 2 * i), (2 * i - 1, 2 * i)), 1) for i in range(1, k + 1)]
    face = face_by_equations(vs, equations)

    fwd_rows = _zero_rows(bs.ambient_dim, ps.ambient_dim)
    for r in range(1, k + 1):
        for c in range(1, k + 1):
            out = bs.encode(r, c)
            if r < c:
                fwd_rows[out][ps.encode((2 * r, 2 * c), (2 * r, 2 * c))] = Q(1)
            elif r > c:
                fwd_rows[out][ps.encode((2 * c, 2 * r), (2 * c, 2 * r))] = Q(1)
            elif r == 1:
                fwd_rows[out][ps.encode((2, 4), (2, 4))] = Q(1)
                fwd_rows[out][ps.encode((2, 4), (2, 3))] = Q(1)
            else:
                fwd_rows[out][ps.encode((2, 2 * r), (2, 2 * r))] = Q(1)
                fwd_rows[out][ps.encode((2, 2 * r), (1, 2 * r))] = Q(1)
    forward = AffineMap(
        name=f"phi({n2}) face -> bqp({k})",
        domain_dim=ps.ambient_dim,
        codomain_dim=bs.ambient_dim,
        linear=tuple(tuple(r) for r in fwd_rows),
        offset=(Q(0),) * bs.ambient_dim,
    )

    inv_rows = _zero_rows(ps.ambient_dim, bs.ambient_dim)
    inv_offset = [Q(0)] * ps.ambient_dim
    for a, b in edge_list(n2):
        bi, bj = _block(a), _block(b)
        for c, d in edge_list(n2):
            r = ps.encode((a, b), (c, d))
            if bi == bj:
                if (c, d) == (a, b):
                    inv_offset[r] = Q(1)
                continue
            if _block(c) != bi or _block(d) != bj:
                continue
            row = inv_rows[r]
            same_a, same_b = c == a, d == b
            xii, xjj, xij = bs.encode(bi, bi), bs.encode(bj, bj), bs.encode(bi, bj)
            if same_a and same_b:
                row[xij] += 1
            elif same_a:
                row[xii] += 1
                row[xij] -= 1
            elif same_b:
                row[xjj] += 1
                row[xij] -= 1
            else:
                inv_offset[r] += 1
                row[xii] -= 1
                row[xjj] -= 1
                row[xij] += 1
    inverse = AffineMap(
        name=f"bqp({k}) -> phi({n2}) face",
        domain_dim=bs.ambient_dim,
        codomain_dim=ps.ambient_dim,
        linear=tuple(tuple(r) for r in inv_rows),
        offset=tuple(inv_offset),
    )

    bqp = bqp_vertices(k)
    bits_to_idx = {lab: i for i, lab in enumerate(bqp.labels)}
    pairs = []
    for vidx in face.subset:
        images = tuple(int(ch) for ch in vs.labels[vidx])
        u = "".join("1" if images[2 * i - 2] == 2 * i - 1 else "0" for i in range(1, k + 1))
        pairs.append((vidx, bits_to_idx[u]))
    corr = VertexCorrespondence(
        pairs=tuple(pairs),
        description="bit i set exactly when the generator leaves pair (2i-1, 2i) unchanged",
    )

    groups = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            A, B, C, D = 2 * i - 1, 2 * i, 2 * j - 1, 2 * j
            enc = lambda e, f: ps.encode(e, f)
            groups.append(("equal", (enc((A, C), (A, C)), enc((A, D), (A, D)), enc((B, C), (B, C)), enc((B, D), (B, D)))))
            groups.append(("equal", (enc((A, C), (A, D)), enc((A, D), (A, C)), enc((B, C), (B, D)), enc((B, D), (B, C)))))
            groups.append(("equal", (enc((A, C), (B, C)), enc((A, D), (B, D)), enc((B, C), (A, C)), enc((B, D), (A, D)))))
            groups.append(("equal", (enc((A, C), (B, D)), enc((A, D), (B, C)), enc((B, C), (A, D)), enc((B, D), (A, C)))))
            groups.append(("sum1", (enc((B, D), (A, C)), enc((B, D), (A, D)), enc((B, D), (B, C)), enc((B, D), (B, D)))))
    return FaceIsoResult(
        vertex_set=vs,
        face=face,
        forward=forward,
        inverse=inverse,
        correspondence=corr,
        extra={"bqp": bqp, "consistency_groups": tuple(groups), "k": k},
    )


# --- generic fitting and isomorphism search --------------------------------


@dataclass(frozen=True)
class FitResult:
    map: AffineMap | None
    is_isomorphism: bool
    domain_hull_dim: int
    codomain_hull_dim: int
    failure_dependency: tuple | None = None
    failure_coordinate: int | None = None


def _dense_points(v) -> list[tuple]:
    if isinstance(v, VertexSet):
        return v.dense_all()
    return [tuple(x) for x in v]


def fit_affine_map(dom, cod, corr: Sequence[int], name: str = "fitted") -> FitResult:
    """Affine map with apply(v_i) = w_{corr[i]} exactly, when one exists.

    Returns the map (free parameters set to zero) or the affine
    dependency of the domain points that the correspondence fails to
    transport.  is_isomorphism reports whether the hulls have equal
    dimension, i.e. whether the fitted map restricts to an affine
    isomorphism of hulls.
    """
    dpts, cpts = _dense_points(dom), _dense_points(cod)
    if len(dpts) != len(cpts):
        raise ValueError("vertex sets have different sizes")
    if sorted(corr) != list(range(len(cpts))):
        raise ValueError("correspondence is not a bijection")
    ddim = len(dpts[0])
    cdim = len(cpts[0])
    npts = len(dpts)
    dim_d = affine_hull_frame(dpts).dim
    dim_c = affine_hull_frame(cpts).dim
    # One shared elimination for all output coordinates: [v_i | 1 | targets].
    aug = []
    for i in range(npts):
        row = [Q(x) for x in dpts[i]] + [Q(1)]
        row.extend(Q(cpts[corr[i]][r]) for r in range(cdim))
        aug.append(row)
    nunk = ddim + 1
    work = [row[:nunk] for row in aug]
    keep = [row[:] for row in aug]
    # Row-reduce using only the unknown block for pivots; mirror ops on keep.
    pivots = []
    r = 0
    for c in range(nunk):
        if r >= npts:
            break
        best = -1
        best_val = None
        for i in range(r, npts):
            v = work[i][c]
            if v != 0:
                av = -v if v < 0 else v
                if best_val is None or av > best_val:
                    best, best_val = i, av
        if best < 0:
            continue
        work[r], work[best] = work[best], work[r]
        keep[r], keep[best] = keep[best], keep[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
            keep[r] = [x / pv for x in keep[r]]
        for i in range(npts):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
                keep[i] = [x - f * y for x, y in zip(keep[i], keep[r])]
        pivots.append(c)
        r += 1
    rank = len(pivots)
    # Inconsistency: a zero combination of [v_i | 1] with nonzero target.
    for i in range(rank, npts):
        for rr in range(cdim):
            if keep[i][nunk + rr] != 0:
                # recover the dependency coefficients by re-solving
                dep = _dependency_from_row(dpts, keep[i][nunk + rr], corr, cpts, rr)
                return FitResult(
                    map=None,
                    is_isomorphism=False,
                    domain_hull_dim=dim_d,
                    codomain_hull_dim=dim_c,
                    failure_dependency=dep,
                    failure_coordinate=rr,
                )
    rows = _zero_rows(cdim, ddim)
    offset = [Q(0)] * cdim
    for i, c in enumerate(pivots):
        for rr in range(cdim):
            val = keep[i][nunk + rr]
            if c < ddim:
                rows[rr][c] = val
            else:
                offset[rr] = val
    amap = AffineMap(
        name=name,
        domain_dim=ddim,
        codomain_dim=cdim,
        linear=tuple(tuple(r) for r in rows),
        offset=tuple(offset),
    )
    return FitResult(
        map=amap,
        is_isomorphism=dim_d == dim_c,
        domain_hull_dim=dim_d,
        codomain_hull_dim=dim_c,
    )


def _dependency_from_row(dpts, _val, corr, cpts, rr):
    """Find an affine dependency of the domain violated by the targets."""
    for dep in affine_dependencies(dpts):
        img = sum((dep[i] * Q(cpts[corr[i]][rr]) for i in range(len(dpts))), Q(0))
        if img != 0:
            return dep
    return None


@dataclass(frozen=True)
class IsoSearchResult:
    found: bool
    tried: int
    correspondence: tuple[int, ...] | None = None
    map: AffineMap | None = None


def brute_force_iso_search(dom, cod, max_vertices: int = 8) -> IsoSearchResult:
    """Try all bijections; return the first affine isomorphism, if any.

    Each bijection is tested by exact affine-dependency transport (a
    bijection extends to an affine isomorphism of hulls iff hull
    dimensions agree and every affine dependency carries over); the
    first hit is refitted into an explicit map.
    """
    dpts, cpts = _dense_points(dom), _dense_points(cod)
    if len(dpts) != len(cpts):
        raise ValueError("vertex sets have different sizes")
    if len(dpts) > max_vertices:
        raise ValueError(f"refusing to search beyond {max_vertices} vertices")
    npts = len(dpts)
    dim_d = affine_hull_frame(dpts).dim
    dim_c = affine_hull_frame(cpts).dim
    deps_d = affine_dependencies(dpts)
    deps_c = affine_dependencies(cpts)
    # Echelonized codomain dependency space for membership tests.
    red = [list(v) for v in deps_c]
    red, piv = row_reduce(red)
    tried = 0
    for perm in permutations(range(npts)):
        tried += 1
        if dim_d != dim_c:
            continue
        ok = True
        for dep in deps_d:
            t = [Q(0)] * npts
            for i, coef in enumerate(dep):
                t[perm[i]] = coef
            for row, c in zip(red, piv):
                if t[c] != 0:
                    f = t[c]
                    t = [x - f * y for x, y in zip(t, row)]
            if any(x != 0 for x in t):
                ok = False
                break
        if ok:
            fit = fit_affine_map(dpts, cpts, perm, name="isomorphism")
            if fit.map is None or not fit.is_isomorphism:
                raise RuntimeError("dependency transport and fit disagree")
            return IsoSearchResult(found=True, tried=tried, correspondence=perm, map=fit.map)
    return IsoSearchResult(found=False, tried=tried)
