"""Face certification for 0/1 vertex sets.

A subset S of vertices either is the vertex set of a face (witnessed by
a supporting hyperplane with a strictly positive gap to the other
vertices) or it is not (witnessed by a point lying in both the affine
hull of S and the convex hull of the rest).  ``is_face`` always returns
exactly one of the two certificates, each re-verified by substitution
before it is handed out.

Method: all LPs are solved in exact arithmetic over the affine-hull
frame of the vertex set (ambient dimensions up to several hundred drop
to the hull dimension).  The support-LP maximizes the gap eps subject
to a . v = b on S, a . v <= b - eps off S, with the L1 normalization
sum |a_i| <= 1 and the cap eps <= 1; it is solved by outer row
generation (violated off-S rows are added until the relaxed optimum is
feasible for the full system, which makes it the full optimum).  A zero
optimum triggers the witness-LP, which must then be feasible; if the
two ever disagree the run aborts rather than guess.

Subsets whose points are affinely dependent need no special casing: the
support-LP still has optimum zero exactly when S is not the vertex set
of a face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactmath import AffineHullFrame, affine_hull_frame, vec_dot
from .families import VertexSet
from .simplex import Constraint, LinearProgram, lp_solve

Q = Fraction


class InternalInconsistencyError(RuntimeError):
    """The support-LP and witness-LP disagreed; certificates cannot be trusted."""


def q_str(x) -> str:
    return str(Q(x))


def q_parse(s) -> Fraction:
    return Q(s)


@dataclass(frozen=True)
class FaceCertificate:
    """Supporting hyperplane in ambient coordinates.

    a . v = b for every v in the subset, a . v <= b - epsilon for every
    vertex outside it, epsilon > 0.
    """

    normal: tuple
    offset: Fraction
    epsilon: Fraction

    def to_json(self, subset) -> dict:
        return {
            "kind": "face",
            "subset": list(subset),
            "frame": "ambient",
            "a": [q_str(x) for x in self.normal],
            "b": q_str(self.offset),
            "epsilon": q_str(self.epsilon),
        }


@dataclass(frozen=True)
class NonFaceWitness:
    """Point in aff(S) and conv(V minus S) simultaneously.

    alpha are affine coefficients over S (summing to one, signs free),
    mu are convex coefficients over the complement of S in vertex-index
    order, and point is the common point.
    """

    alpha: tuple
    mu: tuple
    point: tuple

    def to_json(self, subset) -> dict:
        return {
            "kind": "nonface",
            "subset": list(subset),
            "alpha": [q_str(x) for x in self.alpha],
            "mu": [q_str(x) for x in self.mu],
            "point": [q_str(x) for x in self.point],
        }


def certificate_from_json(data: dict):
    if data["kind"] == "face":
        cert = FaceCertificate(
            normal=tuple(q_parse(x) for x in data["a"]),
            offset=q_parse(data["b"]),
            epsilon=q_parse(data["epsilon"]),
        )
    elif data["kind"] == "nonface":
        cert = NonFaceWitness(
            alpha=tuple(q_parse(x) for x in data["alpha"]),
            mu=tuple(q_parse(x) for x in data["mu"]),
            point=tuple(q_parse(x) for x in data["point"]),
        )
    else:
        raise ValueError(f"unknown certificate kind {data['kind']!r}")
    return tuple(data["subset"]), cert


def _sparse_dot(normal, onepositions) -> Fraction:
    return sum((normal[off] for off in onepositions), Q(0))


def verify_face_certificate(vs: VertexSet, subset: Sequence[int], cert: FaceCertificate) -> bool:
    """Substitution check of the supporting-hyperplane invariants."""
    try:
        sset = set(subset)
        if not sset or len(sset) != len(subset) or not sset < set(range(len(vs))):
            return False
        if len(cert.normal) != vs.scheme.ambient_dim or cert.epsilon <= 0:
            return False
        for i in range(len(vs)):
            val = _sparse_dot(cert.normal, vs.vertices[i])
            if i in sset:
                if val != cert.offset:
                    return False
            elif not val <= cert.offset - cert.epsilon:
                return False
        return True
    except (TypeError, IndexError):
        return False


def verify_nonface_witness(vs: VertexSet, subset: Sequence[int], wit: NonFaceWitness) -> bool:
    """Substitution check: alpha-combination of S = mu-combination of the rest = point."""
    try:
        sset = set(subset)
        if not sset or len(sset) != len(subset) or not sset < set(range(len(vs))):
            return False
        others = [i for i in range(len(vs)) if i not in sset]
        if len(wit.alpha) != len(subset) or len(wit.mu) != len(others):
            return False
        if sum(wit.alpha) != 1 or sum(wit.mu) != 1 or any(m < 0 for m in wit.mu):
            return False
        dim = vs.scheme.ambient_dim
        if len(wit.point) != dim:
            return False
        p1 = [Q(0)] * dim
        for coef, idx in zip(wit.alpha, subset):
            if coef != 0:
                for off in vs.vertices[idx]:
                    p1[off] += coef
        p2 = [Q(0)] * dim
        for coef, idx in zip(wit.mu, others):
            if coef != 0:
                for off in vs.vertices[idx]:
                    p2[off] += coef
        return tuple(p1) == tuple(wit.point) and tuple(p2) == tuple(wit.point)
    except (TypeError, IndexError):
        return False


class FaceContext:
    """Per-vertex-set precomputation shared across face tests.

    Holds the affine-hull frame, every vertex's frame coordinates, and
    the reusable off-subset LP rows.
    """

    def __init__(self, vs: VertexSet):
        self.vs = vs
        dense = vs.dense_all()
        self.frame: AffineHullFrame = affine_hull_frame(dense)
        self.coords = [self.frame.coords_of(p, check=False) for p in dense]
        m = self.frame.dim
        self.num_vars = 2 * m + 3  # a+ | a- | b+ | b- | eps
        ones = (Q(1),) * (2 * m)
        self.norm_row = Constraint(ones + (Q(0), Q(0), Q(0)), "<=", Q(1))
        self._outside_rows: dict[int, Constraint] = {}

    def outside_row(self, t: int) -> Constraint:
        row = self._outside_rows.get(t)
        if row is None:
            w = self.coords[t]
            coeffs = tuple(w) + tuple(-x for x in w) + (Q(-1), Q(1), Q(1))
            row = Constraint(coeffs, "<=", Q(0))
            self._outside_rows[t] = row
        return row

    def member_row(self, s: int) -> Constraint:
        w = self.coords[s]
        coeffs = tuple(w) + tuple(-x for x in w) + (Q(-1), Q(1), Q(0))
        return Constraint(coeffs, "=", Q(0))


def _support_lp_optimum(ctx: FaceContext, subset, others, batch=None):
    """Exact optimum of the support-LP via outer row generation.

    Returns (epsilon, a_frame, b_frame).  The returned solution
    satisfies every off-subset row of the full LP, so its objective
    equals the full optimum.  batch limits how many violated rows join
    per round (default: all of them, measured fastest at desk scale).
    """
    m = ctx.frame.dim
    nv = ctx.num_vars
    objective = (Q(0),) * (nv - 1) + (Q(1),)
    lower = (Q(0),) * nv
    upper = (None,) * (nv - 1) + (Q(1),)
    base = [ctx.member_row(s) for s in subset] + [ctx.norm_row]
    active: list[int] = []
    active_set: set[int] = set()
    while True:
        lp = LinearProgram(
            nv, objective, tuple(base + [ctx.outside_row(t) for t in active]), lower, upper
        )
        res = lp_solve(lp)
        if res.status != "optimal":
            raise InternalInconsistencyError(f"support-LP returned {res.status}")
        x = res.primal
        a_frame = tuple(x[i] - x[m + i] for i in range(m))
        b_frame = x[2 * m] - x[2 * m + 1]
        eps = res.objective_value
        if eps == 0:
            return Q(0), a_frame, b_frame
        violated = []
        for t in others:
            if t in active_set:
                continue
            gap = b_frame - vec_dot(a_frame, ctx.coords[t])
            if gap < eps:
                violated.append((gap, t))
        if not violated:
            return eps, a_frame, b_frame
        violated.sort()
        if batch is not None:
            violated = violated[:batch]
        for _, t in violated:
            active.append(t)
            active_set.add(t)


def _witness_lp(ctx: FaceContext, subset, others):
    """Feasibility LP for a common point of aff(S) and conv(rest)."""
    ns, no = len(subset), len(others)
    nv = ns + no
    m = ctx.frame.dim
    cons = []
    cons.append(Constraint((Q(1),) * ns + (Q(0),) * no, "=", Q(1)))
    cons.append(Constraint((Q(0),) * ns + (Q(1),) * no, "=", Q(1)))
    for i in range(m):
        coeffs = tuple(ctx.coords[s][i] for s in subset) + tuple(-ctx.coords[t][i] for t in others)
        cons.append(Constraint(coeffs, "=", Q(0)))
    lower = (None,) * ns + (Q(0),) * no
    lp = LinearProgram(nv, (Q(0),) * nv, tuple(cons), lower, (None,) * nv)
    return lp_solve(lp)


def _check_subset(vs: VertexSet, subset) -> tuple[int, ...]:
    idx = tuple(subset)
    if len(idx) == 0:
        raise ValueError("subset is empty")
    if len(set(idx)) != len(idx):
        raise ValueError("subset has repeated indices")
    if any(not 0 <= i < len(vs) for i in idx):
        raise ValueError("subset index out of range")
    if len(idx) == len(vs):
        raise ValueError("subset equals the whole vertex set")
    return idx


def is_face(vs: VertexSet, subset: Sequence[int], ctx: FaceContext | None = None):
    """Decide face status of a vertex subset; returns a verified certificate.

    FaceCertificate when S is the vertex set of a face, NonFaceWitness
    otherwise.
    """
    idx = _check_subset(vs, subset)
    if ctx is None:
        ctx = FaceContext(vs)
    others = [t for t in range(len(vs)) if t not in set(idx)]
    eps, a_frame, b_frame = _support_lp_optimum(ctx, idx, others)
    if eps > 0:
        a, b = ctx.frame.ambient_functional(a_frame, b_frame)
        cert = FaceCertificate(normal=a, offset=b, epsilon=eps)
        if not verify_face_certificate(vs, idx, cert):
            raise InternalInconsistencyError("support-LP certificate failed substitution")
        return cert
    res = _witness_lp(ctx, idx, others)
    if res.status != "optimal":
        raise InternalInconsistencyError(
            "support-LP gave zero gap but the witness-LP is infeasible"
        )
    x = res.primal
    alpha = tuple(x[: len(idx)])
    mu = tuple(x[len(idx) :])
    point = [Q(0)] * vs.scheme.ambient_dim
    for coef, i in zip(alpha, idx):
        if coef != 0:
            for off in vs.vertices[i]:
                point[off] += coef
    wit = NonFaceWitness(alpha=alpha, mu=mu, point=tuple(point))
    if not verify_nonface_witness(vs, idx, wit):
        raise InternalInconsistencyError("witness-LP certificate failed substitution")
    return wit


def witness_oracle_is_face(vs: VertexSet, subset: Sequence[int], ctx: FaceContext | None = None) -> bool:
    """Face test by the witness formulation alone (brute-force oracle).

    True iff aff(S) and conv(V minus S) are disjoint, i.e. the witness-LP
    is infeasible.
    """
    idx = _check_subset(vs, subset)
    if ctx is None:
        ctx = FaceContext(vs)
    others = [t for t in range(len(vs)) if t not in set(idx)]
    res = _witness_lp(ctx, idx, others)
    return res.status == "infeasible"


@dataclass(frozen=True)
class EquationReport:
    coordinate: int
    value: int
    valid_inequality: bool  # 0 <= coordinate (value 0) or coordinate <= 1 (value 1) on all vertices
    attained: bool  # some vertex meets the equation


@dataclass(frozen=True)
class FaceByEquations:
    subset: tuple[int, ...]
    equations: tuple[EquationReport, ...]
    certificate: FaceCertificate | None  # None when the subset is empty or everything


def face_by_equations(vs: VertexSet, equations: Sequence[tuple[int, int]]) -> FaceByEquations:
    """Vertices satisfying coordinate fixings, with supporting-validity checks.

    Each equation (offset, value) with value in {0, 1} is checked to be a
    valid inequality over all vertices, so the equation set defines a face
    and the returned subset is exactly its vertex set.  An empty subset is
    reported, not raised.
    """
    dim = vs.scheme.ambient_dim
    eqs = []
    for off, val in equations:
        if not 0 <= off < dim:
            raise ValueError(f"coordinate {off} out of range")
        if val not in (0, 1):
            raise ValueError(f"value must be 0 or 1, got {val}")
        eqs.append((off, val))
    reports = []
    for off, val in eqs:
        column = [1 if off in set(v) else 0 for v in vs.vertices]
        # 0/1 vertices make the one-sided inequality automatic; assert anyway
        valid = all(0 <= c <= 1 for c in column)
        attained = any(c == val for c in column)
        reports.append(EquationReport(off, val, valid, attained))
    subset = []
    for i, v in enumerate(vs.vertices):
        ones = set(v)
        if all((off in ones) == bool(val) for off, val in eqs):
            subset.append(i)
    cert = None
    if 0 < len(subset) < len(vs):
        a = [Q(0)] * dim
        b = Q(0)
        for off, val in eqs:
            if val == 1:
                a[off] += 1
                b += 1
            else:
                a[off] -= 1
        cert = FaceCertificate(normal=tuple(a), offset=b, epsilon=Q(1))
        if not verify_face_certificate(vs, subset, cert):
            raise InternalInconsistencyError("coordinate-fixing certificate failed substitution")
    return FaceByEquations(tuple(subset), tuple(reports), cert)


def compose_with_face(
    vs: VertexSet,
    face_subset: Sequence[int],
    face_equations: Sequence[tuple[int, int]],
    inner_subset: Sequence[int],
    inner_cert: FaceCertificate,
) -> FaceCertificate:
    """Lift a certificate for a subset of a coordinate-fixed face to the whole set.

    If T is a face of the face F (cut out by the given equations) then T
    is a face of the whole polytope; the supporting functional is the
    inner one plus a large multiple of the equation functional, which
    gains at least 1 on every vertex outside F.
    """
    dim = vs.scheme.ambient_dim
    a_f = [Q(0)] * dim
    b_f = Q(0)
    for off, val in face_equations:
        if val == 1:
            a_f[off] += 1
            b_f += 1
        else:
            a_f[off] -= 1
    upper = sum(x for x in inner_cert.normal if x > 0)  # max of inner normal on 0/1 points
    lam = upper - inner_cert.offset + inner_cert.epsilon
    if lam < 0:
        lam = Q(0)
    a = tuple(x + lam * y for x, y in zip(inner_cert.normal, a_f))
    b = inner_cert.offset + lam * b_f
    cert = FaceCertificate(normal=a, offset=b, epsilon=inner_cert.epsilon)
    global_subset = [face_subset[i] for i in inner_subset]
    if not verify_face_certificate(vs, global_subset, cert):
        raise InternalInconsistencyError("composed face certificate failed substitution")
    return cert


@dataclass(frozen=True)
class NeighborlinessReport:
    k: int
    total_subsets: int
    faces_certified: int
    counterexample_subset: tuple[int, ...] | None
    counterexample_witness: NonFaceWitness | None
    symmetry_reduction: str
    stopped_early: bool

    @property
    def is_k_neighborly(self) -> bool:
        return self.counterexample_subset is None and not self.stopped_early

    def to_json(self) -> dict:
        data = {
            "k": self.k,
            "total_subsets": self.total_subsets,
            "faces_certified": self.faces_certified,
            "symmetry_reduction": self.symmetry_reduction,
            "stopped_early": self.stopped_early,
            "counterexample": None,
        }
        if self.counterexample_subset is not None:
            data["counterexample"] = self.counterexample_witness.to_json(self.counterexample_subset)
        return data


def _scan_subsets(n_vertices: int, k: int, fix_first: bool):
    if fix_first:
        for rest in combinations(range(1, n_vertices), k - 1):
            yield (0,) + rest
    else:
        yield from combinations(range(n_vertices), k)


_WORKER_STATE: dict = {}


def _scan_worker_init(vs_json):
    _WORKER_STATE["vs"] = VertexSet.from_json(vs_json)
    _WORKER_STATE["ctx"] = FaceContext(_WORKER_STATE["vs"])


def _scan_worker(subset):
    result = is_face(_WORKER_STATE["vs"], subset, _WORKER_STATE["ctx"])
    if isinstance(result, FaceCertificate):
        return subset, None
    return subset, result


def k_neighborly_scan(
    vs: VertexSet,
    k: int,
    *,
    fix_first: bool = False,
    stop_at_first: bool = False,
    jobs: int = 1,
    ctx: FaceContext | None = None,
) -> NeighborlinessReport:
    """Certify every k-subset (or one per translation orbit) as a face.

    With fix_first, only subsets containing vertex 0 (the identity
    generator) are scanned; valid for the vertex-transitive families qap
    and phi, where composing with the inverse of any subset member maps
    the subset to one through the identity.  Subsets are scanned in
    lexicographic order, so reports are deterministic regardless of jobs.
    """
    n = len(vs)
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < {n}, got {k}")
    symmetry = "none (exhaustive scan)"
    if fix_first:
        if vs.scheme.family not in ("qap", "phi"):
            raise ValueError("fix-first reduction requires a vertex-transitive family (qap or phi)")
        ident = "".join(str(i) for i in range(1, vs.scheme.n + 1))
        if vs.labels[0] != ident:
            raise ValueError("fix-first reduction requires vertex 0 to be the identity generator")
        symmetry = (
            "translation orbits: every k-subset maps to one containing the identity vertex "
            "by composing all generators with the inverse of one member"
        )
    subsets = _scan_subsets(n, k, fix_first)
    total = faces = 0
    first_bad = None
    first_wit = None
    stopped = False
    if jobs > 1:
        import multiprocessing as mp

        with mp.Pool(jobs, initializer=_scan_worker_init, initargs=(vs.to_json(),)) as pool:
            for subset, wit in pool.imap(_scan_worker, subsets, chunksize=16):
                total += 1
                if wit is None:
                    faces += 1
                elif first_bad is None:
                    first_bad, first_wit = subset, wit
                    if stop_at_first:
                        stopped = True
                        pool.terminate()
                        break
    else:
        if ctx is None:
            ctx = FaceContext(vs)
        for subset in subsets:
            total += 1
            result = is_face(vs, subset, ctx)
            if isinstance(result, FaceCertificate):
                faces += 1
            elif first_bad is None:
                first_bad, first_wit = subset, result
                if stop_at_first:
                    stopped = True
                    break
    return NeighborlinessReport(
        k=k,
        total_subsets=total,
        faces_certified=faces,
        counterexample_subset=first_bad,
        counterexample_witness=first_wit,
        symmetry_reduction=symmetry,
        stopped_early=stopped,
    )
