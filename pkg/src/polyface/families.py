"""Vertex generators and index schemes for the three 0/1 families.

Three families share one storage format:

* ``bqp`` -- tensor squares u (x) u of all 0/1 vectors u of length m,
  living in dimension m^2.
* ``qap`` -- tensor squares of n x n permutation matrices, dimension n^4.
* ``phi`` -- permutation matrices induced on the edges of the complete
  graph K_n by vertex permutations, dimension C(n,2)^2.

Conventions (the single source of truth for index translation):

* semantic multi-indices are 1-based, flat offsets are 0-based;
* a permutation matrix has entry (i, j) = 1 iff sigma(i) = j;
* the edge matrix has rows indexed by the source edge and columns by its
  image: z[e, f] = 1 iff sigma maps edge e onto edge f elementwise.

Vertices are stored sparsely as sorted tuples of one-positions and
densified on demand (a qap(5) vertex has 25 ones out of 625 entries).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product
from math import comb
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1, ..., n} in one-line notation: images[i-1] = sigma(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other (row-vector convention)."""
        return Permutation(tuple(other(self(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def edge_image(self, e: tuple[int, int]) -> tuple[int, int]:
        a, b = self(e[0]), self(e[1])
        return (a, b) if a < b else (b, a)

    @property
    def label(self) -> str:
        return "".join(str(i) for i in self.images)


def edge_index(i: int, j: int, n: int) -> int:
    """0-based rank of edge {i,j} (i < j) in the lexicographic edge list of K_n."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got ({i},{j}) for n={n}")
    # edges (1,2),(1,3),...,(1,n),(2,3),...: rows before i contribute n-1, n-2, ...
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


def edge_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class IndexScheme:
    """Flat-offset layout of one family's ambient space."""

    family: str  # "bqp" | "qap" | "phi"
    n: int
    ambient_dim: int
    encode: Callable[..., int]
    decode: Callable[[int], tuple]

    def __eq__(self, other):
        return (
            isinstance(other, IndexScheme)
            and (self.family, self.n, self.ambient_dim) == (other.family, other.n, other.ambient_dim)
        )

    def __hash__(self):
        return hash((self.family, self.n, self.ambient_dim))


def bqp_scheme(m: int) -> IndexScheme:
    def encode(i: int, j: int) -> int:
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"bqp index out of range: ({i},{j})")
        return (i - 1) * m + (j - 1)

    def decode(off: int) -> tuple[int, int]:
        return off // m + 1, off % m + 1

    return IndexScheme("bqp", m, m * m, encode, decode)


def qap_scheme(n: int) -> IndexScheme:
    def encode(i: int, j: int, k: int, l: int) -> int:
        for x in (i, j, k, l):
            if not 1 <= x <= n:
                raise ValueError(f"qap index out of range: ({i},{j},{k},{l})")
        return ((i - 1) * n + (j - 1)) * n * n + (k - 1) * n + (l - 1)

    def decode(off: int) -> tuple[int, int, int, int]:
        kl, ij = off % (n * n), off // (n * n)
        return ij // n + 1, ij % n + 1, kl // n + 1, kl % n + 1

    return IndexScheme("qap", n, n ** 4, encode, decode)


def phi_scheme(n: int) -> IndexScheme:
    ne = comb(n, 2)
    edges = edge_list(n)

    def encode(e: tuple[int, int], f: tuple[int, int]) -> int:
        return edge_index(*e, n) * ne + edge_index(*f, n)

    def decode(off: int) -> tuple[tuple[int, int], tuple[int, int]]:
        return edges[off // ne], edges[off % ne]

    return IndexScheme("phi", n, ne * ne, encode, decode)


def scheme_for(family: str, n: int) -> IndexScheme:
    try:
        return {"bqp": bqp_scheme, "qap": qap_scheme, "phi": phi_scheme}[family](n)
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None


@dataclass(frozen=True)
class VertexSet:
    """Labeled 0/1 vertices of one family, stored as sorted one-position tuples."""

    scheme: IndexScheme
    labels: tuple[str, ...]
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.labels) != len(self.vertices):
            raise ValueError("labels and vertices must have equal length")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertices must be pairwise distinct")
        for v in self.vertices:
            if any(not 0 <= off < self.scheme.ambient_dim for off in v):
                raise ValueError("one-position offset out of range")
            if list(v) != sorted(set(v)):
                raise ValueError("one-positions must be sorted and distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def dense(self, idx: int) -> tuple[int, ...]:
        out = [0] * self.scheme.ambient_dim
        for off in self.vertices[idx]:
            out[off] = 1
        return tuple(out)

    def dense_all(self) -> list[tuple[int, ...]]:
        return [self.dense(i) for i in range(len(self))]

    def to_json(self) -> dict:
        return {
            "family": self.scheme.family,
            "n": self.scheme.n,
            "ambient_dim": self.scheme.ambient_dim,
            "labels": list(self.labels),
            "vertices": [list(v) for v in self.vertices],
        }

    @staticmethod
    def from_json(data: dict) -> "VertexSet":
        scheme = scheme_for(data["family"], data["n"])
        if scheme.ambient_dim != data["ambient_dim"]:
            raise ValueError(
                f"ambient_dim {data['ambient_dim']} does not match "
                f"{data['family']}({data['n']}) = {scheme.ambient_dim}"
            )
        return VertexSet(
            scheme=scheme,
            labels=tuple(data["labels"]),
            vertices=tuple(tuple(v) for v in data["vertices"]),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")

    @staticmethod
    def load(path) -> "VertexSet":
        with open(path) as fh:
            return VertexSet.from_json(json.load(fh))


def bqp_vertex_offsets(bits: Sequence[int], m: int) -> tuple[int, ...]:
    ones = [i for i, b in enumerate(bits, start=1) if b]
    return tuple((i - 1) * m + (j - 1) for i in ones for j in ones)


def bqp_vertices(m: int) -> VertexSet:
    """All 2^m tensor squares u (x) u, u in {0,1}^m, in lexicographic u order."""
    if m < 2:
        raise ValueError("bqp needs m >= 2")
    scheme = bqp_scheme(m)
    labels, verts = [], []
    for bits in product((0, 1), repeat=m):
        labels.append("".join(str(b) for b in bits))
        verts.append(tuple(sorted(bqp_vertex_offsets(bits, m))))
    return VertexSet(scheme, tuple(labels), tuple(verts))


def qap_vertex(p: Permutation) -> tuple[int, ...]:
    """One-positions of the tensor square of p's permutation matrix."""
    n = p.n
    cells = [(i, p(i)) for i in range(1, n + 1)]
    offs = [((i - 1) * n + (j - 1)) * n * n + (k - 1) * n + (l - 1) for (i, j) in cells for (k, l) in cells]
    return tuple(sorted(offs))


def qap_vertices(n: int) -> VertexSet:
    if n < 2:
        raise ValueError("qap needs n >= 2")
    scheme = qap_scheme(n)
    labels, verts = [], []
    for images in permutations(range(1, n + 1)):
        p = Permutation(images)
        labels.append(p.label)
        verts.append(qap_vertex(p))
    return VertexSet(scheme, tuple(labels), tuple(verts))


def phi_vertex(p: Permutation) -> tuple[int, ...]:
    """One-positions of the edge-permutation matrix of p on K_n."""
    n = p.n
    if n < 3:
        raise ValueError("phi needs n >= 3")
    ne = comb(n, 2)
    offs = [edge_index(*e, n) * ne + edge_index(*p.edge_image(e), n) for e in edge_list(n)]
    return tuple(sorted(offs))


# Display order for the six K_3 edge matrices: identity, the two
# 3-cycles, then the transpositions (13), (12), (23).
_PHI3_ORDER = ((1, 2, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1), (2, 1, 3), (1, 3, 2))


def phi_vertices(n: int, order: str = "default") -> VertexSet:
    """All n! edge-permutation matrices of K_n.

    order: "lex" for lexicographic one-line generator order, "display"
    for the classical six-matrix display order (n = 3 only).  The
    default is "display" for n = 3 and "lex" otherwise.
    """
    if n < 3:
        raise ValueError("phi needs n >= 3")
    if order == "default":
        order = "display" if n == 3 else "lex"
    if order == "display" and n != 3:
        raise ValueError("display order is only defined for n = 3")
    scheme = phi_scheme(n)
    gens: Iterable[tuple[int, ...]]
    if order == "display":
        gens = _PHI3_ORDER
    else:
        gens = permutations(range(1, n + 1))
    labels, verts = [], []
    for images in gens:
        p = Permutation(tuple(images))
        labels.append(p.label)
        verts.append(phi_vertex(p))
    return VertexSet(scheme, tuple(labels), tuple(verts))


def generate(family: str, n: int) -> VertexSet:
    if family == "bqp":
        return bqp_vertices(n)
    if family == "qap":
        return qap_vertices(n)
    if family == "phi":
        return phi_vertices(n)
    raise ValueError(f"unknown family {family!r}")
