from itertools import permutations
from math import comb, factorial

import pytest

from polyface.families import (
    Permutation,
    VertexSet,
    bqp_vertices,
    edge_index,
    edge_list,
    generate,
    phi_scheme,
    phi_vertex,
    phi_vertices,
    qap_scheme,
    qap_vertex,
    qap_vertices,
)

# The six 3x3 edge matrices of K_3 in display order: identity, the two
# 3-cycles, then the transpositions (13), (12), (23).
PHI3_MATRICES = [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
    ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
]


def as_matrix(dense, nrows):
    return tuple(tuple(dense[r * nrows + c] for c in range(nrows)) for r in range(nrows))


def test_edge_index_examples():
    assert edge_index(1, 2, 4) == 0
    assert edge_index(3, 4, 4) == 5
    # lexicographic edge list of K_5: (1,2),(1,3),(1,4),(1,5),(2,3),(2,4),...
    assert edge_list(5).index((2, 4)) == 5
    assert edge_index(2, 4, 5) == 5


def test_edge_index_rejects_bad_input():
    with pytest.raises(ValueError):
        edge_index(2, 2, 4)
    with pytest.raises(ValueError):
        edge_index(3, 1, 4)
    with pytest.raises(ValueError):
        edge_index(1, 5, 4)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_edge_index_matches_edge_list(n):
    for k, (i, j) in enumerate(edge_list(n)):
        assert edge_index(i, j, n) == k


def test_schemes_encode_decode_round_trip():
    s = qap_scheme(3)
    for off in range(s.ambient_dim):
        assert s.encode(*s.decode(off)) == off
    p = phi_scheme(4)
    for off in range(p.ambient_dim):
        e, f = p.decode(off)
        assert p.encode(e, f) == off
    from polyface.families import bqp_scheme

    b = bqp_scheme(3)
    for off in range(b.ambient_dim):
        assert b.encode(*b.decode(off)) == off


def test_phi_display_order_only_for_n3():
    with pytest.raises(ValueError):
        phi_vertices(4, order="display")


def test_bqp_counts_and_guard():
    assert len(bqp_vertices(2)) == 4
    assert len(bqp_vertices(3)) == 8
    with pytest.raises(ValueError):
        bqp_vertices(1)


def test_bqp_zero_generator_is_zero_vector():
    vs = bqp_vertices(2)
    assert vs.labels[0] == "00"
    assert vs.vertices[0] == ()
    assert vs.dense(0) == (0, 0, 0, 0)


def test_bqp_vertices_satisfy_product_identity():
    for m in (2, 3):
        vs = bqp_vertices(m)
        for idx in range(len(vs)):
            x = vs.dense(idx)
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    xij = x[(i - 1) * m + (j - 1)]
                    assert xij == x[(i - 1) * m + (i - 1)] * x[(j - 1) * m + (j - 1)]


def test_qap_identity_n2_ones():
    v = qap_vertex(Permutation.identity(2))
    s = qap_scheme(2)
    expected = sorted(s.encode(*t) for t in [(1, 1, 1, 1), (1, 1, 2, 2), (2, 2, 1, 1), (2, 2, 2, 2)])
    assert list(v) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_qap_vertex_tensor_square_identity_and_sums(n):
    s = qap_scheme(n)
    for images in permutations(range(1, n + 1)):
        y = [0] * s.ambient_dim
        for off in qap_vertex(Permutation(images)):
            y[off] = 1
        diag = lambda i, j: y[s.encode(i, j, i, j)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    for l in range(1, n + 1):
                        assert y[s.encode(i, j, k, l)] == diag(i, j) * diag(k, l)
        for i in range(1, n + 1):
            assert sum(diag(i, j) for j in range(1, n + 1)) == 1
        for j in range(1, n + 1):
            assert sum(diag(i, j) for i in range(1, n + 1)) == 1


def test_qap_counts_distinct_and_ones():
    for n in (2, 3, 4):
        vs = qap_vertices(n)
        assert len(vs) == factorial(n)
        assert len(set(vs.vertices)) == len(vs)
        for v in vs.vertices:
            assert len(v) == n * n


def test_phi3_display_order_matches_golden_matrices():
    vs = phi_vertices(3)
    assert vs.labels == ("123", "231", "312", "321", "213", "132")
    for idx, want in enumerate(PHI3_MATRICES):
        assert as_matrix(vs.dense(idx), 3) == want


def test_phi3_lex_order_is_sorted_labels():
    vs = phi_vertices(3, order="lex")
    assert vs.labels == tuple(sorted(vs.labels))


def test_phi_vertex_row_and_column_sums():
    for n in (3, 4, 5):
        ne = comb(n, 2)
        for images in permutations(range(1, n + 1)):
            dense = [0] * (ne * ne)
            for off in phi_vertex(Permutation(images)):
                dense[off] = 1
            m = as_matrix(tuple(dense), ne)
            assert all(sum(row) == 1 for row in m)
            assert all(sum(col) == 1 for col in zip(*m))


def test_phi_counts_and_ones():
    assert len(phi_vertices(4)) == 24
    assert phi_scheme(4).ambient_dim == 36
    vs5 = phi_vertices(5)
    assert len(vs5) == 120
    assert all(len(v) == 10 for v in vs5.vertices)


def test_phi_vertex_injective_and_homomorphism():
    n = 4
    ne = comb(n, 2)
    seen = set()
    perms = [Permutation(im) for im in permutations(range(1, n + 1))]
    for p in perms:
        seen.add(phi_vertex(p))
    assert len(seen) == factorial(n)
    # representation property: matrix of (p then q) = matrix(p) * matrix(q)
    for p in perms[:8]:
        for q in perms[:8]:
            mp = as_matrix_dense(phi_vertex(p), ne)
            mq = as_matrix_dense(phi_vertex(q), ne)
            mpq = as_matrix_dense(phi_vertex(p.then(q)), ne)
            prod = tuple(
                tuple(sum(mp[r][k] * mq[k][c] for k in range(ne)) for c in range(ne)) for r in range(ne)
            )
            assert prod == mpq


def as_matrix_dense(offsets, ne):
    dense = [0] * (ne * ne)
    for off in offsets:
        dense[off] = 1
    return as_matrix(tuple(dense), ne)


def test_permutation_basics():
    p = Permutation((2, 3, 1))
    assert p(1) == 2 and p(3) == 1
    assert p.inverse().images == (3, 1, 2)
    assert p.then(p.inverse()).images == (1, 2, 3)
    assert p.edge_image((1, 3)) == (1, 2)
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


def test_vertex_set_json_round_trip(tmp_path):
    vs = phi_vertices(3)
    path = tmp_path / "phi3.json"
    vs.save(path)
    back = VertexSet.load(path)
    assert back.labels == vs.labels
    assert back.vertices == vs.vertices
    assert back.scheme == vs.scheme
    # bit-exact: the file holds only integers and strings
    text = path.read_text()
    assert "." not in text.replace('".json"', "")


def test_generate_dispatch():
    assert len(generate("bqp", 4)) == 16
    assert len(generate("qap", 2)) == 2
    with pytest.raises(ValueError):
        generate("tsp", 4)
