import random
from fractions import Fraction as Q
from itertools import combinations

import pytest

from polyface.exactmath import (
    affine_dependencies,
    affine_hull_frame,
    matrix_rank,
    nullspace,
    solve_linear_system,
    vec_dot,
)
from polyface.families import bqp_vertices, phi_vertices, qap_vertices


def det(m):
    """Bareiss determinant, used as an independent oracle for rank."""
    n = len(m)
    a = [[Q(x) for x in row] for row in m]
    sign = 1
    prev = Q(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Q(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_by_minors(m):
    """Largest k with a nonsingular k x k submatrix (brute-force oracle)."""
    nr, nc = len(m), len(m[0])
    for k in range(min(nr, nc), 0, -1):
        for rows in combinations(range(nr), k):
            for cols in combinations(range(nc), k):
                if det([[m[r][c] for c in cols] for r in rows]) != 0:
                    return k
    return 0


def test_solve_scalar_division():
    res = solve_linear_system([[2]], [1])
    assert res.status == "unique"
    assert res.solution == (Q(1, 2),)


def test_solve_identity():
    res = solve_linear_system([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 0, 1])
    assert res.status == "unique"
    assert res.solution == (1, 0, 1)


def test_solve_inconsistent_duplicate_rows():
    res = solve_linear_system([[1, 1], [1, 1]], [1, 2])
    assert res.status == "inconsistent"
    y = res.witness
    # y combines the rows to 0 = nonzero
    assert all(vec_dot(y, col) == 0 for col in [(1, 1), (1, 1)])
    assert vec_dot(y, (1, 2)) != 0


def test_solve_underdetermined_substitutes_exactly():
    a = [[1, 2, 3], [2, 4, 7]]
    b = [5, 11]
    res = solve_linear_system(a, b)
    assert res.status == "underdetermined"
    x = res.solution
    assert [vec_dot(row, x) for row in a] == b


def test_rank_zero_and_identity():
    assert matrix_rank([[0, 0], [0, 0]]) == 0
    assert matrix_rank([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == 4


def test_rank_phi3_with_ones_column_is_5():
    vs = phi_vertices(3)
    rows = [list(vs.dense(i)) + [1] for i in range(6)]
    assert rank_by_minors(rows) == 5  # oracle
    assert matrix_rank(rows) == 5  # hence dim of the hull is 4


def test_rank_equals_transpose_rank_random():
    rng = random.Random(7)
    for _ in range(25):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = [[Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nc)] for _ in range(nr)]
        mt = [list(col) for col in zip(*m)]
        assert matrix_rank(m) == matrix_rank(mt)


def test_rank_matches_minor_oracle_random():
    rng = random.Random(11)
    for _ in range(15):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        assert matrix_rank(m) == rank_by_minors(m)


def test_nullspace_vectors_annihilate():
    m = [[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]]
    basis = nullspace(m)
    assert len(basis) == 4 - matrix_rank(m)
    for v in basis:
        assert all(vec_dot(row, v) == 0 for row in m)


def test_affine_dependencies_two_equal_points():
    assert affine_dependencies([(1, 2), (1, 2)]) == [(1, -1)]


def test_affine_dependencies_independent_triple():
    assert affine_dependencies([(0, 0), (1, 0), (0, 1)]) == []


def test_affine_dependencies_phi3_display_order():
    vs = phi_vertices(3)
    deps = affine_dependencies(vs.dense_all())
    assert deps == [(1, 1, 1, -1, -1, -1)]


def test_dependency_count_vs_hull_dimension():
    # |V| - 1 - (# independent affine dependencies) = dim aff(V)
    for vs in (phi_vertices(3), bqp_vertices(2), qap_vertices(3)):
        pts = vs.dense_all()
        deps = affine_dependencies(pts)
        frame = affine_hull_frame(pts)
        assert len(pts) - 1 - len(deps) == frame.dim


def test_frame_single_point():
    frame = affine_hull_frame([(1, 2, 3)])
    assert frame.dim == 0
    assert frame.coords_of((1, 2, 3)) == ()


def test_frame_phi3_dim_4_and_bqp2_dim_3():
    assert affine_hull_frame(phi_vertices(3).dense_all()).dim == 4
    assert affine_hull_frame(bqp_vertices(2).dense_all()).dim == 3


@pytest.mark.parametrize(
    "make",
    [
        lambda: bqp_vertices(2),
        lambda: bqp_vertices(3),
        lambda: bqp_vertices(5),
        lambda: phi_vertices(3),
        lambda: phi_vertices(4),
        lambda: phi_vertices(5),
        lambda: qap_vertices(3),
        lambda: qap_vertices(4),
        lambda: qap_vertices(5),
    ],
    ids=["bqp2", "bqp3", "bqp5", "phi3", "phi4", "phi5", "qap3", "qap4", "qap5"],
)
def test_frame_round_trip(make):
    pts = make().dense_all()
    frame = affine_hull_frame(pts)
    for p in pts:
        assert frame.reconstruct(frame.coords_of(p)) == p


def test_frame_rejects_point_off_hull():
    frame = affine_hull_frame([(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        frame.coords_of((0, 1))


def test_ambient_functional_agrees_on_hull():
    vs = phi_vertices(3)
    pts = vs.dense_all()
    frame = affine_hull_frame(pts)
    a_frame = tuple(Q(i + 1, 3) for i in range(frame.dim))
    b_frame = Q(5, 7)
    a, b = frame.ambient_functional(a_frame, b_frame)
    for p in pts:
        assert vec_dot(a, p) - b == vec_dot(a_frame, frame.coords_of(p)) - b_frame


def test_solved_system_substitutes_exactly_random():
    rng = random.Random(3)
    for _ in range(30):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        a = [[Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(nc)] for _ in range(nr)]
        b = [Q(rng.randint(-5, 5)) for _ in range(nr)]
        res = solve_linear_system(a, b)
        if res.status == "inconsistent":
            assert all(vec_dot(res.witness, col) == 0 for col in zip(*a))
            assert vec_dot(res.witness, b) != 0
        else:
            assert [vec_dot(row, res.solution) for row in a] == b
