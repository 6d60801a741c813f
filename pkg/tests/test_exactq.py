from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcdcycle import data
from vcdcycle import exactq as eq


def test_rank_examples():
    assert eq.rank([[1, 0], [0, 1]]) == 2
    assert eq.rank([[0] * 3] * 3) == 0
    cols = list(zip(*data.D4_VECTORS))
    assert eq.rank(cols) == 4  # 4 x 12 vertex matrix


def test_det_examples():
    assert eq.det([[1, 0], [0, 1]]) == 1
    assert eq.det([[0, 1], [1, 0]]) == -1
    assert eq.det([[2, 1], [1, 2]]) == 3
    with pytest.raises(ValueError):
        eq.det([[1, 2, 3]])


def test_solve_examples():
    assert eq.solve([[1, 0], [0, 1]], [1, 2]) == (1, 2)
    assert eq.solve([[0]], [1]) is None
    assert eq.solve([[1, 1], [1, -1]], [2, 0]) == (1, 1)


def test_solve_postcondition():
    m = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    rhs = [6, 12, 2]
    x = eq.solve(m, rhs)
    assert x is not None
    for row, b in zip(m, rhs):
        assert sum(F(a) * v for a, v in zip(row, x)) == b


def test_affine_dim_examples():
    assert eq.affine_dim([(5, 7)]) == 0
    assert eq.affine_dim([(0,), (1,), (2,)]) == 1
    assert eq.affine_dim([(0, 0), (1, 0), (1, 1), (0, 1)]) == 2
    with pytest.raises(ValueError):
        eq.affine_dim([])


def test_nullspace_examples():
    assert eq.nullspace([[1, 0], [0, 1]]) == []
    (k,) = eq.nullspace([[1, 1]])
    assert k[0] == -k[1] != 0
    # homogenized square corners, as columns
    pts = [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)]
    mat = list(zip(*pts))
    (k,) = eq.nullspace(mat)
    scaled = eq.primitive_normalize(k)
    assert scaled in ((1, -1, 1, -1), (-1, 1, -1, 1))


def test_primitive_normalize_examples():
    assert eq.primitive_normalize((2, 4)) == (1, 2)
    assert eq.primitive_normalize((-1, 0, 3)) == (1, 0, -3)
    assert eq.primitive_normalize((F(2, 3), F(-4, 3))) == (1, -2)
    with pytest.raises(ValueError):
        eq.primitive_normalize((0, 0))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6).filter(lambda v: any(v)))
def test_primitive_normalize_idempotent(v):
    p = eq.primitive_normalize(v)
    assert eq.primitive_normalize(p) == p


@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=5).filter(lambda v: any(v)),
    st.fractions(min_value=F(-8), max_value=F(8)).filter(lambda a: a != 0),
)
def test_primitive_normalize_scale_invariant(v, a):
    assert eq.primitive_normalize([a * x for x in v]) == eq.primitive_normalize(v)


@settings(max_examples=40)
@given(st.integers(2, 5), st.randoms(use_true_random=False))
def test_det_rank_relation(n, rng):
    m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
    assert (eq.det(m) != 0) == (eq.rank(m) == n)


def test_affine_dim_of_independent_points():
    import random

    rng = random.Random(7)
    for _ in range(20):
        k = rng.randint(1, 4)
        while True:
            pts = [tuple(rng.randint(-5, 5) for _ in range(4)) for _ in range(k + 1)]
            if eq.affine_dim(pts) == k:
                break
        assert eq.affine_dim(pts) == k


def test_symmetric_vectorization():
    v = (1, -1)
    assert eq.rank1_vec(v) == (1, -1, 1)
    assert eq.vec_trace((1, -1, 1), 2) == 2
    m = eq.vec_sym((1, -1, 1), 2)
    assert m == [[1, -1], [-1, 1]]
    assert eq.sym_vec(m) == (1, -1, 1)
    # pairing row computes v^t Y v
    y = (F(2), F(1), F(2))  # [[2,1],[1,2]]
    assert eq.quad_value(y, (1, -1), 2) == 2
    assert eq.dot(eq.pairing_row((1, -1)), y) == 2


def test_rank1_output_rank():
    import random

    rng = random.Random(3)
    for _ in range(10):
        v = tuple(rng.randint(-3, 3) for _ in range(4))
        if not any(v):
            continue
        assert eq.rank(eq.vec_sym(eq.rank1_vec(v), 4)) == 1


def test_int_matrix_inverse():
    g = ((0, 1), (-1, -1))
    gi = eq.int_matrix_inverse(g)
    assert eq.mat_mul_int(g, gi) == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        eq.int_matrix_inverse(((2, 0), (0, 1)))


def test_q_str_roundtrip():
    for x in (F(3), F(-5, 7), F(0), F(22, 11)):
        assert eq.q_parse(eq.q_str(x)) == x
