import random
from fractions import Fraction

import pytest

from ksmooth.errors import DimensionMismatchError, FieldMismatchError
from ksmooth.linalg import (
    Matrix,
    Vector,
    greedy_independent_subset,
    kron_coeff_vector,
    nullspace,
    outer_flatten,
    rank,
    rank_of_vectors,
    solve,
)
from ksmooth.scalars import FieldTag, INV_SQRT2, QuadScalar, SQRT2

Q = FieldTag.RATIONAL
K = FieldTag.QUAD_SQRT2


def qv(*entries):
    return Vector(entries, Q)


def test_rank_identity():
    assert rank(Matrix.identity(3, Q)) == 3


def test_rank_dependent_rows():
    assert rank(Matrix([[1, 0, 0], [0, 1, 0], [1, 1, 0]], Q)) == 2


def test_rank_quadratic_field():
    m = Matrix([[QuadScalar(1), QuadScalar(1), QuadScalar(0)],
                [QuadScalar(1), QuadScalar(-1), QuadScalar(0)],
                [QuadScalar(0), QuadScalar(0), SQRT2]], K)
    assert rank(m) == 3  # determinant -2*sqrt2 is nonzero


def test_rank_transpose_invariant_random():
    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = Matrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                     for _ in range(cols)] for _ in range(rows)], Q)
        assert rank(m) == rank(m.transpose())


def test_rank_nullity_random():
    rng = random.Random(11)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(cols)]
                    for _ in range(rows)], Q)
        assert rank(m) + len(nullspace(m)) == cols
        for v in nullspace(m):
            assert m.matvec(v).is_zero()


def test_solve_in_span():
    a = Matrix.from_columns([Vector([1, 0, 0], K), Vector([0, 1, 0], K)])
    b = Vector([INV_SQRT2, INV_SQRT2, QuadScalar(0)], K)
    x = solve(a, b)
    assert x == Vector([INV_SQRT2, INV_SQRT2], K)


def test_solve_identity():
    b = qv(3, Fraction(-1, 2), 7)
    assert solve(Matrix.identity(3, Q), b) == b


def test_solve_no_solution():
    a = Matrix.from_columns([qv(1, 1)])
    assert solve(a, qv(1, 0)) is None


def test_solve_checks_residual():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        a = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(m)]
                    for _ in range(n)], Q)
        b = Vector([Fraction(rng.randint(-3, 3)) for _ in range(n)], Q)
        x = solve(a, b)
        if x is not None:
            assert a.matvec(x) == b


def test_greedy_subset_basic():
    vs = [qv(1, 0, 0), qv(0, 1, 0), qv(1, 1, 0), qv(0, 0, 1)]
    assert greedy_independent_subset(vs) == [0, 1, 3]


def test_greedy_subset_zero_vector():
    assert greedy_independent_subset([qv(0, 0)]) == []


def test_greedy_subset_quadratic():
    vs = [Vector([QuadScalar(1), QuadScalar(0), QuadScalar(0)], K),
          Vector([QuadScalar(0), QuadScalar(1), QuadScalar(0)], K),
          Vector([INV_SQRT2, INV_SQRT2, QuadScalar(0)], K),
          Vector([QuadScalar(0), QuadScalar(0), QuadScalar(1)], K)]
    assert greedy_independent_subset(vs) == [0, 1, 3]


def test_greedy_subset_spans_input():
    rng = random.Random(3)
    for _ in range(30):
        vs = [Vector([Fraction(rng.randint(-2, 2)) for _ in range(3)], Q)
              for _ in range(rng.randint(1, 6))]
        picked = [vs[i] for i in greedy_independent_subset(vs)]
        assert rank_of_vectors(picked) == rank_of_vectors(vs)
        assert rank_of_vectors(picked) == len(picked)


def test_kron_layout():
    assert kron_coeff_vector(qv(1, 0), qv(0, 1)).entries == \
        (Fraction(0), Fraction(1), Fraction(0), Fraction(0))


def test_kron_zero():
    alpha = qv(0, 0)
    assert kron_coeff_vector(alpha, qv(1, 2)).is_zero()


def test_kron_matches_example_vertex():
    alpha = Vector([INV_SQRT2, INV_SQRT2, QuadScalar(0)], K)
    beta = Vector([QuadScalar(1), QuadScalar(0), QuadScalar(0)], K)
    got = kron_coeff_vector(alpha, beta)
    # 1/sqrt2 in slots 11 and 21 of the i-major layout
    expected = [QuadScalar(0)] * 9
    expected[0] = INV_SQRT2
    expected[3] = INV_SQRT2
    assert got == Vector(expected, K)


def test_outer_flatten_examples():
    assert outer_flatten(qv(1, 0), qv(1, 0)).entries[0] == 1
    assert outer_flatten(qv(1, 1), qv(1, 0)).entries == \
        (Fraction(1), Fraction(0), Fraction(1), Fraction(0))


def test_outer_flatten_independence():
    # independent x's and f's give independent flattened outer products
    xs = [qv(1, 0), qv(1, 1)]
    fs = [qv(1, 0), qv(0, 1), qv(1, -1)][:2]
    products = [outer_flatten(x, f) for x in xs for f in fs]
    assert rank_of_vectors(products) == 4


def test_kron_equals_outer_under_matching_layout():
    rng = random.Random(5)
    for _ in range(25):
        a = Vector([Fraction(rng.randint(-3, 3)) for _ in range(3)], Q)
        b = Vector([Fraction(rng.randint(-3, 3)) for _ in range(2)], Q)
        assert kron_coeff_vector(a, b) == outer_flatten(a, b)


def test_vector_field_mismatch():
    with pytest.raises(FieldMismatchError):
        qv(1, 2).dot(Vector([QuadScalar(1), QuadScalar(2)], K))


def test_matrix_shape_checks():
    with pytest.raises(DimensionMismatchError):
        Matrix([[1, 2], [3]], Q)
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(2, Q).matvec(qv(1, 2, 3))
