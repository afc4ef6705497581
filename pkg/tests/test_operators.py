import random
from fractions import Fraction

import pytest

from ksmooth.errors import (
    EmptyExtremeIntersectionError,
    NotUnitNormError,
    ZeroOperatorError,
)
from ksmooth.linalg import Matrix, Vector
from ksmooth.operators import (
    LinearOperator,
    _index_computation,
    construct_face_operator,
    index_of_smoothness,
    operator_norm_and_attainment,
    oracle_order_of_smoothness,
    order_of_smoothness,
    paper_example_operator,
    rank1_admissible_orders,
    rank1_forbidden_primes,
    sign_canonical,
)
from ksmooth.polytope import enumerate_faces, minimal_face
from ksmooth.scalars import FieldTag, INV_SQRT2, QuadScalar
from ksmooth.selftest import _random_rank1_operator, _random_unit_operator
from ksmooth.spaces import (
    ell1,
    ellinf,
    paper_example_space,
    point_smoothness,
    product_space,
    random_space,
)

Q = FieldTag.RATIONAL
K = FieldTag.QUAD_SQRT2


def qv(*entries):
    return Vector(entries, Q)


def kv(*entries):
    return Vector([QuadScalar(e) if isinstance(e, int) else e for e in entries], K)


@pytest.fixture(scope="module")
def bundled():
    return paper_example_operator()


def test_bundled_norm_and_attainment(bundled):
    att = operator_norm_and_attainment(bundled)
    assert att.operator_norm == K.one
    expected = {
        kv(1, 0, 0).entries,
        kv(0, 1, 0).entries,
        Vector([INV_SQRT2, INV_SQRT2, QuadScalar(0)], K).entries,
        kv(0, 0, 1).entries,
    }
    assert {v.entries for v in att.attaining_vertices} == expected


def test_bundled_order_is_two_way_consistent(bundled):
    report = order_of_smoothness(bundled)
    assert report.index == report.oracle_order
    assert report.index == 8
    assert report.min_bound <= report.index


def test_bundled_z_generators_with_printed_bases(bundled):
    # reproduce the listed coefficient tuples entry by entry, using the
    # printed basis order; seven of the eight generators match the listing
    # and the eighth comes out as (1/r2)(e12 + e22), making the rank 8
    vector_basis = [kv(1, 0, 0), kv(0, 1, 0), kv(0, 0, 1)]
    functional_basis = [kv(1, 0, 0), kv(0, 1, 0), kv(0, 0, 1)]
    r = [kv(1, 0, 0), kv(0, 1, 0),
         Vector([INV_SQRT2, INV_SQRT2, QuadScalar(0)], K), kv(0, 0, 1)]
    comp = _index_computation(bundled, r, vector_basis=vector_basis,
                              functional_basis=functional_basis)
    z = QuadScalar(0)
    s = INV_SQRT2

    def unit(i, j, scale=QuadScalar(1)):
        entries = [z] * 9
        entries[3 * i + j] = scale
        return Vector(entries, K)

    expected = {
        unit(0, 0).entries,                                   # e11
        unit(0, 2).entries,                                   # e13
        unit(1, 1).entries,                                   # e22
        unit(2, 0).entries,                                   # e31
        unit(2, 1, QuadScalar(-1)).entries,                   # -e32
        unit(2, 2).entries,                                   # e33
        (unit(0, 0, s) + unit(1, 0, s)).entries,              # (1/r2)(e11+e21)
        (unit(0, 1, s) + unit(1, 1, s)).entries,              # (1/r2)(e12+e22)
    }
    assert {g.entries for g in comp.z_generators} == expected
    assert comp.index == 8


def test_identity_isometry_attains_everywhere():
    space = ellinf(2)
    ident = LinearOperator(space, space, Matrix.identity(2, Q))
    att = operator_norm_and_attainment(ident)
    assert att.operator_norm == 1
    assert {v.entries for v in att.attaining_vertices} == {
        qv(1, 1).entries, qv(1, -1).entries}


def test_identity_ellinf2_order_four():
    space = ellinf(2)
    ident = LinearOperator(space, space, Matrix.identity(2, Q))
    report = order_of_smoothness(ident)
    assert report.index == 4
    assert report.is_extreme_contraction(2, 2)


def test_rank1_collapse_operator():
    t = LinearOperator.from_images(ell1(2), ellinf(2), [qv(1, 1), qv(1, 1)])
    att = operator_norm_and_attainment(t)
    assert att.operator_norm == 1
    assert {v.entries for v in att.attaining_vertices} == {
        qv(1, 0).entries, qv(0, 1).entries}
    assert order_of_smoothness(t).index == 4
    assert index_of_smoothness(t, list(att.attaining_vertices)) == 4


def test_single_smooth_attaining_vertex_gives_one():
    # e1 maps to a facet-interior point, e2 deep inside the ball
    t = LinearOperator.from_images(ell1(2), ellinf(2),
                                   [qv(1, Fraction(1, 2)), qv(Fraction(1, 4), 0)])
    att = operator_norm_and_attainment(t)
    assert [v.entries for v in att.attaining_vertices] == [qv(1, 0).entries]
    assert index_of_smoothness(t, [qv(1, 0)]) == 1


def test_zero_operator_rejected():
    t = LinearOperator.from_images(ell1(2), ellinf(2), [qv(0, 0), qv(0, 0)])
    with pytest.raises(ZeroOperatorError):
        operator_norm_and_attainment(t)


def test_order_requires_unit_norm():
    t = LinearOperator.from_images(ell1(2), ellinf(2), [qv(2, 2), qv(2, 2)])
    with pytest.raises(NotUnitNormError):
        order_of_smoothness(t)
    assert order_of_smoothness(t.normalized()).index == 4


def test_index_requires_extreme_member():
    t = LinearOperator.from_images(ell1(2), ellinf(2), [qv(1, 1), qv(1, 1)])
    with pytest.raises(EmptyExtremeIntersectionError):
        index_of_smoothness(t, [qv(Fraction(1, 2), Fraction(1, 2))])
    with pytest.raises(NotUnitNormError):
        index_of_smoothness(t, [qv(2, 0)])


def test_sign_invariance_of_index():
    rng = random.Random(99)
    for _ in range(10):
        x = random_space(rng.randrange(2 ** 30), 2, 3)
        y = random_space(rng.randrange(2 ** 30), 3, 4)
        t = _random_unit_operator(rng, x, y)
        att = operator_norm_and_attainment(t)
        reps = list(att.attaining_vertices)
        doubled = reps + [-v for v in reps]
        assert index_of_smoothness(t, doubled) == index_of_smoothness(t, reps)


def test_attaining_representatives_are_lex_positive():
    rng = random.Random(41)
    for _ in range(10):
        x = random_space(rng.randrange(2 ** 30), 3, 4)
        y = random_space(rng.randrange(2 ** 30), 2, 3)
        t = _random_unit_operator(rng, x, y)
        for v in operator_norm_and_attainment(t).attaining_vertices:
            assert v == sign_canonical(v)


def test_oracle_equals_index_on_quadratic_field(bundled):
    assert oracle_order_of_smoothness(bundled) == \
        index_of_smoothness(bundled,
                            list(operator_norm_and_attainment(bundled).attaining_vertices))


def test_order_equivalence_random_quadratic_operators():
    # the two routes agree over the quadratic field as well
    rng = random.Random(83)
    domain = paper_example_space()
    codomain = ellinf(3, K)
    for _ in range(10):
        entries = [[QuadScalar(Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
                               Fraction(rng.randint(-1, 1), rng.randint(1, 2)))
                    for _ in range(3)] for _ in range(3)]
        if not any(any(e for e in row) for row in entries):
            continue
        t = LinearOperator(domain, codomain, Matrix(entries, K)).normalized()
        report = order_of_smoothness(t)
        assert report.index == report.oracle_order
        assert report.min_bound <= report.index


def test_ell1_domain_order_equals_product_point_smoothness():
    # the operator's order equals the smoothness of the image tuple in the
    # max-product of codomain copies (one per domain basis vector)
    rng = random.Random(17)
    for codomain_builder, n in [(lambda: ellinf(2), 2), (lambda: ellinf(2), 3),
                                (lambda: ell1(2), 2), (lambda: ell1(3), 2)]:
        domain = ell1(n)
        codomain = codomain_builder()
        for _ in range(6):
            t = _random_unit_operator(rng, domain, codomain)
            tuple_point = Vector(
                [e for j in range(n) for e in t.apply(Vector.basis(j, n, Q)).entries], Q)
            prod = product_space([codomain] * n)
            assert order_of_smoothness(t).index == point_smoothness(prod, tuple_point)


def test_ell1_isometric_to_ellinf_nm():
    # domain ell1(n), codomain ellinf(m): order = smoothness in ellinf(n*m)
    rng = random.Random(29)
    domain, codomain = ell1(2), ellinf(3)
    big = ellinf(6)
    for _ in range(6):
        t = _random_unit_operator(rng, domain, codomain)
        tuple_point = Vector(
            [e for j in range(2) for e in t.apply(Vector.basis(j, 2, Q)).entries], Q)
        assert order_of_smoothness(t).index == point_smoothness(big, tuple_point)


def test_rank1_admissible_orders_examples():
    assert rank1_admissible_orders(3, 3) == [1, 2, 3, 4, 6, 9]
    assert rank1_forbidden_primes(3, 3) == {5, 7}
    assert rank1_admissible_orders(2, 2) == [1, 2, 4]
    assert 3 not in rank1_admissible_orders(2, 2)  # no rank-1 in an edge interior
    assert rank1_admissible_orders(1, 4) == [1, 2, 3, 4]
    assert rank1_forbidden_primes(1, 4) == set()


def test_rank1_random_law():
    rng = random.Random(53)
    for _ in range(15):
        x = random_space(rng.randrange(2 ** 30), rng.randint(2, 3), 4)
        y = random_space(rng.randrange(2 ** 30), rng.randint(2, 3), 4)
        t = _random_rank1_operator(rng, x, y)
        assert t.rank() == 1
        att = operator_norm_and_attainment(t)
        report = order_of_smoothness(t)
        image = t.apply(att.attaining_vertices[0])
        assert report.index == len(att.basis_indices) * point_smoothness(y, image)
        assert report.index in rank1_admissible_orders(x.dim, y.dim)


def test_construct_face_operator_edge_case():
    x_space, y_space = ell1(3), ellinf(2)
    edge = minimal_face(x_space.ball, qv(Fraction(1, 2), Fraction(1, 2), 0))
    t = construct_face_operator(x_space, edge, y_space, qv(1, 1))
    report = order_of_smoothness(t)
    assert report.index == 4


def test_construct_face_operator_vertex_to_facet_interior():
    x_space, y_space = ell1(3), ellinf(2)
    vertex = minimal_face(x_space.ball, qv(1, 0, 0))
    t = construct_face_operator(x_space, vertex, y_space, qv(1, Fraction(1, 2)))
    assert order_of_smoothness(t).index == 1


def test_construct_face_operator_all_admissible_orders():
    x_space, y_space = ell1(3), ellinf(3)
    targets = {1: qv(1, Fraction(1, 2), 0), 2: qv(1, 1, 0), 3: qv(1, 1, 1)}
    for p in (1, 2, 3):
        face = enumerate_faces(x_space.ball, p - 1)[0]
        for q in (1, 2, 3):
            t = construct_face_operator(x_space, face, y_space, targets[q])
            assert order_of_smoothness(t).index == p * q


def test_construct_face_operator_rejects_bad_input():
    x_space, y_space = ell1(3), ellinf(2)
    edge = minimal_face(x_space.ball, qv(Fraction(1, 2), Fraction(1, 2), 0))
    with pytest.raises(NotUnitNormError):
        construct_face_operator(x_space, edge, y_space, qv(2, 0))


def test_min_bound_from_remark():
    # a domain with independent attaining vertices: order is the sum of the
    # image smoothness orders
    t = LinearOperator.from_images(ell1(2), ellinf(2),
                                   [qv(1, 1), qv(1, Fraction(1, 2))])
    report = order_of_smoothness(t)
    assert {v.entries for v in report.attainment.attaining_vertices} == {
        qv(1, 0).entries, qv(0, 1).entries}
    assert report.index == 2 + 1
    assert report.min_bound == report.index
