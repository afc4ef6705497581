import random
from fractions import Fraction

import pytest

from ksmooth.errors import (
    NotIndependentError,
    NotUnitNormError,
    SubspaceMembershipError,
)
from ksmooth.linalg import Vector
from ksmooth.orthogonality import (
    Subspace,
    bj_subspace_subspace,
    bj_subspace_vector,
    bj_vector_subspace,
    bj_vector_vector,
    is_best_coapproximation,
    is_strong_auerbach,
)
from ksmooth.scalars import FieldTag, QuadScalar
from ksmooth.selftest import _bj_breakpoint_oracle
from ksmooth.spaces import ell1, ellinf, norm, normalized, paper_example_space, random_space

Q = FieldTag.RATIONAL
K = FieldTag.QUAD_SQRT2


def qv(*entries):
    return Vector(entries, Q)


def basis_vectors(n):
    return [Vector.basis(i, n, Q) for i in range(n)]


def test_vector_vector_bracketing():
    verdict = bj_vector_vector(ellinf(2), qv(1, 1), qv(1, -1))
    assert verdict
    w = verdict.witnesses[0]
    assert w.functional.dot(qv(1, -1)) == 0
    assert w.functional.dot(qv(1, 1)) == 1


def test_ell1_standard_basis_orthogonal():
    assert bj_vector_vector(ell1(2), qv(1, 0), qv(0, 1))


def test_anything_orthogonal_to_zero():
    assert bj_vector_vector(ellinf(2), qv(1, 1), qv(0, 0))


def test_requires_unit_norm():
    with pytest.raises(NotUnitNormError):
        bj_vector_vector(ellinf(2), qv(2, 0), qv(0, 1))


def test_asymmetry_witness():
    space = ellinf(2)
    assert bj_vector_vector(space, qv(1, 1), qv(1, 0))
    assert not bj_vector_vector(space, qv(1, 0), qv(1, 1))


def test_homogeneity():
    rng = random.Random(61)
    space = random_space(3100, 2, 3)
    for _ in range(30):
        x = normalized(space, qv(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                                 Fraction(rng.randint(1, 4), rng.randint(1, 3))))
        y = qv(rng.randint(-3, 3), rng.randint(-3, 3))
        c = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice([1, -1])
        assert bool(bj_vector_vector(space, x, y)) == \
            bool(bj_vector_vector(space, x, y.scale(c)))


def test_vector_subspace_examples():
    l13 = ell1(3)
    assert bj_vector_subspace(l13, qv(1, 0, 0),
                              Subspace.span(l13, [qv(0, 1, 0), qv(0, 0, 1)]))
    li2 = ellinf(2)
    verdict = bj_vector_subspace(li2, qv(1, 1), Subspace.span(li2, [qv(1, -1)]))
    assert verdict
    assert verdict.witnesses[0].functional == qv(Fraction(1, 2), Fraction(1, 2))
    assert not bj_vector_subspace(li2, qv(1, 1),
                                  Subspace.span(li2, [qv(1, 0), qv(0, 1)]))


def test_subspace_vector_examples():
    l13 = ell1(3)
    assert bj_subspace_vector(l13, Subspace.span(l13, [qv(1, 0, 0), qv(0, 1, 0)]),
                              qv(0, 0, 1))
    li2 = ellinf(2)
    assert bj_subspace_vector(li2, Subspace.span(li2, [qv(1, 1)]), qv(1, -1))
    assert bj_subspace_vector(li2, Subspace.span(li2, [qv(1, 0)]), qv(0, 1))
    assert bj_subspace_vector(li2, Subspace.span(li2, [qv(1, 0)]), qv(0, 0))
    assert not bj_subspace_vector(li2, Subspace.span(li2, [qv(1, 0)]), qv(1, 1))


def test_subspace_subspace():
    l13 = ell1(3)
    assert bj_subspace_subspace(
        l13, Subspace.span(l13, [qv(1, 0, 0), qv(0, 1, 0)]),
        Subspace.span(l13, [qv(0, 0, 1)]))
    li2 = ellinf(2)
    assert not bj_subspace_subspace(
        li2, Subspace.span(li2, [qv(1, 0)]), Subspace.span(li2, [qv(1, 1)]))


def test_witnesses_verified_exactly():
    l13 = ell1(3)
    verdict = bj_subspace_vector(l13, Subspace.span(l13, [qv(1, 0, 0), qv(0, 1, 0)]),
                                 qv(0, 0, 1))
    assert verdict.witnesses
    for w in verdict.witnesses:
        assert w.functional.dot(w.point) == 1
        assert w.functional.dot(qv(0, 0, 1)) == 0
        assert max(w.functional.dot(v) for v in l13.ball.vertices) == 1
        assert sum(w.coefficients) == 1
        assert all(c >= 0 for c in w.coefficients)


def test_best_coapproximation():
    l13 = ell1(3)
    sub = Subspace.span(l13, [qv(1, 0, 0), qv(0, 1, 0)])
    assert is_best_coapproximation(l13, qv(1, 1, 0), qv(1, 1, 0), sub)
    assert is_best_coapproximation(l13, qv(1, 1, 1), qv(1, 1, 0), sub)
    li2 = ellinf(2)
    assert is_best_coapproximation(li2, qv(1, 0), qv(Fraction(1, 2), Fraction(1, 2)),
                                   Subspace.span(li2, [qv(1, 1)]))
    with pytest.raises(SubspaceMembershipError):
        is_best_coapproximation(l13, qv(1, 1, 1), qv(0, 0, 1), sub)


def test_strong_auerbach_standard_bases():
    assert is_strong_auerbach(ell1(3), basis_vectors(3))
    assert is_strong_auerbach(ellinf(2), [qv(1, 1), qv(1, -1)])
    assert not is_strong_auerbach(ellinf(2), [qv(1, 1), qv(1, 0)])


def test_strong_auerbach_validation():
    with pytest.raises(NotUnitNormError):
        is_strong_auerbach(ell1(2), [qv(1, 1), qv(1, 0)])
    with pytest.raises(NotIndependentError):
        is_strong_auerbach(ellinf(2), [qv(1, 1), qv(-1, -1)])


def test_agrees_with_breakpoint_oracle():
    rng = random.Random(71)
    for case in range(60):
        space = random_space(4000 + case % 7, rng.randint(2, 3), 4)
        raw = Vector([Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                      for _ in range(space.dim)], Q)
        if raw.is_zero():
            continue
        x = normalized(space, raw)
        y = Vector([Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                    for _ in range(space.dim)], Q)
        assert bool(bj_vector_vector(space, x, y)) == _bj_breakpoint_oracle(space, x, y)


def test_quadratic_field_strong_auerbach():
    # the ambient basis of the octagonal bipyramid space: every singleton
    # sub-span admits the averaged functional (a coordinate functional) as
    # its annihilating support, and the mixed planes meet only vertices and
    # apex edges whose active functionals average to coordinate functionals
    space = paper_example_space()
    basis = [Vector([QuadScalar(1), QuadScalar(0), QuadScalar(0)], K),
             Vector([QuadScalar(0), QuadScalar(1), QuadScalar(0)], K),
             Vector([QuadScalar(0), QuadScalar(0), QuadScalar(1)], K)]
    assert is_strong_auerbach(space, basis)


def test_quadratic_field_orthogonality():
    # the apex direction is orthogonal to the equator and vice versa in the
    # octagonal bipyramid; witnesses stay exact over the quadratic field
    space = paper_example_space()
    e1 = Vector([QuadScalar(1), QuadScalar(0), QuadScalar(0)], K)
    e3 = Vector([QuadScalar(0), QuadScalar(0), QuadScalar(1)], K)
    verdict = bj_vector_vector(space, e1, e3)
    assert verdict
    w = verdict.witnesses[0]
    assert w.functional.dot(e3) == K.zero
    assert w.functional.dot(e1) == K.one
    assert bj_vector_vector(space, e3, e1)
    assert _bj_breakpoint_oracle(space, e1, e3)
    assert _bj_breakpoint_oracle(space, e3, e1)


def test_definition_via_norm_inequality_spot_check():
    # x perp y means ||x + t y|| >= 1 for every t; scan a small grid
    space = ellinf(2)
    x, y = qv(1, 1), qv(1, -1)
    assert bj_vector_vector(space, x, y)
    for num in range(-12, 13):
        t = Fraction(num, 4)
        assert norm(space, x + y.scale(t)) >= 1
