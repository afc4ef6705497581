"""Exact Birkhoff-James orthogonality tests with witness certificates.

``x`` is Birkhoff-James orthogonal to ``y`` when ``||x + t y|| >= ||x||``
for every scalar ``t``; equivalently some norm-one functional supports
``x`` and vanishes on ``y``.  Over a polyhedral ball the support set
``J(x)`` is the convex hull of the facet functionals active at ``x``, so
every test below reduces to exact linear algebra or an exact feasibility
LP over those extreme functionals.

Subspace-level tests iterate the proper faces of the ball: the support
set is constant on the relative interior of a face, so each face whose
relative interior meets the subspace contributes a single check.  Whether
it meets is itself decided exactly, by maximizing a slack variable.

Every positive verdict carries one witness functional per contributing
face, stored as convex-combination coefficients over the extreme
functionals used, and re-verified exactly before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    InternalInconsistencyError,
    NotIndependentError,
    NotUnitNormError,
    SubspaceMembershipError,
    ValidationError,
)
from .linalg import Matrix, Vector, rank_of_vectors, solve
from .lp import LPStatus, lp_feasible, solve_lp
from .polytope import FaceDescriptor, enumerate_faces
from .scalars import Scalar
from .spaces import PolyhedralSpace, norm, support_set


@dataclass(frozen=True)
class Subspace:
    """A subspace of a polyhedral space, given by an independent basis."""

    ambient: PolyhedralSpace
    basis: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if not self.basis:
            raise ValidationError("subspace needs at least one basis vector")
        if len(self.basis) > self.ambient.dim:
            raise DimensionMismatchError("more basis vectors than ambient dimensions")
        for b in self.basis:
            if b.field is not self.ambient.field or b.dim != self.ambient.dim:
                raise FieldMismatchError("basis vector outside the ambient space")
        if rank_of_vectors(list(self.basis)) != len(self.basis):
            raise NotIndependentError("subspace basis is linearly dependent")

    @classmethod
    def span(cls, ambient: PolyhedralSpace, vectors: Sequence[Vector]) -> "Subspace":
        return cls(ambient, tuple(vectors))

    def contains(self, x: Vector) -> bool:
        return solve(Matrix.from_columns(list(self.basis)), x) is not None


@dataclass(frozen=True)
class Witness:
    """An exact certificate: ``functional`` supports ``point`` and vanishes
    where required; ``coefficients`` are its convex weights over
    ``extremes``."""

    point: Vector
    functional: Vector
    extremes: tuple[Vector, ...]
    coefficients: tuple[Scalar, ...]


@dataclass(frozen=True)
class BJVerdict:
    """Truthy result of an orthogonality test, with certificates."""

    holds: bool
    witnesses: tuple[Witness, ...] = ()
    counterexample_point: Optional[Vector] = None

    def __bool__(self) -> bool:
        return self.holds


def _verify_witness(space: PolyhedralSpace, witness: Witness,
                    vanish_on: Sequence[Vector]) -> Witness:
    one, zero = space.field.one, space.field.zero
    f = witness.functional
    if f.dot(witness.point) != one:
        raise InternalInconsistencyError("witness functional does not support its point")
    if max(f.dot(v) for v in space.ball.vertices) != one:
        raise InternalInconsistencyError("witness functional is not norm one")
    for y in vanish_on:
        if f.dot(y) != zero:
            raise InternalInconsistencyError("witness functional fails to vanish")
    total = zero
    for c in witness.coefficients:
        if c < zero:
            raise InternalInconsistencyError("witness coefficients not convex")
        total = total + c
    if total != one:
        raise InternalInconsistencyError("witness coefficients do not sum to one")
    return witness


def _combine(extremes: Sequence[Vector], coefficients: Sequence[Scalar],
             space: PolyhedralSpace) -> Vector:
    out = Vector.zero(space.dim, space.field)
    for c, f in zip(coefficients, extremes):
        out = out + f.scale(c)
    return out


def _bracket_witness(space: PolyhedralSpace, point: Vector,
                     extremes: Sequence[Vector], y: Vector) -> Optional[Witness]:
    """A functional in the hull of ``extremes`` vanishing at ``y``, if any.

    Exists iff the values ``f(y)`` over the extremes bracket zero.
    """
    zero, one = space.field.zero, space.field.one
    values = [f.dot(y) for f in extremes]
    for f, val in zip(extremes, values):
        if val == zero:
            coeffs = tuple(one if g is f else zero for g in extremes)
            return _verify_witness(
                space, Witness(point, f, tuple(extremes), coeffs), [y])
    pos = next(((i, v) for i, v in enumerate(values) if v > zero), None)
    neg = next(((i, v) for i, v in enumerate(values) if v < zero), None)
    if pos is None or neg is None:
        return None
    (ip, vp), (iq, vn) = pos, neg
    gap = vp - vn
    lam_pos = -vn / gap
    lam_neg = vp / gap
    coeffs = [zero] * len(extremes)
    coeffs[ip] = lam_pos
    coeffs[iq] = lam_neg
    functional = extremes[ip].scale(lam_pos) + extremes[iq].scale(lam_neg)
    return _verify_witness(
        space, Witness(point, functional, tuple(extremes), tuple(coeffs)), [y])


def bj_vector_vector(space: PolyhedralSpace, x: Vector, y: Vector) -> BJVerdict:
    """Whether the unit vector x is Birkhoff-James orthogonal to y."""
    sup = support_set(space, x)
    witness = _bracket_witness(space, x, sup.extreme_functionals, y)
    if witness is None:
        return BJVerdict(False, counterexample_point=x)
    return BJVerdict(True, (witness,))


def _annihilating_witness(space: PolyhedralSpace, point: Vector,
                          extremes: Sequence[Vector],
                          targets: Sequence[Vector]) -> Optional[Witness]:
    """A convex combination of ``extremes`` vanishing on all ``targets``."""
    field = space.field
    rows = [[field.one] * len(extremes)]
    rhs: list[Scalar] = [field.one]
    for w in targets:
        rows.append([f.dot(w) for f in extremes])
        rhs.append(field.zero)
    coefficients = lp_feasible(rows, rhs, field)
    if coefficients is None:
        return None
    functional = _combine(extremes, coefficients, space)
    return _verify_witness(
        space, Witness(point, functional, tuple(extremes), coefficients), targets)


def bj_vector_subspace(space: PolyhedralSpace, x: Vector, w: Subspace) -> BJVerdict:
    """Whether some functional of J(x) annihilates the whole subspace w."""
    sup = support_set(space, x)
    witness = _annihilating_witness(space, x, sup.extreme_functionals, w.basis)
    if witness is None:
        return BJVerdict(False, counterexample_point=x)
    return BJVerdict(True, (witness,))


def _relint_sample(space: PolyhedralSpace, face: FaceDescriptor,
                   basis: Sequence[Vector]) -> Optional[Vector]:
    """A point of relint(face) inside span(basis), or None when they miss.

    Maximizes a shared slack below every non-active facet constraint; the
    intersection meets the relative interior iff the optimum is positive.
    """
    field = space.field
    functionals = space.ball.functionals
    active = sorted(face.active_set)
    others = [j for j in range(len(functionals)) if j not in face.active_set]
    assert others, "a proper face of a symmetric ball cannot activate every facet"
    r = len(basis)
    zero, one = field.zero, field.one

    def dots(j: int) -> list[Scalar]:
        return [functionals[j].dot(b) for b in basis]

    rows = []
    rhs = []
    for j in active:
        d = dots(j)
        rows.append(d + [-v for v in d] + [zero] * (1 + len(others)))
        rhs.append(one)
    for k, j in enumerate(others):
        d = dots(j)
        slack = [one if kk == k else zero for kk in range(len(others))]
        rows.append(d + [-v for v in d] + [one] + slack)
        rhs.append(one)
    objective = [zero] * (2 * r) + [one] + [zero] * len(others)
    result = solve_lp(rows, rhs, objective, field, maximize=True)
    if result.status is not LPStatus.OPTIMAL:
        return None
    if not result.objective > zero:
        return None
    coords = [result.solution[a] - result.solution[r + a] for a in range(r)]
    point = Vector.zero(space.dim, field)
    for c, b in zip(coords, basis):
        point = point + b.scale(c)
    return point


def _faces_meeting(space: PolyhedralSpace, v: Subspace):
    v_rank = len(v.basis)
    for dim in range(space.dim):
        for face in enumerate_faces(space.ball, dim):
            # cheap cull: if span(v) and span(face vertices) meet only at 0,
            # the face cannot meet the subspace at all
            face_verts = space.ball.face_vertices(face)
            joint = rank_of_vectors(list(v.basis) + face_verts)
            if joint == v_rank + rank_of_vectors(face_verts):
                continue
            point = _relint_sample(space, face, v.basis)
            if point is not None:
                yield face, point


def bj_subspace_vector(space: PolyhedralSpace, v: Subspace, z: Vector) -> BJVerdict:
    """Whether every unit vector of the subspace v is BJ-orthogonal to z.

    The support set is constant on the relative interior of each face, so
    each face meeting v contributes one bracketing test over its active
    functionals.
    """
    witnesses = []
    for face, point in _faces_meeting(space, v):
        extremes = [space.ball.functionals[j] for j in sorted(face.active_set)]
        witness = _bracket_witness(space, point, extremes, z)
        if witness is None:
            return BJVerdict(False, counterexample_point=point)
        witnesses.append(witness)
    return BJVerdict(True, tuple(witnesses))


def bj_subspace_subspace(space: PolyhedralSpace, v: Subspace, w: Subspace) -> BJVerdict:
    """Whether every unit vector of v admits one support functional
    annihilating all of w."""
    witnesses = []
    for face, point in _faces_meeting(space, v):
        extremes = [space.ball.functionals[j] for j in sorted(face.active_set)]
        witness = _annihilating_witness(space, point, extremes, w.basis)
        if witness is None:
            return BJVerdict(False, counterexample_point=point)
        witnesses.append(witness)
    return BJVerdict(True, tuple(witnesses))


def is_best_coapproximation(space: PolyhedralSpace, x: Vector, y0: Vector,
                            y: Subspace) -> BJVerdict:
    """Whether y0 is a best coapproximation to x out of the subspace y,
    i.e. whether y is BJ-orthogonal to x - y0."""
    if not y.contains(y0):
        raise SubspaceMembershipError(f"{y0!r} is not in the subspace")
    return bj_subspace_vector(space, y, x - y0)


def is_strong_auerbach(space: PolyhedralSpace, basis: Sequence[Vector]) -> BJVerdict:
    """Whether every sub-span of the basis is BJ-orthogonal to the
    complementary sub-span (all 2^n - 2 nonempty proper subsets)."""
    one = space.field.one
    for b in basis:
        if norm(space, b) != one:
            raise NotUnitNormError(f"basis vector {b!r} is not unit norm")
    if rank_of_vectors(list(basis)) != len(basis):
        raise NotIndependentError("basis is linearly dependent")
    n = len(basis)
    witnesses: list[Witness] = []
    for mask in range(1, 2 ** n - 1):
        left = [basis[i] for i in range(n) if mask & (1 << i)]
        right = [basis[i] for i in range(n) if not mask & (1 << i)]
        verdict = bj_subspace_subspace(space, Subspace.span(space, left),
                                       Subspace.span(space, right))
        if not verdict:
            return BJVerdict(False, counterexample_point=verdict.counterexample_point)
        witnesses.extend(verdict.witnesses)
    return BJVerdict(True, tuple(witnesses))
