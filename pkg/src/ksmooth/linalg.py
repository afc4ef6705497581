"""Exact vectors, matrices, rank, solving and flattened outer products.

Rank uses fraction-free (Bareiss) elimination after clearing row
denominators, with full pivot search by a smallest-digit-length heuristic;
this bounds coefficient growth without affecting exactness.  Every rank
query recomputes from scratch: matrices here are tiny.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DimensionMismatchError, FieldMismatchError
from .scalars import FieldTag, Scalar


class Vector:
    """Immutable dense vector over a single scalar field."""

    __slots__ = ("entries", "field")

    def __init__(self, entries: Iterable[object], field: FieldTag) -> None:
        object.__setattr__(self, "entries", tuple(field.coerce(e) for e in entries))
        object.__setattr__(self, "field", field)
        if not self.entries:
            raise DimensionMismatchError("vector must have positive dimension")

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Vector is immutable")

    @classmethod
    def zero(cls, dim: int, field: FieldTag) -> "Vector":
        return cls([field.zero] * dim, field)

    @classmethod
    def basis(cls, index: int, dim: int, field: FieldTag) -> "Vector":
        return cls([field.one if i == index else field.zero for i in range(dim)], field)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Scalar:
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.field is other.field and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.field, self.entries))

    def __repr__(self) -> str:
        return f"Vector({list(self.entries)!r}, {self.field.name})"

    def _check_peer(self, other: "Vector") -> None:
        if self.field is not other.field:
            raise FieldMismatchError("vectors of different fields")
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check_peer(other)
        return Vector([a + b for a, b in zip(self.entries, other.entries)], self.field)

    def __sub__(self, other: "Vector") -> "Vector":
        self._check_peer(other)
        return Vector([a - b for a, b in zip(self.entries, other.entries)], self.field)

    def __neg__(self) -> "Vector":
        return Vector([-a for a in self.entries], self.field)

    def scale(self, c: object) -> "Vector":
        c = self.field.coerce(c)
        return Vector([c * a for a in self.entries], self.field)

    def dot(self, other: "Vector") -> Scalar:
        self._check_peer(other)
        total = self.field.zero
        for a, b in zip(self.entries, other.entries):
            total = total + a * b
        return total

    def is_zero(self) -> bool:
        return not any(self.entries)


class Matrix:
    """Immutable row-major matrix over a single scalar field."""

    __slots__ = ("row_data", "cols", "field")

    def __init__(self, rows: Sequence[Sequence[object]], field: FieldTag) -> None:
        data = tuple(tuple(field.coerce(e) for e in row) for row in rows)
        if not data or not data[0]:
            raise DimensionMismatchError("matrix must have positive row and column counts")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatchError("ragged matrix rows")
        object.__setattr__(self, "row_data", data)
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Vector]) -> "Matrix":
        if not rows:
            raise DimensionMismatchError("no rows")
        return cls([list(r.entries) for r in rows], rows[0].field)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> "Matrix":
        if not columns:
            raise DimensionMismatchError("no columns")
        dim = columns[0].dim
        field = columns[0].field
        return cls([[c[i] for c in columns] for i in range(dim)], field)

    @classmethod
    def identity(cls, n: int, field: FieldTag) -> "Matrix":
        return cls([[field.one if i == j else field.zero for j in range(n)]
                    for i in range(n)], field)

    @property
    def rows(self) -> int:
        return len(self.row_data)

    def row(self, i: int) -> Vector:
        return Vector(self.row_data[i], self.field)

    def column(self, j: int) -> Vector:
        return Vector([row[j] for row in self.row_data], self.field)

    def transpose(self) -> "Matrix":
        return Matrix([[self.row_data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.field)

    def matvec(self, v: Vector) -> Vector:
        if v.field is not self.field:
            raise FieldMismatchError("matrix and vector fields differ")
        if v.dim != self.cols:
            raise DimensionMismatchError(f"matvec: {self.cols} columns vs dim {v.dim}")
        out = []
        for row in self.row_data:
            total = self.field.zero
            for a, b in zip(row, v.entries):
                total = total + a * b
            out.append(total)
        return Vector(out, self.field)

    def matmul(self, other: "Matrix") -> "Matrix":
        if other.field is not self.field:
            raise FieldMismatchError("matrix fields differ")
        if self.cols != other.rows:
            raise DimensionMismatchError("matmul shape mismatch")
        ot = other.transpose()
        return Matrix([[Vector(r, self.field).dot(Vector(c, self.field))
                        for c in ot.row_data] for r in self.row_data], self.field)

    def scale(self, c: object) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix([[c * e for e in row] for row in self.row_data], self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and self.row_data == other.row_data

    def __hash__(self) -> int:
        return hash((self.field, self.row_data))

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.row_data]!r}, {self.field.name})"


def _denominators(x: Scalar) -> tuple[int, ...]:
    if isinstance(x, Fraction):
        return (x.denominator,)
    return (x.a.denominator, x.b.denominator)


def _scalar_size(x: Scalar) -> int:
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return (x.a.numerator.bit_length() + x.a.denominator.bit_length()
            + x.b.numerator.bit_length() + x.b.denominator.bit_length())


def _cleared_rows(rows: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    out = []
    for row in rows:
        scale = 1
        for x in row:
            for d in _denominators(x):
                scale = lcm(scale, d)
        out.append([x * scale for x in row] if scale != 1 else list(row))
    return out


def _rank_of_lists(rows: Sequence[Sequence[Scalar]], field: FieldTag) -> int:
    if not rows:
        return 0
    work = _cleared_rows(rows)
    nr, nc = len(work), len(work[0])
    prev = field.one
    rank = 0
    for step in range(min(nr, nc)):
        best = None
        for i in range(step, nr):
            for j in range(step, nc):
                x = work[i][j]
                if x:
                    size = _scalar_size(x)
                    if best is None or size < best[0]:
                        best = (size, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != step:
            work[step], work[pi] = work[pi], work[step]
        if pj != step:
            for row in work:
                row[step], row[pj] = row[pj], row[step]
        pivot = work[step][step]
        for i in range(step + 1, nr):
            factor = work[i][step]
            for j in range(step + 1, nc):
                work[i][j] = (pivot * work[i][j] - factor * work[step][j]) / prev
            work[i][step] = field.zero
        prev = pivot
        rank += 1
    return rank


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free elimination."""
    return _rank_of_lists(m.row_data, m.field)


def rank_of_vectors(vs: Sequence[Vector]) -> int:
    if not vs:
        return 0
    return _rank_of_lists([v.entries for v in vs], vs[0].field)


def solve(a: Matrix, b: Vector) -> Optional[Vector]:
    """Exact solution of ``a x = b``, or ``None`` when inconsistent.

    Unique when ``a`` has full column rank; otherwise free variables are
    fixed at zero (deterministically).
    """
    if b.field is not a.field:
        raise FieldMismatchError("matrix and vector fields differ")
    if b.dim != a.rows:
        raise DimensionMismatchError(f"solve: {a.rows} rows vs rhs dim {b.dim}")
    field = a.field
    aug = [list(row) + [b[i]] for i, row in enumerate(a.row_data)]
    nr, nc = a.rows, a.cols
    pivot_cols: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        best = None
        for i in range(r, nr):
            x = aug[i][c]
            if x:
                size = _scalar_size(x)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        _, pi = best
        if pi != r:
            aug[r], aug[pi] = aug[pi], aug[r]
        pivot = aug[r][c]
        aug[r] = [x / pivot for x in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
    for i in range(r, nr):
        if aug[i][nc]:
            return None
    solution = [field.zero] * nc
    for k, c in enumerate(pivot_cols):
        solution[c] = aug[k][nc]
    return Vector(solution, field)


def nullspace(a: Matrix) -> list[Vector]:
    """Deterministic basis of the kernel of ``a`` (one vector per free column)."""
    field = a.field
    aug = [list(row) for row in a.row_data]
    nr, nc = a.rows, a.cols
    pivot_cols: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        best = None
        for i in range(r, nr):
            x = aug[i][c]
            if x:
                size = _scalar_size(x)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        _, pi = best
        if pi != r:
            aug[r], aug[pi] = aug[pi], aug[r]
        pivot = aug[r][c]
        aug[r] = [x / pivot for x in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
    free_cols = [c for c in range(nc) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        entries = [field.zero] * nc
        entries[fc] = field.one
        for k, pc in enumerate(pivot_cols):
            entries[pc] = -aug[k][fc]
        basis.append(Vector(entries, field))
    return basis


def greedy_independent_subset(vs: Sequence[Vector]) -> list[int]:
    """Indices of a maximal independent subset, scanning in input order.

    A vector is kept iff it increases the rank of the kept set; the result
    spans the span of the whole input.
    """
    kept_rows: list[tuple[Scalar, ...]] = []
    indices: list[int] = []
    for i, v in enumerate(vs):
        if v.is_zero():
            continue
        candidate = kept_rows + [v.entries]
        if _rank_of_lists(candidate, v.field) == len(candidate):
            kept_rows.append(v.entries)
            indices.append(i)
    return indices


def kron_coeff_vector(alpha: Vector, beta: Vector) -> Vector:
    """Coefficient tuple of all products ``alpha[i]*beta[j]``, i-major."""
    if alpha.field is not beta.field:
        raise FieldMismatchError("mixed fields in coefficient product")
    entries = []
    for ai in alpha.entries:
        for bj in beta.entries:
            entries.append(ai * bj)
    return Vector(entries, alpha.field)


def outer_flatten(x: Vector, f: Vector) -> Vector:
    """Flattened coefficient array of the bilinear form ``S -> f(Sx)``.

    ``x`` lives in domain coordinates and ``f`` in codomain-dual
    coordinates; the entry at position ``i*dim(f) + a`` is ``x[i]*f[a]``,
    matching the i-major layout of :func:`kron_coeff_vector`.
    """
    if x.field is not f.field:
        raise FieldMismatchError("mixed fields in outer product")
    entries = []
    for xi in x.entries:
        for fa in f.entries:
            entries.append(xi * fa)
    return Vector(entries, x.field)
