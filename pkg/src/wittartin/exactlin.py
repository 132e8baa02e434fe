"""Exact dense linear algebra over the rationals.

Everything here is built on :class:`fractions.Fraction`, so all results are
exact: no tolerances, no rounding, ever.  Subspaces carry a canonical basis
(reduced column echelon form with smallest-index pivoting), which makes
subspace equality a plain ``==`` on basis matrices and keeps every
computation bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class AmbientMismatch(ValueError):
    """Operands live in coordinate spaces of different dimension."""


class NotContained(ValueError):
    """A subspace that was required to contain another does not."""


class NotPositiveDefinite(ValueError):
    """A bilinear form required to be positive definite fails a minor test."""


def frac(x) -> Fraction:
    """Coerce ints, Fractions or 'p/q' strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


def vec(entries: Iterable) -> Vec:
    return tuple(frac(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def add_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale_vec(c: Fraction, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def dot(u: Vec, v: Vec) -> Fraction:
    """Plain coordinate pairing; also the covector/vector pairing."""
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def is_zero_vec(v: Vec) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of Fractions; rows/cols may be zero."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(frac(x) for x in row) for row in rows)
        if data:
            cols = len(data[0])
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return Matrix(len(data), cols, data)

    @staticmethod
    def from_cols(cols: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if cols:
            rows = len(cols[0])
        elif rows is None:
            raise ValueError("empty matrix needs an explicit row count")
        data = tuple(
            tuple(frac(col[i]) for col in cols) for i in range(rows)
        )
        return Matrix(rows, len(cols), data)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(unit_vec(n, i) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def col(self, j: int) -> Vec:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[Vec]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.col(j) for j in range(self.cols)),
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            tuple(add_vec(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            tuple(sub_vec(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "Matrix":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(
            self.rows,
            self.cols,
            tuple(scale_vec(c, row) for row in self.entries),
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise AmbientMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ot = other.transpose()
        data = tuple(
            tuple(dot(row, ot.entries[j]) for j in range(other.cols))
            for row in self.entries
        )
        return Matrix(self.rows, other.cols, data)

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise AmbientMismatch("vector length does not match column count")
        return tuple(dot(row, v) for row in self.entries)

    def apply_transpose(self, v: Vec) -> Vec:
        if len(v) != self.rows:
            raise AmbientMismatch("vector length does not match row count")
        return tuple(dot(self.col(j), v) for j in range(self.cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise AmbientMismatch("hstack needs equal row counts")
        data = tuple(a + b for a, b in zip(self.entries, other.entries))
        return Matrix(self.rows, self.cols + other.cols, data)

    def is_zero(self) -> bool:
        return all(is_zero_vec(row) for row in self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def is_antisymmetric(self) -> bool:
        return self.rows == self.cols and self == -self.transpose()

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form with smallest-index pivoting.

        Returns the reduced matrix and the tuple of pivot column indices.
        """
        m = [list(row) for row in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return Matrix(self.rows, self.cols, tuple(tuple(row) for row in m)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(row) for row in self.entries]
        det = ONE
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
            if pivot_row is None:
                return ZERO
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det *= m[c][c]
            inv = ONE / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug, pivots = self.hstack(Matrix.identity(self.rows)).rref()
        if len(pivots) != self.rows or any(p >= self.rows for p in pivots):
            raise ValueError("matrix is singular")
        data = tuple(row[self.rows:] for row in aug.entries)
        return Matrix(self.rows, self.cols, data)

    def solve(self, b: Vec) -> Vec | None:
        """One particular solution of Ax = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise AmbientMismatch("right-hand side length mismatch")
        aug = self.hstack(Matrix.from_cols([b], rows=self.rows))
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red.entries[r][self.cols]
        return tuple(x)

    def leading_principal_minors(self) -> list[Fraction]:
        if self.rows != self.cols:
            raise ValueError("minors of a non-square matrix")
        out = []
        for k in range(1, self.rows + 1):
            sub = Matrix(k, k, tuple(row[:k] for row in self.entries[:k]))
            out.append(sub.det())
        return out

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise AmbientMismatch("matrix shapes differ")

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def _canonical_basis(ambient_dim: int, vectors: Sequence[Vec]) -> Matrix:
    """Canonical column basis of span(vectors): RREF rows, transposed."""
    for v in vectors:
        if len(v) != ambient_dim:
            raise AmbientMismatch("spanning vector of wrong length")
    if not vectors:
        return Matrix.zeros(ambient_dim, 0)
    red, pivots = Matrix.from_rows(vectors).rref()
    basis_rows = red.entries[: len(pivots)]
    return Matrix.from_cols(basis_rows, rows=ambient_dim)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held by its canonical basis matrix.

    The basis columns are the unique reduced-column-echelon basis, so two
    Subspace values are equal exactly when they describe the same subspace.
    """

    ambient_dim: int
    basis: Matrix
    canonical: bool = True

    @staticmethod
    def span(ambient_dim: int, vectors: Sequence) -> "Subspace":
        vs = [vec(v) for v in vectors]
        return Subspace(ambient_dim, _canonical_basis(ambient_dim, vs))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.zeros(ambient_dim, 0))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def basis_vectors(self) -> list[Vec]:
        return self.basis.columns()

    def coords_of(self, v: Vec) -> Vec | None:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length mismatch")
        if self.dim == 0:
            return () if is_zero_vec(v) else None
        return self.basis.solve(v)

    def contains(self, v: Vec) -> bool:
        return self.coords_of(v) is not None

    def leq(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(other.contains(v) for v in self.basis_vectors())

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("subspaces live in different ambient spaces")


@dataclass(frozen=True)
class BilinearForm:
    """A bilinear form on Q^n given by its Gram matrix."""

    gram: Matrix

    def __post_init__(self):
        if self.gram.rows != self.gram.cols:
            raise ValueError("Gram matrix must be square")

    @property
    def ambient_dim(self) -> int:
        return self.gram.rows

    def __call__(self, u: Vec, v: Vec) -> Fraction:
        return dot(u, self.gram.apply(v))

    def is_symmetric(self) -> bool:
        return self.gram.is_symmetric()

    def is_antisymmetric(self) -> bool:
        return self.gram.is_antisymmetric()

    def radical(self) -> Subspace:
        """Vectors pairing to zero with everything."""
        return kernel(self.gram)

    def is_nondegenerate(self) -> bool:
        return self.gram.rank() == self.ambient_dim


def identity_form(n: int) -> BilinearForm:
    return BilinearForm(Matrix.identity(n))


def kernel(A: Matrix) -> Subspace:
    """Canonical basis of the null space {v : Av = 0}."""
    red, pivots = A.rref()
    free = [c for c in range(A.cols) if c not in pivots]
    vectors = []
    for f in free:
        v = [ZERO] * A.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red.entries[r][f]
        vectors.append(tuple(v))
    return Subspace.span(A.cols, vectors)


def image(A: Matrix) -> Subspace:
    """Canonical column space of A."""
    return Subspace.span(A.rows, A.columns())


def sum_spaces(*parts: Subspace) -> Subspace:
    if not parts:
        raise ValueError("sum of no subspaces")
    n = parts[0].ambient_dim
    vectors = []
    for p in parts:
        if p.ambient_dim != n:
            raise AmbientMismatch("subspaces live in different ambient spaces")
        vectors.extend(p.basis_vectors())
    return Subspace.span(n, vectors)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    U._check_ambient(V)
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(U.ambient_dim)
    stacked = U.basis.hstack(-V.basis)
    ker = kernel(stacked)
    vectors = [U.basis.apply(k[: U.dim]) for k in ker.basis_vectors()]
    return Subspace.span(U.ambient_dim, vectors)


def is_direct_sum(parts: Sequence[Subspace]) -> bool:
    """True when the parts sum directly (dims add up to the dim of the sum)."""
    if not parts:
        return True
    total = sum_spaces(*parts)
    return sum(p.dim for p in parts) == total.dim


def check_positive_definite(ip: BilinearForm):
    if not ip.is_symmetric():
        raise NotPositiveDefinite("inner product Gram matrix is not symmetric")
    if any(m <= 0 for m in ip.gram.leading_principal_minors()):
        raise NotPositiveDefinite("a leading principal minor is not positive")


def orth_complement(U: Subspace, W: Subspace, ip: BilinearForm) -> Subspace:
    """ip-orthogonal complement of U inside W (requires U <= W, ip SPD)."""
    U._check_ambient(W)
    if ip.ambient_dim != U.ambient_dim:
        raise AmbientMismatch("form and subspaces live in different spaces")
    check_positive_definite(ip)
    if not U.leq(W):
        raise NotContained("first subspace is not contained in the second")
    if W.dim == 0:
        return Subspace.zero(U.ambient_dim)
    # Solve <u_i, W c>_ip = 0 inside W-coordinates.
    pairing = U.basis.transpose() @ ip.gram @ W.basis
    ker = kernel(pairing)
    vectors = [W.basis.apply(c) for c in ker.basis_vectors()]
    result = Subspace.span(U.ambient_dim, vectors)
    assert is_direct_sum([U, result]) and sum_spaces(U, result) == W
    return result


def gram_on(form: BilinearForm, U: Subspace) -> Matrix:
    """Gram matrix of the form restricted to the canonical basis of U."""
    if form.ambient_dim != U.ambient_dim:
        raise AmbientMismatch("form and subspace live in different spaces")
    return U.basis.transpose() @ form.gram @ U.basis


def restrict_form(form: BilinearForm, U: Subspace) -> BilinearForm:
    return BilinearForm(gram_on(form, U))


def perp_under_form(form: BilinearForm, U: Subspace) -> Subspace:
    """All vectors pairing to zero (on the right) with every vector of U."""
    if form.ambient_dim != U.ambient_dim:
        raise AmbientMismatch("form and subspace live in different spaces")
    # Rows: v -> form(u_i, v) for each basis vector u_i of U.
    rows = U.basis.transpose() @ form.gram
    return kernel(rows)
