"""Exact rational scalars, dense matrices, and the linear-algebra kernel.

Every certificate produced by this package ultimately rests on a rank, a
determinant, or a linear solve computed here.  All of it is exact: scalars
are arbitrary-precision rationals (``fractions.Fraction``), elimination is
fraction-free (Bareiss) on integer-scaled rows, and stability of a matrix is
decided by the Hurwitz criterion on its exact characteristic polynomial.
Floating point never feeds a verdict.

Matrices are dense, row-major and immutable after construction; sizes in
this package stay tiny (at most ``p*p = 25`` columns for ``p = 5`` nodes),
so clarity wins over asymptotics everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

# The exact scalar type: always reduced, positive denominator.
Rational = Fraction

UNIQUE = "unique"
AFFINE = "affine"
INCONSISTENT = "inconsistent"


def rat(value) -> Rational:
    """Coerce an int, string ("3/7", "-2") or Fraction to a Rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class RatMatrix:
    """Dense matrix of exact rationals, immutable after construction.

    Attributes:
        rows: Number of rows.
        cols: Number of columns.
        entries: Row-major tuple of ``Fraction`` values, length rows*cols.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        data = tuple(rat(x) for x in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        """Build a matrix from a sequence of row sequences."""
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return cls(nr, nc, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        ent = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            ent[i * n + i] = rat(v)
        return cls(n, n, ent)

    @classmethod
    def column(cls, values: Sequence) -> "RatMatrix":
        """Column vector from a flat sequence."""
        return cls(len(values), 1, list(values))

    # -- access ------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> Rational:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Rational, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[Rational, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Rational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def flat(self) -> tuple[Rational, ...]:
        return self.entries

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        n = self.rows
        return all(
            self.entries[i * n + j] == self.entries[j * n + i]
            for i in range(n)
            for j in range(i + 1, n)
        )

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                out.append(sum(arow[t] * b[t * m + j] for t in range(k)))
        return RatMatrix(n, m, out)

    def scale(self, factor) -> "RatMatrix":
        f = rat(factor)
        return RatMatrix(self.rows, self.cols, [f * a for a in self.entries])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def trace(self) -> Rational:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        n = self.rows
        return sum((self.entries[i * n + i] for i in range(n)), Fraction(0))

    def select_columns(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix(
            self.rows,
            len(indices),
            [self.entries[i * self.cols + j] for i in range(self.rows) for j in indices],
        )

    def select_rows(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix(
            len(indices),
            self.cols,
            [self.entries[i * self.cols + j] for i in indices for j in range(self.cols)],
        )

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return RatMatrix(self.rows, self.cols + other.cols, out)

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in self.row(i)] for i in range(self.rows)]

    def _same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with exact rational coefficients, ascending degree.

    The coefficient tuple carries no trailing zeros, so the leading
    coefficient is nonzero unless this is the zero polynomial.
    """

    coefficients: tuple[Rational, ...]

    def __init__(self, coefficients: Iterable):
        coeffs = [rat(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coefficients) - 1

    def __call__(self, x) -> Rational:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * rat(x) + c
        return acc

    def coefficient(self, k: int) -> Rational:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)


@dataclass(frozen=True)
class SolutionSet:
    """Exact solution set of a linear system ``a x = b``.

    kind is one of ``"unique"``, ``"affine"``, ``"inconsistent"``.  For a
    unique solution ``particular`` holds it; an affine set additionally
    carries a ``kernel`` whose columns form a basis of the homogeneous
    solutions.  ``dim`` is the dimension of the solution set (0 for unique,
    -1 when inconsistent).
    """

    kind: str
    particular: RatMatrix | None = None
    kernel: RatMatrix | None = None

    @property
    def dim(self) -> int:
        if self.kind == INCONSISTENT:
            return -1
        return 0 if self.kind == UNIQUE else self.kernel.cols


# ---------------------------------------------------------------------------
# Structured constructions
# ---------------------------------------------------------------------------


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product, shape (a.rows*b.rows) x (a.cols*b.cols)."""
    out = []
    for i in range(a.rows):
        for r in range(b.rows):
            brow = b.row(r)
            for j in range(a.cols):
                aij = a[i, j]
                out.extend(aij * x for x in brow)
    return RatMatrix(a.rows * b.rows, a.cols * b.cols, out)


def vec(m: RatMatrix) -> RatMatrix:
    """Columnwise vectorization as a column vector.

    Position ``c*rows + r`` (0-based) holds entry ``m[r, c]``; for a p x p
    drift matrix this places entry ``m_ji`` (edge i -> j) at 0-based
    position ``(i-1)*p + (j-1)``.
    """
    return RatMatrix.column([m[r, c] for c in range(m.cols) for r in range(m.rows)])


def unvec(v: RatMatrix, rows: int, cols: int) -> RatMatrix:
    """Inverse of :func:`vec` for a column vector of length rows*cols."""
    if v.cols != 1 or v.rows != rows * cols:
        raise ValueError("unvec expects a column vector of matching length")
    return RatMatrix(
        rows, cols, [v[c * rows + r, 0] for r in range(rows) for c in range(cols)]
    )


def vech(s: RatMatrix) -> RatMatrix:
    """Half-vectorization (upper triangle, rows (k,l) with k <= l, lexicographic).

    Raises:
        ValueError: if ``s`` is not symmetric.
    """
    if not s.is_symmetric():
        raise ValueError("vech requires a symmetric matrix")
    n = s.rows
    return RatMatrix.column([s[k, l] for k in range(n) for l in range(k, n)])


def sym_pairs(p: int) -> list[tuple[int, int]]:
    """The vech index pairs (k, l), k <= l, 1-based, lexicographic."""
    return [(k, l) for k in range(1, p + 1) for l in range(k, p + 1)]


def commutation_matrix(p: int) -> RatMatrix:
    """The p^2 x p^2 permutation K_p with K_p vec(M) = vec(M^T)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    n = p * p
    ent = [Fraction(0)] * (n * n)
    for r in range(p):
        for c in range(p):
            # vec(M^T) position of M[r, c] is r*p + c; vec(M) position is c*p + r.
            ent[(r * p + c) * n + (c * p + r)] = Fraction(1)
    return RatMatrix(n, n, ent)


# ---------------------------------------------------------------------------
# Fraction-free elimination core
# ---------------------------------------------------------------------------


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank/solve invariant)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        scale = 1
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_forward(rows: list[list[int]], limit_cols: int | None = None):
    """In-place fraction-free elimination (Bareiss).

    Returns (pivot_cols, sign) where pivot_cols are the columns in which
    pivots were found, in order.  Rows beyond the pivot rows end up zero in
    the first ``limit_cols`` columns.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    stop = nc if limit_cols is None else limit_cols
    prev = 1
    sign = 1
    pivot_cols: list[int] = []
    r = 0
    for c in range(stop):
        piv = None
        for i in range(r, nr):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pc = rows[r][c]
        for i in range(r + 1, nr):
            ric = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c, nc):
                ri[j] = (pc * ri[j] - ric * rr[j]) // prev
        prev = pc
        pivot_cols.append(c)
        r += 1
        if r == nr:
            break
    return pivot_cols, sign


def rank(m: RatMatrix) -> int:
    """Exact rank over the rationals via fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = _integer_rows(m)
    pivot_cols, _ = _bareiss_forward(rows)
    return len(pivot_cols)


def det(m: RatMatrix) -> Rational:
    """Exact determinant (Bareiss fraction-free elimination).

    Raises:
        ValueError: if ``m`` is not square.
    """
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows = []
    denom = Fraction(1)
    for i in range(n):
        row = m.row(i)
        scale = 1
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        denom *= scale
        rows.append([int(x * scale) for x in row])
    pivot_cols, sign = _bareiss_forward(rows)
    if len(pivot_cols) < n:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1]) / denom


def solve_linear(a: RatMatrix, b: RatMatrix) -> SolutionSet:
    """Exact solution set of ``a x = b`` for a column vector ``b``.

    Returns a unique solution, an affine set (particular solution plus a
    kernel basis), or reports inconsistency.
    """
    if b.cols != 1:
        raise ValueError("right-hand side must be a column vector")
    if a.rows != b.rows:
        raise ValueError("row count mismatch between matrix and right-hand side")
    nr, nc = a.rows, a.cols
    # Reduced row echelon form of the augmented system, exact.
    aug = [list(a.row(i)) + [b[i, 0]] for i in range(nr)]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if aug[i][nc]:
            return SolutionSet(INCONSISTENT)
    particular = [Fraction(0)] * nc
    for k, c in enumerate(pivots):
        particular[c] = aug[k][nc]
    x0 = RatMatrix.column(particular)
    free = [c for c in range(nc) if c not in set(pivots)]
    if not free:
        return SolutionSet(UNIQUE, particular=x0)
    basis_cols = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -aug[k][f]
        basis_cols.append(v)
    kernel = RatMatrix(nc, len(free), [col[i] for i in range(nc) for col in basis_cols])
    return SolutionSet(AFFINE, particular=x0, kernel=kernel)


def solve_unique(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Solve a square nonsingular system, raising on anything else."""
    sol = solve_linear(a, b)
    if sol.kind != UNIQUE:
        raise ValueError(f"system is {sol.kind}, not uniquely solvable")
    return sol.particular


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a nonsingular square matrix."""
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    cols = [solve_unique(m, RatMatrix.column([Fraction(int(i == j)) for i in range(n)]))
            for j in range(n)]
    return RatMatrix(n, n, [cols[j][i, 0] for i in range(n) for j in range(n)])


# ---------------------------------------------------------------------------
# Characteristic polynomial and stability
# ---------------------------------------------------------------------------


def char_poly(m: RatMatrix) -> Polynomial:
    """Characteristic polynomial det(tI - M) via Faddeev-LeVerrier.

    Raises:
        ValueError: if ``m`` is not square.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(1)]  # c_0 = 1 for t^n
    aux = RatMatrix.identity(n)
    for k in range(1, n + 1):
        prod = m @ aux
        ck = -prod.trace() / k
        coeffs.append(ck)
        if k < n:
            aux = prod + RatMatrix.identity(n).scale(ck)
    # coeffs is [1, c_1, ..., c_n] for t^n + c_1 t^{n-1} + ... + c_n.
    return Polynomial(list(reversed(coeffs)))


def hurwitz_matrix(poly: Polynomial) -> RatMatrix:
    """The n x n Hurwitz matrix of a degree-n polynomial."""
    n = poly.degree
    if n < 1:
        raise ValueError("Hurwitz matrix needs degree >= 1")
    # a_k is the coefficient of t^(n-k).
    a = [poly.coefficient(n - k) for k in range(n + 1)]

    def entry(i: int, j: int) -> Rational:
        k = 2 * j - i  # 1-based index into a
        return a[k] if 0 <= k <= n else Fraction(0)

    return RatMatrix(n, n, [entry(i, j) for i in range(1, n + 1) for j in range(1, n + 1)])


def is_stable(m: RatMatrix) -> bool:
    """Exact test that every eigenvalue of ``m`` has negative real part.

    Decided by the Routh-Hurwitz criterion in its determinant form: with the
    characteristic polynomial normalized to positive leading coefficient,
    the matrix is stable iff all leading principal minors of the Hurwitz
    matrix are positive.  This form needs no pivoting and has no singular
    special cases; any non-positive minor certifies instability.
    """
    if not m.is_square:
        raise ValueError("stability of a non-square matrix")
    n = m.rows
    if n == 0:
        return True
    poly = char_poly(m)  # monic, so the leading coefficient is positive
    coeffs = [poly.coefficient(n - k) for k in range(n + 1)]
    # All coefficients positive is necessary; cheap early reject.
    if any(c <= 0 for c in coeffs):
        return False
    h = hurwitz_matrix(poly)
    for k in range(1, n + 1):
        idx = list(range(k))
        if det(h.select_rows(idx).select_columns(idx)) <= 0:
            return False
    return True


def is_positive_definite(s: RatMatrix) -> bool:
    """Exact positive-definiteness via leading principal minors.

    Raises:
        ValueError: if ``s`` is not symmetric.
    """
    if not s.is_symmetric():
        raise ValueError("positive definiteness requires a symmetric matrix")
    for k in range(1, s.rows + 1):
        idx = list(range(k))
        if det(s.select_rows(idx).select_columns(idx)) <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Rational CSV matrix format
# ---------------------------------------------------------------------------


def parse_matrix_csv(text: str) -> RatMatrix:
    """Parse the exact CSV matrix format: one row per line, cells "n" or "n/d".

    Raises:
        ValueError: on empty input, ragged rows, or unparsable cells.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = []
        for cell in line.split(","):
            token = cell.strip()
            try:
                cells.append(Fraction(token))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"line {lineno}: bad rational literal {token!r}") from exc
        rows.append(cells)
    if not rows:
        raise ValueError("empty matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged rows in matrix CSV")
    return RatMatrix.from_rows(rows)


def format_matrix_csv(m: RatMatrix) -> str:
    """Render a matrix in the exact CSV format (lossless round trip)."""
    return "\n".join(",".join(str(x) for x in m.row(i)) for i in range(m.rows))
