"""The continuous Lyapunov equation M Sigma + Sigma M^T + C = 0 and its linearizations.

Given a stable drift matrix M supported on a graph and a positive definite
volatility matrix C, the equation has a unique positive definite solution
Sigma; solving for Sigma is a p^2 x p^2 linear system in vec(Sigma).
Solving the *inverse* problem -- recovering M from (Sigma, C) subject to the
sparsity pattern -- is a linear system in vec(M) whose coefficient matrix we
call A(Sigma); its kernel is spanned by the columns of H(Sigma).  This
module builds both matrices, computes solution fibers exactly, and samples
random stable drift matrices for generic rank tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import _intkernel
from .graphs import DiGraph, Edge
from .linalg import (
    RatMatrix,
    SolutionSet,
    commutation_matrix,
    is_positive_definite,
    is_stable,
    kron,
    solve_linear,
    sym_pairs,
    vech,
)

UNIQUE = "unique"
AFFINE = "affine"
INCONSISTENT = "inconsistent"


class NotStableError(ValueError):
    """The drift matrix has an eigenvalue with non-negative real part."""


class SingularSumError(ValueError):
    """Two eigenvalues of the drift matrix sum to zero; vec system singular."""


@dataclass(frozen=True)
class DriftMatrix:
    """A drift matrix together with the graph carrying its support.

    Entry ``m_ji`` belongs to edge ``i -> j``; the support condition
    (``m_ji = 0`` whenever ``i -> j`` is not an edge) is enforced on
    construction, and stability is decided exactly and cached.
    """

    graph: DiGraph
    matrix: RatMatrix
    stable: bool = field(init=False)

    def __post_init__(self):
        p = self.graph.p
        if self.matrix.shape != (p, p):
            raise ValueError(f"drift matrix must be {p}x{p}")
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                if (i, j) not in self.graph.edges and self.matrix[j - 1, i - 1] != 0:
                    raise ValueError(
                        f"entry m[{j},{i}] nonzero but edge {i}->{j} is absent"
                    )
        object.__setattr__(self, "stable", is_stable(self.matrix))

    @classmethod
    def from_matrix(cls, matrix: RatMatrix) -> "DriftMatrix":
        """Wrap a square matrix, inferring the support graph from its zeros."""
        if not matrix.is_square:
            raise ValueError("drift matrix must be square")
        p = matrix.rows
        edges = {
            (i, j)
            for i in range(1, p + 1)
            for j in range(1, p + 1)
            if i == j or matrix[j - 1, i - 1] != 0
        }
        return cls(DiGraph(p, frozenset(edges)), matrix)


@dataclass(frozen=True)
class VolatilityMatrix:
    """A symmetric positive definite volatility matrix, diagonality recorded."""

    matrix: RatMatrix
    diagonal: bool = field(init=False)

    def __post_init__(self):
        if not is_positive_definite(self.matrix):
            raise ValueError("volatility matrix must be symmetric positive definite")
        n = self.matrix.rows
        diag = all(
            self.matrix[i, j] == 0 for i in range(n) for j in range(n) if i != j
        )
        object.__setattr__(self, "diagonal", diag)

    @classmethod
    def identity(cls, p: int) -> "VolatilityMatrix":
        return cls(RatMatrix.identity(p))

    @property
    def p(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class CovMatrix:
    """A symmetric positive definite covariance matrix."""

    matrix: RatMatrix

    def __post_init__(self):
        if not is_positive_definite(self.matrix):
            raise ValueError("covariance matrix must be symmetric positive definite")

    @property
    def p(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class FiberResult:
    """Exact solution set of the edge-restricted drift recovery system.

    Coordinates of ``particular`` and of the columns of ``kernel_basis``
    follow ``edges`` (the graph's lexicographic edge order).
    """

    kind: str
    edges: tuple[Edge, ...]
    drift: DriftMatrix | None = None
    particular: RatMatrix | None = None
    kernel_basis: RatMatrix | None = None

    @property
    def dim(self) -> int:
        if self.kind == INCONSISTENT:
            return -1
        return 0 if self.kind == UNIQUE else self.kernel_basis.cols

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "edges": [list(e) for e in self.edges]}
        if self.kind == UNIQUE:
            out["drift"] = [[str(x) for x in self.drift.matrix.row(i)]
                            for i in range(self.drift.matrix.rows)]
            out["dim"] = 0
        elif self.kind == AFFINE:
            out["particular"] = [str(x) for x in self.particular.col(0)]
            out["kernel_basis"] = [
                [str(x) for x in self.kernel_basis.col(j)]
                for j in range(self.kernel_basis.cols)
            ]
            out["dim"] = self.dim
        return out


# ---------------------------------------------------------------------------
# Solving for Sigma
# ---------------------------------------------------------------------------


def kronecker_sum(m: RatMatrix) -> RatMatrix:
    """I_p (x) M + M (x) I_p, the coefficient matrix of vec(Sigma)."""
    p = m.rows
    eye = RatMatrix.identity(p)
    return kron(eye, m) + kron(m, eye)


def _kron_sum_int_rows(m_rows: list[list[int]], p: int) -> list[list[int]]:
    """Integer rows of I (x) M + M (x) I for integer M (vec ordering)."""
    n = p * p
    rows = [[0] * n for _ in range(n)]
    for c in range(p):
        base = c * p
        for r in range(p):
            row = rows[base + r]
            for r2 in range(p):
                row[base + r2] += m_rows[r][r2]
            for c2 in range(p):
                rows[base + r][c2 * p + r] += m_rows[c][c2]
    return rows


def _solve_sigma_scaled(m_rows: list[list[int]], c_rows: list[list[int]], p: int):
    """Exact Sigma for integer (M, C): returns (numerators N, denominator D).

    Sigma = N / D with N an integer p x p matrix.  Raises ValueError when
    the Kronecker sum is singular (two eigenvalues of M summing to zero).
    """
    system = _kron_sum_int_rows(m_rows, p)
    rhs = [-c_rows[r][c] for c in range(p) for r in range(p)]  # -vec(C)
    x = _intkernel.solve_square_int(system, rhs)
    nums, den = _intkernel.common_denominator(x)
    n_mat = [[nums[c * p + r] for c in range(p)] for r in range(p)]
    if den < 0:  # keep the denominator positive
        den = -den
        n_mat = [[-v for v in row] for row in n_mat]
    return n_mat, den


def _matrix_to_int_rows(m: RatMatrix) -> tuple[list[list[int]], int]:
    """Clear denominators globally: returns (integer rows, positive scale)."""
    flat = list(m.entries)
    nums, den = _intkernel.common_denominator(flat)
    rows = [nums[i * m.cols : (i + 1) * m.cols] for i in range(m.rows)]
    return rows, den


def solve_for_sigma(drift: DriftMatrix, vol: VolatilityMatrix) -> CovMatrix:
    """The unique positive definite Sigma with M Sigma + Sigma M^T + C = 0.

    Raises:
        NotStableError: if the drift matrix is not stable.
        SingularSumError: if the vectorized system is singular (cannot
            happen for stable drift matrices).
    """
    if not drift.stable:
        raise NotStableError("drift matrix is not stable")
    m, c = drift.matrix, vol.matrix
    p = m.rows
    if c.rows != p:
        raise ValueError("drift and volatility dimensions differ")
    m_rows, alpha = _matrix_to_int_rows(m)
    c_rows, gamma = _matrix_to_int_rows(c)
    try:
        # Sigma(alpha M, gamma C) = (gamma / alpha) Sigma(M, C).
        n_mat, den = _solve_sigma_scaled(m_rows, c_rows, p)
    except ValueError as exc:
        raise SingularSumError("two eigenvalues of M sum to zero") from exc
    scale = Fraction(alpha, den * gamma)
    sigma = RatMatrix(p, p, [n_mat[r][c2] * scale for r in range(p) for c2 in range(p)])
    return CovMatrix(sigma)


# ---------------------------------------------------------------------------
# The coefficient matrix A(Sigma) and kernel basis H(Sigma)
# ---------------------------------------------------------------------------


def _unwrap(sigma) -> RatMatrix:
    return sigma.matrix if isinstance(sigma, CovMatrix) else sigma


def build_A(sigma) -> RatMatrix:
    """The p(p+1)/2 x p^2 coefficient matrix of the half-vectorized equation.

    Rows are indexed by pairs (k, l), k <= l, lexicographically; columns by
    potential edges i -> j in vec order.  The entry in row (k, l) and
    column i -> j is 0 unless j is k or l; it is Sigma_li if j = k != l,
    Sigma_ki if j = l != k, and 2 Sigma_ji if j = k = l.
    """
    s = _unwrap(sigma)
    if not s.is_symmetric():
        raise ValueError("A(Sigma) requires a symmetric Sigma")
    p = s.rows
    out = []
    for (k, l) in sym_pairs(p):
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                if j != k and j != l:
                    out.append(Fraction(0))
                elif j == k and k != l:
                    out.append(s[l - 1, i - 1])
                elif j == l and l != k:
                    out.append(s[k - 1, i - 1])
                else:
                    out.append(2 * s[j - 1, i - 1])
    return RatMatrix(p * (p + 1) // 2, p * p, out)


def build_A_product(sigma) -> RatMatrix:
    """A(Sigma) from the product form: the k <= l rows of atilde(Sigma).

    Cross-validates :func:`build_A`; the two constructions agree entrywise.
    """
    s = _unwrap(sigma)
    p = s.rows
    full = atilde(s)
    rows = [(l - 1) * p + (k - 1) for (k, l) in sym_pairs(p)]
    return full.select_rows(rows)


def atilde(sigma) -> RatMatrix:
    """The square p^2 x p^2 form Sigma (x) I + (I (x) Sigma) K_p."""
    s = _unwrap(sigma)
    p = s.rows
    eye = RatMatrix.identity(p)
    return kron(s, eye) + kron(eye, s) @ commutation_matrix(p)


def _build_A_int(n_rows: list[list[int]], p: int, edges: list[Edge]) -> list[list[int]]:
    """Integer A(Sigma) restricted to ``edges`` (Sigma given by numerators)."""
    out = []
    for (k, l) in sym_pairs(p):
        row = []
        for (i, j) in edges:
            if j != k and j != l:
                row.append(0)
            elif j == k and k != l:
                row.append(n_rows[l - 1][i - 1])
            elif j == l and l != k:
                row.append(n_rows[k - 1][i - 1])
            else:
                row.append(2 * n_rows[j - 1][i - 1])
        out.append(row)
    return out


def restrict_A(a: RatMatrix, g: DiGraph) -> RatMatrix:
    """Columns of A(Sigma) for the edges of ``g``, in lexicographic edge order."""
    p = g.p
    if a.cols != p * p:
        raise ValueError(f"expected {p * p} columns, got {a.cols}")
    cols = [(i - 1) * p + (j - 1) for (i, j) in g.edge_index()]
    return a.select_columns(cols)


def skew_basis_pairs(p: int) -> list[tuple[int, int]]:
    """Column index pairs (k, l), k < l, of the kernel basis H(Sigma)."""
    return [(k, l) for k in range(1, p + 1) for l in range(k + 1, p + 1)]


def build_H(sigma) -> RatMatrix:
    """The p^2 x p(p-1)/2 kernel basis of A(Sigma).

    Column (k, l), k < l, is vec(Sigma K) for the skew-symmetric K with +1
    in place (k, l) and -1 in place (l, k); rows follow the vec order of
    potential edges i -> j.  For invertible Sigma the columns form a basis
    of the kernel of A(Sigma).
    """
    s = _unwrap(sigma)
    if not s.is_symmetric():
        raise ValueError("H(Sigma) requires a symmetric Sigma")
    p = s.rows
    out = []
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for (k, l) in skew_basis_pairs(p):
                if i == k:
                    out.append(-s[l - 1, j - 1])
                elif i == l:
                    out.append(s[k - 1, j - 1])
                else:
                    out.append(Fraction(0))
    return RatMatrix(p * p, p * (p - 1) // 2, out)


def _build_H_int(n_rows: list[list[int]], p: int, non_edges: list[Edge]) -> list[list[int]]:
    """Integer H(Sigma) restricted to ``non_edges`` rows."""
    pairs = skew_basis_pairs(p)
    out = []
    for (i, j) in non_edges:
        row = []
        for (k, l) in pairs:
            if i == k:
                row.append(-n_rows[l - 1][j - 1])
            elif i == l:
                row.append(n_rows[k - 1][j - 1])
            else:
                row.append(0)
        out.append(row)
    return out


def restrict_H(h: RatMatrix, g: DiGraph) -> RatMatrix:
    """Rows of H(Sigma) for the non-edges of ``g``, in lexicographic order."""
    p = g.p
    if h.rows != p * p:
        raise ValueError(f"expected {p * p} rows, got {h.rows}")
    rows = [(i - 1) * p + (j - 1) for (i, j) in g.non_edges()]
    return h.select_rows(rows)


# ---------------------------------------------------------------------------
# Fibers and the skew-symmetric parametrization
# ---------------------------------------------------------------------------


def fiber(sigma: CovMatrix, g: DiGraph, vol: VolatilityMatrix) -> FiberResult:
    """Exact solution set of the restricted system A(Sigma)_E vec(M)_E = -vech(C).

    Unique exactly when the restriction has full column rank; an affine
    result carries an explicit kernel basis, making non-uniqueness a
    checkable artifact.
    """
    edges = tuple(g.edge_index())
    a_res = restrict_A(build_A(sigma), g)
    rhs = -vech(vol.matrix)
    sol: SolutionSet = solve_linear(a_res, rhs)
    if sol.kind == "inconsistent":
        return FiberResult(INCONSISTENT, edges)
    if sol.kind == "unique":
        return FiberResult(
            UNIQUE, edges, drift=DriftMatrix(g, _edge_vector_to_matrix(sol.particular, g))
        )
    return FiberResult(AFFINE, edges, particular=sol.particular, kernel_basis=sol.kernel)


def _edge_vector_to_matrix(x: RatMatrix, g: DiGraph) -> RatMatrix:
    p = g.p
    ent = [Fraction(0)] * (p * p)
    for pos, (i, j) in enumerate(g.edge_index()):
        ent[(j - 1) * p + (i - 1)] = x[pos, 0]
    return RatMatrix(p, p, ent)


def skew_to_drift(k: RatMatrix, sigma: CovMatrix, vol: VolatilityMatrix) -> RatMatrix:
    """The Lyapunov solution M = (K - C/2) Sigma^{-1} for skew-symmetric K.

    Raises:
        ValueError: if ``k`` is not skew-symmetric.
    """
    if k.transpose() != -k:
        raise ValueError("K must be skew-symmetric")
    from .linalg import inverse

    return (k - vol.matrix.scale(Fraction(1, 2))) @ inverse(sigma.matrix)


def sample_stable_drift(g: DiGraph, rng_seed, bound: int = 2**20) -> DriftMatrix:
    """A random integer drift matrix supported on ``g``, stable by construction.

    Off-diagonal entries are uniform integers in [-bound, bound]; each
    diagonal entry is -(row absolute sum + 1 + uniform in [0, bound]), so
    strict diagonal dominance puts every Gershgorin disc in the open left
    half-plane.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    p = g.p
    ent = [[0] * p for _ in range(p)]
    for (i, j) in g.edge_index():
        if i != j:
            ent[j - 1][i - 1] = rng.randint(-bound, bound)
    for i in range(p):
        row_sum = sum(abs(v) for jj, v in enumerate(ent[i]) if jj != i)
        ent[i][i] = -(row_sum + 1 + rng.randint(0, bound))
    matrix = RatMatrix(p, p, [x for row in ent for x in row])
    return DriftMatrix(g, matrix)
