"""Brute-force ground truth by vectorisation.

Each matrix equation is rewritten as one linear system in the stacked
unknown entries and solved by exact elimination. ``vec`` stacks rows, so for
X of shape (m, n)::

    vec(A X)   = (A ⊗ I_n)   vec(X)
    vec(X B)   = (I_m ⊗ Bᵀ)  vec(X)
    vec(A Y B) = (A ⊗ Bᵀ)    vec(Y)
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError
from .numeric import Matrix, kron, solve_linear


@dataclass(frozen=True)
class VectorizedSystem:
    coefficient: Matrix
    rhs: Matrix
    unknown_shapes: tuple

    def __post_init__(self):
        size = sum(r * c for r, c in self.unknown_shapes)
        if self.coefficient.cols != size or self.coefficient.rows != self.rhs.rows:
            raise DimensionError("vectorized system does not match its unknown shapes")

    def unpack(self, column):
        out = []
        offset = 0
        for r, c in self.unknown_shapes:
            k = r * c
            out.append(Matrix.from_flat(r, c, [column[offset + i, 0] for i in range(k)], column.mode))
            offset += k
        return tuple(out)


@dataclass(frozen=True)
class OracleResult:
    """``solution`` is a tuple of matrices (one per unknown) or None.

    ``null_basis`` holds homogeneous solutions in the same tuple layout, so
    every ``solution + sum(c_i * null_basis[i])`` is again a solution.
    """

    feasible: bool
    solution: tuple | None
    null_basis: tuple
    system: VectorizedSystem
    rank: int
    augmented_rank: int

    def __bool__(self):
        return self.feasible

    @property
    def x(self):
        return self.solution[0] if self.solution else None

    @property
    def y(self):
        return self.solution[1] if self.solution and len(self.solution) > 1 else None

    def combine(self, coeffs):
        """Particular solution plus the given combination of null vectors."""
        if not self.feasible:
            raise ValueError("infeasible system has no solutions")
        out = list(self.solution)
        for c, vecs in zip(coeffs, self.null_basis):
            out = [o + v * c for o, v in zip(out, vecs)]
        return tuple(out)


def _solve(system, tol=None):
    sol = solve_linear(system.coefficient, system.rhs, tol)
    if not sol.consistent:
        return OracleResult(False, None, (), system, sol.rank, sol.augmented_rank)
    return OracleResult(
        True,
        system.unpack(sol.particular),
        tuple(system.unpack(v) for v in sol.null_basis),
        system,
        sol.rank,
        sol.augmented_rank,
    )


def _shapes(A, B, C):
    if not (A.is_square and B.is_square):
        raise DimensionError("A and B must be square")
    if C.shape != (A.rows, B.rows):
        raise DimensionError(f"C has shape {C.shape}, expected {(A.rows, B.rows)}")
    return A.rows, B.rows


def sylvester_system(A, B, C):
    m, n = _shapes(A, B, C)
    I_m, I_n = Matrix.identity(m, A.mode), Matrix.identity(n, A.mode)
    K = kron(A, I_n) - kron(I_m, B.T)
    return VectorizedSystem(K, C.vec(), ((m, n),))


def two_sided_system(A, B, C):
    m, n = _shapes(A, B, C)
    I_m, I_n = Matrix.identity(m, A.mode), Matrix.identity(n, A.mode)
    K = kron(A, I_n).hstack(-kron(I_m, B.T))
    return VectorizedSystem(K, C.vec(), ((m, n), (m, n)))


def stein_system(A, B, C):
    m, n = _shapes(A, B, C)
    K = kron(A, B.T) - Matrix.identity(m * n, A.mode)
    return VectorizedSystem(K, C.vec(), ((m, n),))


def oracle_sylvester(A, B, C, tol=None):
    """Solve ``A X - X B = C``."""
    return _solve(sylvester_system(A, B, C), tol)


def oracle_two_sided(A, B, C, tol=None):
    """Solve ``A X - Y B = C`` for the pair (X, Y)."""
    return _solve(two_sided_system(A, B, C), tol)


def oracle_stein(A, B, C, tol=None):
    """Solve ``A Y B - Y = C``."""
    return _solve(stein_system(A, B, C), tol)
