"""The Stein equation ``A Y B - Y = C``.

Substituting ``X = Y B`` turns it into the shifted two-unknown equation
``(A + I) X - Y (B + I) = C``. The converse direction does not hold in
general: the shifted equation has solutions with ``X != Y B``. So the
solver searches the shifted equation's general solution for parameters
that satisfy the coupling, and reports the shifted-equation criterion and
the brute-force verdict side by side.

The scalar case ``A = B = C = [1]`` shows the gap: ``A + I = B + I = [2]``
are invertible so the criterion holds, yet ``y - y = 1`` has no solution.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle
from .errors import DimensionError, HypothesisViolated, InternalInconsistency
from .geninv import group_inverse
from .numeric import Matrix, same, solve_linear
from .twosided import EquivalenceCertificate, candidate_certificate, solve_two_sided


@dataclass(frozen=True)
class SteinReport:
    criterion_holds: bool
    certificate: EquivalenceCertificate
    coupled_solution: Matrix | None
    oracle_solution: Matrix | None
    verdicts_agree: bool

    @property
    def oracle_feasible(self):
        return self.oracle_solution is not None

    @property
    def coupled_feasible(self):
        return self.coupled_solution is not None


def stein_residual(A, B, C, Y):
    return A @ Y @ B - Y - C


def _shifted(A, B, C, tol):
    if not (A.is_square and B.is_square):
        raise DimensionError("A and B must be square")
    if C.shape != (A.rows, B.rows):
        raise DimensionError(f"C has shape {C.shape}, expected {(A.rows, B.rows)}")
    A1 = A + Matrix.identity(A.rows, A.mode)
    B1 = B + Matrix.identity(B.rows, B.mode)
    for name, S in (("A+I", A1), ("B+I", B1)):
        if not group_inverse(S, tol).exists:
            raise HypothesisViolated(f"{name} is not group invertible (index > 1)")
    return A1, B1


def check_stein_criterion(A, B, C, tol=None):
    """``((A+I)^π C (B+I)^π == 0, certificate for the shifted pair)``.

    The boolean and the certificate's validity must coincide; a mismatch
    raises :class:`InternalInconsistency`.
    """
    A1, B1 = _shifted(A, B, C, tol)
    ga, gb = group_inverse(A1, tol), group_inverse(B1, tol)
    holds = (ga.a_pi @ C @ gb.a_pi).is_zero(tol)
    cert = candidate_certificate(A1, B1, C, tol)
    if cert.valid != holds:
        raise InternalInconsistency("criterion and certificate disagree for the shifted pair")
    return holds, cert


def coupled_search(A, B, C, tol=None):
    """Find Y solving the Stein equation inside the shifted general solution.

    The map ``(Z, Z1) -> X(Z, Z1) - Y(Z) B`` is affine; its coefficient
    columns are read off by evaluating at unit matrices, and the coupling
    ``X = Y B`` is then solved exactly. Returns None if infeasible or if the
    shifted equation is itself unsolvable.
    """
    A1, B1 = _shifted(A, B, C, tol)
    fam = solve_two_sided(A1, B1, C, tol)
    if fam is None:
        return None
    m, n = C.shape
    mode = C.mode
    zero = Matrix.zeros(m, n, mode)

    def coupling(Z, Z1):
        X, Y = fam.evaluate(Z, Z1)
        return X - Y @ B

    base = coupling(zero, zero)
    columns = []
    for which in (0, 1):
        for k in range(m * n):
            E = Matrix.from_flat(m, n, [1 if i == k else 0 for i in range(m * n)], mode)
            Z, Z1 = (E, zero) if which == 0 else (zero, E)
            columns.append((coupling(Z, Z1) - base).vec())
    L = columns[0].hstack(*columns[1:])
    sol = solve_linear(L, -base.vec(), tol)
    if not sol.consistent:
        return None
    p = sol.particular
    Z = Matrix.from_flat(m, n, [p[i, 0] for i in range(m * n)], mode)
    Z1 = Matrix.from_flat(m, n, [p[m * n + i, 0] for i in range(m * n)], mode)
    X, Y = fam.evaluate(Z, Z1)
    if not same(X, Y @ B, tol):
        raise InternalInconsistency("coupling X = Y B not met by the solved parameters")
    return Y


def solve_stein(A, B, C, tol=None):
    """Criterion, coupled solution and oracle verdict for ``A Y B - Y = C``."""
    holds, cert = check_stein_criterion(A, B, C, tol)
    Y = coupled_search(A, B, C, tol) if holds else None
    if Y is not None and not stein_residual(A, B, C, Y).is_zero(tol):
        raise InternalInconsistency("coupled Y has nonzero Stein residual")
    found = oracle.oracle_stein(A, B, C, tol)
    Y_oracle = found.x if found else None
    if Y_oracle is not None and not stein_residual(A, B, C, Y_oracle).is_zero(tol):
        raise InternalInconsistency("oracle Y has nonzero Stein residual")
    return SteinReport(holds, cert, Y, Y_oracle, holds == found.feasible)
