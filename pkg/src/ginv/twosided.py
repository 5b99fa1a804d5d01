"""The two-unknown equation ``A X - Y B = C``.

For group-invertible A and B the following agree: M is group invertible;
``A^π C B^π = 0``; the equation has a solution; D and M admit a
pseudo-equivalence certificate whose operator ``U = D Q P D D# + I - D D#``
is invertible. All solutions are then::

    X = A# C + A# Z B + A^π Z1
    Y = -A^π C B# + Z + A A# Z B B# - Z B B#
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivalence import PseudoEquivalenceWitness, Verification, verify_pseudo_equivalent
from .errors import DimensionError, InternalInconsistency, NotASolution
from .geninv import GroupInverseResult, block_triangular_group_invertible, require_group_inverse
from .numeric import Matrix, block, block_diag, is_invertible, same, upper_triangular


def _check_shapes(A, B, C):
    if not (A.is_square and B.is_square):
        raise DimensionError("A and B must be square")
    if C.shape != (A.rows, B.rows):
        raise DimensionError(f"C has shape {C.shape}, expected {(A.rows, B.rows)}")


def two_sided_residual(A, B, C, X, Y):
    return A @ X - Y @ B - C


@dataclass(frozen=True)
class TwoSidedSolutionFamily:
    """Particular solution ``(x0, y0)`` and an evaluator for the general one."""

    a: Matrix
    b: Matrix
    c: Matrix
    ga: GroupInverseResult
    gb: GroupInverseResult
    x0: Matrix
    y0: Matrix
    tol: float | None = None

    def evaluate(self, Z, Z1):
        """``(X, Y)`` at free parameters Z, Z1; the residual is checked."""
        if Z.shape != self.c.shape or Z1.shape != self.c.shape:
            raise DimensionError(f"Z and Z1 must have shape {self.c.shape}")
        A, B, C = self.a, self.b, self.c
        As, Ap = self.ga.a_sharp, self.ga.a_pi
        Bs = self.gb.a_sharp
        ZBB = Z @ B @ Bs
        X = As @ C + As @ Z @ B + Ap @ Z1
        Y = -(Ap @ C @ Bs) + Z + A @ As @ ZBB - ZBB
        if not two_sided_residual(A, B, C, X, Y).is_zero(self.tol):
            raise InternalInconsistency("general solution has nonzero residual")
        return X, Y


@dataclass(frozen=True)
class EquivalenceCertificate:
    witness: PseudoEquivalenceWitness
    u: Matrix
    u_invertible: bool
    verification: Verification

    @property
    def valid(self):
        return self.verification.ok and self.u_invertible


def check_two_sided_solvable(A, B, C, tol=None):
    """``A^π C B^π == 0``."""
    _check_shapes(A, B, C)
    return block_triangular_group_invertible(A, B, C, tol)


def solve_two_sided(A, B, C, tol=None):
    """Solution family, or None when the equation has no solution."""
    _check_shapes(A, B, C)
    ga = require_group_inverse(A, "A", tol)
    gb = require_group_inverse(B, "B", tol)
    if not (ga.a_pi @ C @ gb.a_pi).is_zero(tol):
        return None
    x0 = ga.a_sharp @ C
    y0 = (A @ ga.a_sharp - Matrix.identity(A.rows, A.mode)) @ C @ gb.a_sharp
    if not two_sided_residual(A, B, C, x0, y0).is_zero(tol):
        raise InternalInconsistency("particular solution has nonzero residual")
    fam = TwoSidedSolutionFamily(A, B, C, ga, gb, x0, y0, tol)
    zero = Matrix.zeros(*C.shape, mode=C.mode)
    fam.evaluate(zero, zero)
    return fam


def parameters_for_solution(A, B, C, X, Y, tol=None):
    """Free parameters ``(Z, Z1) = (Y, X)`` that reproduce a given solution."""
    _check_shapes(A, B, C)
    res = two_sided_residual(A, B, C, X, Y)
    if not res.is_zero(tol):
        raise NotASolution("(X, Y) does not satisfy A X - Y B = C", residual=res)
    fam = solve_two_sided(A, B, C, tol)
    Xr, Yr = fam.evaluate(Y, X)
    if not (same(Xr, X, tol) and same(Yr, Y, tol)):
        raise InternalInconsistency("parameters (Y, X) did not reproduce the solution")
    return Y, X


def candidate_certificate(A, B, C, tol=None):
    """Build the certificate matrices without assuming solvability.

    The result's ``verification`` and ``u_invertible`` decide whether it
    actually certifies anything.
    """
    _check_shapes(A, B, C)
    ga = require_group_inverse(A, "A", tol)
    gb = require_group_inverse(B, "B", tol)
    As, Ap, Bs, Bp = ga.a_sharp, ga.a_pi, gb.a_sharp, gb.a_pi
    m, n = A.rows, B.rows
    AA = A @ As
    BB = B @ Bs
    Z_nm = Matrix.zeros(n, m, A.mode)
    P = block(AA, Ap @ C @ Bs, Z_nm, BB)
    Q = block(AA, As @ C, Z_nm, BB)
    P_minus = block_diag(AA, BB)
    Q_minus = block(AA, -(As @ C @ BB), Z_nm, BB)
    w = PseudoEquivalenceWitness(P, Q, P_minus, Q_minus)

    M = upper_triangular(A, C, B)
    D = block_diag(A, B)
    DD = D @ block_diag(As, Bs)
    I = Matrix.identity(m + n, A.mode)
    U = D @ Q @ P @ DD + I - DD
    U_blocks = block(A + Ap, AA @ C @ BB, Z_nm, B + Bp)
    if not same(U, U_blocks, tol):
        raise InternalInconsistency("U disagrees with its block form")
    # M = P D Q, D = P⁻ M Q⁻: D is pseudo-equivalent to M.
    check = verify_pseudo_equivalent(D, M, w, tol)
    return EquivalenceCertificate(w, U, is_invertible(U, tol), check)


def build_equivalence_certificate(A, B, C, tol=None):
    """Certificate for D and M, or None when none of this form exists."""
    cert = candidate_certificate(A, B, C, tol)
    return cert if cert.valid else None
