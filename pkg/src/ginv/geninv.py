"""Inner inverses, group inverses and block upper-triangular operators."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CertificateInvalid, DimensionError, HypothesisViolated
from .numeric import (
    Matrix,
    inverse,
    is_invertible,
    rank_factorize,
    same,
    upper_triangular,
)


@dataclass(frozen=True)
class GroupInverseResult:
    """Group inverse ``a_sharp`` with spectral idempotent ``a_pi = I - A a_sharp``.

    When the index of A exceeds one, ``index_le_one`` is False and both
    matrices are None.
    """

    a_sharp: Matrix | None
    a_pi: Matrix | None
    index_le_one: bool

    @property
    def exists(self):
        return self.index_le_one

    def __bool__(self):
        return self.index_le_one


@dataclass(frozen=True)
class BlockGroupInverseParts:
    s: Matrix
    m_sharp: Matrix


def inner_inverse(A, tol=None):
    """A fixed inner inverse G (``A @ G @ A == A``) from the rank factorisation.

    G = Gr @ Fl where Fl is a left inverse of F and Gr a right inverse of G.
    """
    fg = rank_factorize(A, tol)
    if fg.r == 0:
        return Matrix.zeros(A.cols, A.rows, A.mode)
    F, G = fg.F, fg.G
    f_left = inverse(F.T @ F, tol) @ F.T
    g_right = G.T @ inverse(G @ G.T, tol)
    return g_right @ f_left


def is_inner_inverse(A, G, tol=None):
    if G.shape != (A.cols, A.rows):
        return False
    return same(A @ G @ A, A, tol)


def inner_inverse_family(P, P_minus, U, tol=None):
    """Member ``P⁻ + U - P⁻ P U P P⁻`` of the inner-inverse family of P."""
    if P_minus.shape != (P.cols, P.rows):
        raise DimensionError(f"P_minus has shape {P_minus.shape}, expected {(P.cols, P.rows)}")
    if U.shape != P_minus.shape:
        raise DimensionError(f"U has shape {U.shape}, expected {P_minus.shape}")
    if not is_inner_inverse(P, P_minus, tol):
        raise CertificateInvalid("P_minus is not an inner inverse of P", identity="P P⁻ P = P")
    return P_minus + U - P_minus @ P @ U @ P @ P_minus


def group_inverse(A, tol=None):
    """Group inverse via ``A = F G``: ``A# = F (G F)^-2 G``.

    Exists iff G F is invertible, i.e. rank(A) == rank(A^2).

    >>> group_inverse(Matrix([[0, 1], [0, 0]])).exists
    False
    >>> group_inverse(Matrix.diag([2, 0])).a_sharp == Matrix.diag(["1/2", 0])
    True
    """
    if not A.is_square:
        raise DimensionError(f"group inverse needs a square matrix, got {A.shape}")
    n = A.rows
    I = Matrix.identity(n, A.mode)
    fg = rank_factorize(A, tol)
    if fg.r == 0:
        return GroupInverseResult(Matrix.zeros(n, n, A.mode), I, True)
    GF = fg.G @ fg.F
    if not is_invertible(GF, tol):
        return GroupInverseResult(None, None, False)
    K = inverse(GF, tol)
    a_sharp = fg.F @ K @ K @ fg.G
    return GroupInverseResult(a_sharp, I - A @ a_sharp, True)


def require_group_inverse(A, name="A", tol=None):
    """Group inverse of A, raising :class:`HypothesisViolated` if it does not exist."""
    res = group_inverse(A, tol)
    if not res.exists:
        raise HypothesisViolated(f"{name} is not group invertible (index > 1)")
    return res


def group_axioms(A, X, tol=None):
    """Named checks for X being the group inverse of A, in a fixed order."""
    AX = A @ X
    return [
        ("A X A = A", same(AX @ A, A, tol)),
        ("X A X = X", same(X @ AX, X, tol)),
        ("A X = X A", same(AX, X @ A, tol)),
    ]


def spectral_checks(A, res, tol=None):
    """Idempotence and commutation checks for ``res.a_pi``."""
    P = res.a_pi
    I = Matrix.identity(A.rows, A.mode)
    return [
        ("A^π A^π = A^π", same(P @ P, P, tol)),
        ("A^π A = A A^π", same(P @ A, A @ P, tol)),
        ("A A# = I - A^π", same(A @ res.a_sharp, I - P, tol)),
    ]


def block_triangular_group_invertible(A, B, C, tol=None):
    """Whether ``[[A, C], [0, B]]`` is group invertible, for group-invertible A, B.

    Criterion: ``A^π C B^π = 0``.
    """
    ga = require_group_inverse(A, "A", tol)
    gb = require_group_inverse(B, "B", tol)
    if C.shape != (A.rows, B.cols):
        raise DimensionError(f"C has shape {C.shape}, expected {(A.rows, B.cols)}")
    return (ga.a_pi @ C @ gb.a_pi).is_zero(tol)


def block_group_inverse(A, B, C, tol=None):
    """Closed-form group inverse of ``M = [[A, C], [0, B]]``.

    Returns None when ``A^π C B^π != 0`` (M has no group inverse).
    """
    ga = require_group_inverse(A, "A", tol)
    gb = require_group_inverse(B, "B", tol)
    if C.shape != (A.rows, B.cols):
        raise DimensionError(f"C has shape {C.shape}, expected {(A.rows, B.cols)}")
    As, Ap, Bs, Bp = ga.a_sharp, ga.a_pi, gb.a_sharp, gb.a_pi
    if not (Ap @ C @ Bp).is_zero(tol):
        return None
    s = As @ As @ C @ Bp + Ap @ C @ Bs @ Bs - As @ C @ Bs
    return BlockGroupInverseParts(s, upper_triangular(As, s, Bs))
