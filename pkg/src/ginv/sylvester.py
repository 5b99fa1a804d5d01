"""The Sylvester equation ``A X - X B = C`` through pseudo-similarity.

With ``M = [[A, C], [0, B]]`` and ``D = diag(A, B)``, a solution X yields a
witness P for ``M ~ D``; conversely a witness yields a solution through a
closed formula in the blocks of ``W = P P⁼`` and of P.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle
from .equivalence import PseudoSimilarityWitness, verify_pseudo_similar
from .errors import CertificateInvalid, DimensionError, HypothesisViolated, InternalInconsistency, NotASolution
from .geninv import block_group_inverse, inner_inverse_family, require_group_inverse
from .numeric import Matrix, block, block_diag, same, split, upper_triangular


@dataclass(frozen=True)
class SylvesterParameters:
    """Free parameters of the extraction formula, as blocks over the H ⊕ K split.

    ``y1..y4`` come from W, ``z2`` is the top-right block of Z, ``u1..u4``
    from the V parameter (they do not enter the formula itself).
    """

    y1: Matrix
    y2: Matrix
    y3: Matrix
    y4: Matrix
    z2: Matrix
    u1: Matrix
    u2: Matrix
    u3: Matrix
    u4: Matrix


@dataclass(frozen=True)
class SylvesterResult:
    solvable: bool
    x: Matrix | None = None
    witness: PseudoSimilarityWitness | None = None
    x_extracted: Matrix | None = None
    note: str = ""

    def __bool__(self):
        return self.solvable


def _check_shapes(A, B, C):
    if not (A.is_square and B.is_square):
        raise DimensionError("A and B must be square")
    if C.shape != (A.rows, B.rows):
        raise DimensionError(f"C has shape {C.shape}, expected {(A.rows, B.rows)}")


def sylvester_residual(A, B, C, X):
    return A @ X - X @ B - C


def operator_matrices(A, B, C):
    """``(M, D)`` for the equation."""
    return upper_triangular(A, C, B), block_diag(A, B)


def build_similarity_witness(A, B, C, X, tol=None):
    """Witness ``(P, P⁻, P⁼)`` for ``M ~ D`` from a solution X.

    ``P = [[AA#, -X BB#], [0, BB#]]``, ``P⁻ = [[AA#, AA# X BB#], [0, BB#]]``
    and ``P⁼`` is the member of the inner-inverse family of P at
    ``U = [[0, AA# X], [0, 0]]``, which works out to ``[[AA#, AA# X], [0, BB#]]``.
    """
    _check_shapes(A, B, C)
    if X.shape != C.shape:
        raise DimensionError(f"X has shape {X.shape}, expected {C.shape}")
    ga = require_group_inverse(A, "A", tol)
    gb = require_group_inverse(B, "B", tol)
    res = sylvester_residual(A, B, C, X)
    if not res.is_zero(tol):
        raise NotASolution("X does not satisfy A X - X B = C", residual=res)
    m, n = A.rows, B.rows
    AA = A @ ga.a_sharp
    BB = B @ gb.a_sharp
    Z_nm = Matrix.zeros(n, m, A.mode)
    P = block(AA, -(X @ BB), Z_nm, BB)
    P_minus = block(AA, AA @ X @ BB, Z_nm, BB)
    U = block(Matrix.zeros(m, m, A.mode), AA @ X, Z_nm, Matrix.zeros(n, n, A.mode))
    P_equals = inner_inverse_family(P, P_minus, U, tol)
    if not same(P_equals, block(AA, AA @ X, Z_nm, BB), tol):
        raise InternalInconsistency("inner-inverse family did not reproduce P⁼")
    w = PseudoSimilarityWitness(P, P_minus, P_equals)
    M, D = operator_matrices(A, B, C)
    check = verify_pseudo_similar(M, D, w, tol)
    if not check:
        raise InternalInconsistency(f"constructed witness fails {check.failed}")
    return w


def sylvester_parameters(A, B, w):
    """Instantiate the formula's parameters from a witness: Z = P, Y = P P⁼, U = P⁻ P."""
    m = A.rows
    P, Pm, Pe = w.t, w.t_minus, w.t_equals
    W = P @ Pe
    V = Pm @ P
    y1, y2, y3, y4 = split(W, m, m)
    z2 = split(P, m, m).a12
    u1, u2, u3, u4 = split(V, m, m)
    return SylvesterParameters(y1, y2, y3, y4, z2, u1, u2, u3, u4)


def solution_formula(A, B, C, params, ga, gb):
    """Evaluate the closed-form solution for the given parameters."""
    As, Ap = ga.a_sharp, ga.a_pi
    Bs, Bp = gb.a_sharp, gb.a_pi
    AA = A @ As
    BB = B @ Bs
    Y1, Y2, Y3, Y4, Z2 = params.y1, params.y2, params.y3, params.y4, params.z2
    AsCBp = As @ C @ Bp
    ApCBs = Ap @ C @ Bs
    Z2BB = Z2 @ BB
    return (
        -(AA @ Z2BB)
        + AsCBp @ Y3 @ Z2BB
        + AsCBp @ Y4 @ BB
        - Ap @ Y1 @ Z2BB
        + ApCBs @ Y3 @ Z2BB
        - ApCBs
        - Ap @ Y2 @ BB
        + ApCBs @ Y4 @ BB
        + AsCBp
    )


def extract_sylvester_solution(A, B, C, w, tol=None):
    """Recover a solution of ``A X - X B = C`` from a witness for ``M ~ D``.

    Every validity condition of the parameter choice, and the two intermediate
    identities the formula relies on, are checked; a failure raises
    :class:`CertificateInvalid` naming the identity.
    """
    _check_shapes(A, B, C)
    ga = require_group_inverse(A, "A", tol)
    gb = require_group_inverse(B, "B", tol)
    parts = block_group_inverse(A, B, C, tol)
    if parts is None:
        raise HypothesisViolated("M is not group invertible (A^π C B^π != 0)")
    M, D = operator_matrices(A, B, C)
    check = verify_pseudo_similar(M, D, w, tol)
    if not check:
        raise CertificateInvalid(f"witness fails {check.failed}", identity=check.failed)

    P, Pm, Pe = w.t, w.t_minus, w.t_equals
    W = P @ Pe
    V = Pm @ P
    M_sharp = parts.m_sharp
    D_sharp = block_diag(ga.a_sharp, gb.a_sharp)
    DD = D @ D_sharp
    conditions = [
        ("W Z V = P", lambda: same(W @ P @ V, P, tol)),
        ("M# M W = M# M", lambda: same(M_sharp @ M @ W, M_sharp @ M, tol)),
        ("V D D# = D D#", lambda: same(V @ DD, DD, tol)),
    ]
    params = sylvester_parameters(A, B, w)
    AA = A @ ga.a_sharp
    BB = B @ gb.a_sharp
    Bp = gb.a_pi
    R = params.z2
    conditions += [
        (
            "AA# C B^π Y3 Z2 BB# + AA# C B^π Y4 BB# = 0",
            lambda: (AA @ C @ Bp @ (params.y3 @ params.z2 @ BB + params.y4 @ BB)).is_zero(tol),
        ),
        ("-C BB# = A R BB# - R B", lambda: same(-(C @ BB), A @ R @ BB - R @ B, tol)),
    ]
    for name, ok in conditions:
        if not ok():
            raise CertificateInvalid(f"extraction condition fails: {name}", identity=name)

    X = solution_formula(A, B, C, params, ga, gb)
    if not sylvester_residual(A, B, C, X).is_zero(tol):
        raise InternalInconsistency("extracted X has nonzero residual")
    return X


def solve_sylvester(A, B, C, tol=None):
    """Decide and solve ``A X - X B = C`` under the standing hypotheses.

    A, B and M must be group invertible. The verdict comes from the
    vectorisation oracle; on success the witness is built from the oracle's X
    and a second solution is extracted back out of it.
    """
    _check_shapes(A, B, C)
    require_group_inverse(A, "A", tol)
    require_group_inverse(B, "B", tol)
    if block_group_inverse(A, B, C, tol) is None:
        raise HypothesisViolated("M is not group invertible (A^π C B^π != 0)")
    found = oracle.oracle_sylvester(A, B, C, tol)
    if not found:
        return SylvesterResult(
            False,
            note="A X - X B = C has no solution, so M is not pseudo-similar to D via any regular P",
        )
    X = found.x
    w = build_similarity_witness(A, B, C, X, tol)
    X2 = extract_sylvester_solution(A, B, C, w, tol)
    return SylvesterResult(True, X, w, X2)
