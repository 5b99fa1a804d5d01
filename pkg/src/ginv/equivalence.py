"""Pseudo-similarity and pseudo-equivalence certificates.

Verification recomputes every identity from the matrices given, so witnesses
read from files are treated the same as freshly constructed ones. Identities
are checked in a fixed order and the first failure is reported by name.

Pseudo-similarity ``A ~ B`` via ``(T, T⁻, T⁼)``::

    T T⁻ T = T,  T T⁼ T = T,  A = T B T⁼,  B = T⁻ A T

then the consequences

    A = T T⁻ A T T⁼,  A = A T T⁼,  A = T T⁻ A,
    B = T⁻ T B T⁼ T,  B = T⁻ T B,  B = B T⁼ T,
    A T = T B,  B T⁼ = T⁻ A

Pseudo-equivalence of A to B via ``(P, Q, P⁻, Q⁻)``::

    P P⁻ P = P,  Q Q⁻ Q = Q,  B = P A Q,  A = P⁻ B Q⁻

then ``P⁻ P A = A``, ``A Q Q⁻ = A``, ``P P⁻ B = B``, ``B Q⁻ Q = B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionError, ParseError
from .numeric import Matrix, from_json, same, to_json

SIMILARITY_DEFINING = ("T T⁻ T = T", "T T⁼ T = T", "A = T B T⁼", "B = T⁻ A T")
SIMILARITY_DERIVED = (
    "A = T T⁻ A T T⁼",
    "A = A T T⁼",
    "A = T T⁻ A",
    "B = T⁻ T B T⁼ T",
    "B = T⁻ T B",
    "B = B T⁼ T",
    "A T = T B",
    "B T⁼ = T⁻ A",
)
EQUIVALENCE_DEFINING = ("P P⁻ P = P", "Q Q⁻ Q = Q", "B = P A Q", "A = P⁻ B Q⁻")
EQUIVALENCE_DERIVED = ("P⁻ P A = A", "A Q Q⁻ = A", "P P⁻ B = B", "B Q⁻ Q = B")


@dataclass(frozen=True)
class PseudoSimilarityWitness:
    t: Matrix
    t_minus: Matrix
    t_equals: Matrix

    def to_json(self):
        return {"T": to_json(self.t), "T_minus": to_json(self.t_minus), "T_equals": to_json(self.t_equals)}

    @classmethod
    def from_json(cls, obj, source=None):
        try:
            return cls(
                from_json(obj["T"], source),
                from_json(obj["T_minus"], source),
                from_json(obj["T_equals"], source),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"similarity witness missing field {exc}", source) from None


@dataclass(frozen=True)
class PseudoEquivalenceWitness:
    p: Matrix
    q: Matrix
    p_minus: Matrix
    q_minus: Matrix

    def to_json(self):
        return {
            "P": to_json(self.p),
            "Q": to_json(self.q),
            "P_minus": to_json(self.p_minus),
            "Q_minus": to_json(self.q_minus),
        }

    @classmethod
    def from_json(cls, obj, source=None):
        try:
            return cls(
                from_json(obj["P"], source),
                from_json(obj["Q"], source),
                from_json(obj["P_minus"], source),
                from_json(obj["Q_minus"], source),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"equivalence witness missing field {exc}", source) from None


def witness_from_json(obj, source=None):
    """Dispatch on the keys present."""
    if isinstance(obj, dict) and "T" in obj:
        return PseudoSimilarityWitness.from_json(obj, source)
    if isinstance(obj, dict) and "P" in obj:
        return PseudoEquivalenceWitness.from_json(obj, source)
    raise ParseError("witness must have keys T/T_minus/T_equals or P/Q/P_minus/Q_minus", source)


@dataclass(frozen=True)
class Verification:
    """Result of checking a certificate.

    ``checks`` lists ``(identity, passed)`` in evaluation order. Evaluation
    stops at the first defining identity that fails; derived identities are
    only evaluated once all defining ones hold.
    """

    ok: bool
    failed: str | None = None
    checks: tuple = field(default=())

    def __bool__(self):
        return self.ok


def _run(checks):
    done = []
    for name, thunk in checks:
        passed = bool(thunk())
        done.append((name, passed))
        if not passed:
            return Verification(False, name, tuple(done))
    return Verification(True, None, tuple(done))


def _need(cond, msg):
    if not cond:
        raise DimensionError(msg)


def verify_pseudo_similar(A, B, w, tol=None):
    """Check that A is pseudo-similar to B via ``w``."""
    T, Tm, Te = w.t, w.t_minus, w.t_equals
    _need(A.is_square and B.is_square, "A and B must be square")
    _need(T.shape == (A.rows, B.rows), f"T has shape {T.shape}, expected {(A.rows, B.rows)}")
    _need(Tm.shape == (B.rows, A.rows), f"T_minus has shape {Tm.shape}, expected {(B.rows, A.rows)}")
    _need(Te.shape == (B.rows, A.rows), f"T_equals has shape {Te.shape}, expected {(B.rows, A.rows)}")

    def eq(X, Y):
        return lambda: same(X(), Y(), tol)

    checks = [
        (SIMILARITY_DEFINING[0], eq(lambda: T @ Tm @ T, lambda: T)),
        (SIMILARITY_DEFINING[1], eq(lambda: T @ Te @ T, lambda: T)),
        (SIMILARITY_DEFINING[2], eq(lambda: A, lambda: T @ B @ Te)),
        (SIMILARITY_DEFINING[3], eq(lambda: B, lambda: Tm @ A @ T)),
        (SIMILARITY_DERIVED[0], eq(lambda: A, lambda: T @ Tm @ A @ T @ Te)),
        (SIMILARITY_DERIVED[1], eq(lambda: A, lambda: A @ T @ Te)),
        (SIMILARITY_DERIVED[2], eq(lambda: A, lambda: T @ Tm @ A)),
        (SIMILARITY_DERIVED[3], eq(lambda: B, lambda: Tm @ T @ B @ Te @ T)),
        (SIMILARITY_DERIVED[4], eq(lambda: B, lambda: Tm @ T @ B)),
        (SIMILARITY_DERIVED[5], eq(lambda: B, lambda: B @ Te @ T)),
        (SIMILARITY_DERIVED[6], eq(lambda: A @ T, lambda: T @ B)),
        (SIMILARITY_DERIVED[7], eq(lambda: B @ Te, lambda: Tm @ A)),
    ]
    return _run(checks)


def verify_pseudo_equivalent(A, B, w, tol=None):
    """Check that A is pseudo-equivalent to B via ``w``: ``B = P A Q`` and ``A = P⁻ B Q⁻``."""
    P, Q, Pm, Qm = w.p, w.q, w.p_minus, w.q_minus
    _need(P.shape == (B.rows, A.rows), f"P has shape {P.shape}, expected {(B.rows, A.rows)}")
    _need(Q.shape == (A.cols, B.cols), f"Q has shape {Q.shape}, expected {(A.cols, B.cols)}")
    _need(Pm.shape == (A.rows, B.rows), f"P_minus has shape {Pm.shape}, expected {(A.rows, B.rows)}")
    _need(Qm.shape == (B.cols, A.cols), f"Q_minus has shape {Qm.shape}, expected {(B.cols, A.cols)}")

    def eq(X, Y):
        return lambda: same(X(), Y(), tol)

    checks = [
        (EQUIVALENCE_DEFINING[0], eq(lambda: P @ Pm @ P, lambda: P)),
        (EQUIVALENCE_DEFINING[1], eq(lambda: Q @ Qm @ Q, lambda: Q)),
        (EQUIVALENCE_DEFINING[2], eq(lambda: B, lambda: P @ A @ Q)),
        (EQUIVALENCE_DEFINING[3], eq(lambda: A, lambda: Pm @ B @ Qm)),
        (EQUIVALENCE_DERIVED[0], eq(lambda: Pm @ P @ A, lambda: A)),
        (EQUIVALENCE_DERIVED[1], eq(lambda: A @ Q @ Qm, lambda: A)),
        (EQUIVALENCE_DERIVED[2], eq(lambda: P @ Pm @ B, lambda: B)),
        (EQUIVALENCE_DERIVED[3], eq(lambda: B @ Qm @ Q, lambda: B)),
    ]
    return _run(checks)
