"""Dense matrices over exact rationals or floats, elimination, and 2x2 blocks.

Rational mode stores :class:`fractions.Fraction` entries and never rounds.
Float mode stores Python floats; every zero test there takes a relative
tolerance (default ``DEFAULT_TOL``).

Vectorisation in this package stacks rows (``vec`` is row-major).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DimensionError, ModeError, ParseError

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

DEFAULT_TOL = 1e-9


def _coerce(value, mode):
    if mode == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not matrix entries")
        if isinstance(value, (int, _RationalABC)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, float):
            if not value.is_integer():
                raise TypeError(
                    f"float entry {value!r} in rational matrix; pass a string such as '1/3'"
                )
            return Fraction(int(value))
        raise TypeError(f"cannot use {type(value).__name__} as a rational entry")
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


class Matrix:
    """Immutable dense matrix.

    >>> A = Matrix([[1, 2], [3, 4]])
    >>> (A @ Matrix.identity(2)) == A
    True
    >>> Matrix([["1/2", 0]]).tolist()
    [[Fraction(1, 2), Fraction(0, 1)]]
    """

    __slots__ = ("rows", "cols", "mode", "_data", "_hash")

    def __init__(self, data=(), mode=RATIONAL, shape=None):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        rows_list = [tuple(_coerce(v, mode) for v in row) for row in data]
        if shape is None:
            if not rows_list:
                raise DimensionError("empty matrix needs an explicit shape")
            shape = (len(rows_list), len(rows_list[0]))
        m, n = shape
        if m < 0 or n < 0:
            raise DimensionError(f"negative shape {shape}")
        if not rows_list and m > 0 and n == 0:
            rows_list = [()] * m
        if len(rows_list) != m or any(len(r) != n for r in rows_list):
            raise DimensionError(f"ragged or mis-shaped data for shape {shape}")
        self.rows = m
        self.cols = n
        self.mode = mode
        self._data = tuple(rows_list)
        self._hash = None

    @classmethod
    def _raw(cls, rows, m, n, mode):
        # Trusted constructor: entries already coerced.
        obj = object.__new__(cls)
        obj.rows = m
        obj.cols = n
        obj.mode = mode
        obj._data = tuple(rows) if rows else ((),) * m if n == 0 else ()
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zeros(cls, m, n, mode=RATIONAL):
        z = Fraction(0) if mode == RATIONAL else 0.0
        return cls._raw([(z,) * n for _ in range(m)], m, n, mode)

    @classmethod
    def identity(cls, n, mode=RATIONAL):
        one, zero = (Fraction(1), Fraction(0)) if mode == RATIONAL else (1.0, 0.0)
        return cls._raw(
            [tuple(one if i == j else zero for j in range(n)) for i in range(n)], n, n, mode
        )

    @classmethod
    def diag(cls, values, mode=RATIONAL):
        values = [_coerce(v, mode) for v in values]
        n = len(values)
        zero = Fraction(0) if mode == RATIONAL else 0.0
        return cls._raw(
            [tuple(values[i] if i == j else zero for j in range(n)) for i in range(n)],
            n,
            n,
            mode,
        )

    @classmethod
    def from_flat(cls, rows, cols, entries, mode=RATIONAL):
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        data = [entries[i * cols : (i + 1) * cols] for i in range(rows)]
        return cls(data, mode=mode, shape=(rows, cols))

    # basic protocol

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def flat(self):
        return [v for r in self._data for v in r]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.mode == other.mode and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.mode, self.shape, self._data))
        return self._hash

    def __repr__(self):
        if self.mode == RATIONAL:
            body = [[str(v) for v in r] for r in self._data]
        else:
            body = [[repr(v) for v in r] for r in self._data]
        return f"Matrix({body}, mode={self.mode!r}, shape={self.shape})"

    # arithmetic

    def _check_mode(self, other):
        if self.mode != other.mode:
            raise ModeError(f"cannot combine {self.mode} and {other.mode} matrices")

    def _check_same_shape(self, other, op):
        if self.shape != other.shape:
            raise DimensionError(f"{op}: shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_mode(other)
        self._check_same_shape(other, "add")
        return Matrix._raw(
            [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)],
            self.rows,
            self.cols,
            self.mode,
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_mode(other)
        self._check_same_shape(other, "sub")
        return Matrix._raw(
            [tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)],
            self.rows,
            self.cols,
            self.mode,
        )

    def __neg__(self):
        return Matrix._raw([tuple(-a for a in r) for r in self._data], self.rows, self.cols, self.mode)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        s = _coerce(scalar, self.mode)
        return Matrix._raw([tuple(a * s for a in r) for r in self._data], self.rows, self.cols, self.mode)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_mode(other)
        if self.cols != other.rows:
            raise DimensionError(f"matmul: {self.shape} @ {other.shape}")
        zero = Fraction(0) if self.mode == RATIONAL else 0.0
        cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        out = []
        for r in self._data:
            out.append(tuple(sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols))
        return Matrix._raw(out, self.rows, other.cols, self.mode)

    def __pow__(self, k):
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.rows, self.mode)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self):
        return Matrix._raw(
            [tuple(r[j] for r in self._data) for j in range(self.cols)], self.cols, self.rows, self.mode
        )

    # structure

    def submatrix(self, r0, r1, c0, c1):
        return Matrix._raw([r[c0:c1] for r in self._data[r0:r1]], r1 - r0, c1 - c0, self.mode)

    def select_columns(self, idx):
        return Matrix._raw([tuple(r[j] for j in idx) for r in self._data], self.rows, len(idx), self.mode)

    def hstack(self, *others):
        out = self
        for o in others:
            out._check_mode(o)
            if out.rows != o.rows:
                raise DimensionError(f"hstack: row counts {out.rows} and {o.rows}")
            out = Matrix._raw(
                [a + b for a, b in zip(out._data, o._data)] if out.rows else [],
                out.rows,
                out.cols + o.cols,
                out.mode,
            )
        return out

    def vstack(self, *others):
        out = self
        for o in others:
            out._check_mode(o)
            if out.cols != o.cols:
                raise DimensionError(f"vstack: column counts {out.cols} and {o.cols}")
            out = Matrix._raw(out._data + o._data, out.rows + o.rows, out.cols, out.mode)
        return out

    def vec(self):
        """Row-major vectorisation as a column."""
        return Matrix._raw([(v,) for v in self.flat()], self.rows * self.cols, 1, self.mode)

    @classmethod
    def unvec(cls, column, rows, cols):
        return cls.from_flat(rows, cols, [r[0] for r in column], mode=column.mode)

    def to_mode(self, mode):
        if mode == self.mode:
            return self
        if mode == FLOAT:
            return Matrix._raw([tuple(float(v) for v in r) for r in self._data], self.rows, self.cols, FLOAT)
        return Matrix(
            [[Fraction(v).limit_denominator(10**12) for v in r] for r in self._data],
            mode=RATIONAL,
            shape=self.shape,
        )

    def max_abs(self):
        return max((abs(v) for r in self._data for v in r), default=0)

    def is_zero(self, tol=None):
        if self.mode == RATIONAL:
            return all(v == 0 for r in self._data for v in r)
        return float(self.max_abs()) <= (DEFAULT_TOL if tol is None else tol)


def same(X, Y, tol=None):
    """Equality test used for every identity check.

    Exact in rational mode. In float mode the difference must be within
    ``tol`` relative to the larger operand (absolute below magnitude 1).
    """
    X._check_mode(Y)
    if X.shape != Y.shape:
        return False
    if X.mode == RATIONAL:
        return X == Y
    tol = DEFAULT_TOL if tol is None else tol
    scale = max(1.0, float(X.max_abs()), float(Y.max_abs()))
    return float((X - Y).max_abs()) <= tol * scale


# elimination


def _pivot_threshold(A, tol):
    if A.mode == RATIONAL:
        return None
    tol = DEFAULT_TOL if tol is None else tol
    return tol * max(1.0, float(A.max_abs()))


def rref(A, tol=None):
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns ``(R, pivots)``. Exact in rational mode; partial pivoting with a
    relative threshold in float mode.
    """
    thresh = _pivot_threshold(A, tol)
    rows = [list(r) for r in A]
    m, n = A.shape
    pivots = []
    pr = 0
    for c in range(n):
        if pr == m:
            break
        if thresh is None:
            p = next((i for i in range(pr, m) if rows[i][c] != 0), None)
        else:
            p = max(range(pr, m), key=lambda i: abs(rows[i][c]))
            if abs(rows[p][c]) <= thresh:
                p = None
        if p is None:
            continue
        rows[pr], rows[p] = rows[p], rows[pr]
        pivot_row = rows[pr]
        inv = 1 / pivot_row[c]
        pivot_row[:] = [v * inv for v in pivot_row]
        pivot_row[c] = Fraction(1) if thresh is None else 1.0
        for i in range(m):
            if i != pr:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
                    rows[i][c] = Fraction(0) if thresh is None else 0.0
        pivots.append(c)
        pr += 1
    if thresh is not None:
        for r in rows[pr:]:
            r[:] = [0.0] * n
    return Matrix._raw([tuple(r) for r in rows], m, n, A.mode), pivots


def rank(A, tol=None):
    return len(rref(A, tol)[1])


def bareiss_rank(A):
    """Rank by fraction-free (Bareiss) elimination on an integer scaling of A.

    Kept separate from :func:`rref` so the two can cross-check each other.
    """
    if A.mode != RATIONAL:
        raise ModeError("bareiss_rank is exact and needs a rational matrix")
    rows = []
    for r in A:
        den = math.lcm(*(v.denominator for v in r)) if r else 1
        rows.append([int(v * den) for v in r])
    m, n = A.shape
    prev = 1
    k = 0
    for c in range(n):
        if k == m:
            break
        p = next((i for i in range(k, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[k], rows[p] = rows[p], rows[k]
        for i in range(k + 1, m):
            rows[i] = [
                (rows[k][c] * rows[i][j] - rows[i][c] * rows[k][j]) // prev for j in range(n)
            ]
        prev = rows[k][c]
        k += 1
    return k


@dataclass(frozen=True)
class RankFactorization:
    F: Matrix
    G: Matrix
    r: int


def rank_factorize(A, tol=None):
    """Full-rank factorisation ``A = F @ G``.

    F is the pivot columns of A and G the nonzero rows of rref(A). The zero
    matrix gives r = 0 with F of shape (m, 0) and G of shape (0, n).

    >>> fg = rank_factorize(Matrix([[1, 2], [2, 4]]))
    >>> fg.F.tolist(), fg.G.tolist(), fg.r
    ([[Fraction(1, 1)], [Fraction(2, 1)]], [[Fraction(1, 1), Fraction(2, 1)]], 1)
    """
    R, pivots = rref(A, tol)
    r = len(pivots)
    F = A.select_columns(pivots)
    G = R.submatrix(0, r, 0, A.cols)
    return RankFactorization(F, G, r)


class SingularMatrix(ArithmeticError):
    pass


def inverse(A, tol=None):
    if not A.is_square:
        raise DimensionError(f"inverse of non-square {A.shape}")
    n = A.rows
    R, pivots = rref(A.hstack(Matrix.identity(n, A.mode)), tol)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return R.submatrix(0, n, n, 2 * n)


def is_invertible(A, tol=None):
    return A.is_square and rank(A, tol) == A.rows


def determinant(A):
    """Exact determinant (rational mode) by fraction-free elimination."""
    if not A.is_square:
        raise DimensionError("determinant of non-square matrix")
    rows = [list(r) for r in A]
    n = A.rows
    det = Fraction(1) if A.mode == RATIONAL else 1.0
    for c in range(n):
        p = max(range(c, n), key=lambda i: abs(rows[i][c]), default=None)
        if p is None or rows[p][c] == 0:
            return det * 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of :func:`solve_linear`.

    When inconsistent, ``particular`` is None and ``rank`` < ``augmented_rank``
    certifies it.
    """

    consistent: bool
    particular: Matrix | None
    null_basis: tuple
    rank: int
    augmented_rank: int

    def __bool__(self):
        return self.consistent


def solve_linear(A, b, tol=None):
    """Solve ``A x = b`` and return a particular solution plus a null-space basis.

    Free variables are set to zero in the particular solution; the null basis
    has one vector per free column, in column order.
    """
    A._check_mode(b)
    if A.rows != b.rows:
        raise DimensionError(f"solve_linear: A has {A.rows} rows, b has {b.rows}")
    if b.cols != 1:
        raise DimensionError("right-hand side must be a single column")
    n = A.cols
    R, pivots = rref(A.hstack(b), tol)
    coeff_pivots = [p for p in pivots if p < n]
    aug_rank = len(pivots)
    zero, one = (Fraction(0), Fraction(1)) if A.mode == RATIONAL else (0.0, 1.0)
    if len(coeff_pivots) < aug_rank:
        return LinearSolution(False, None, (), len(coeff_pivots), aug_rank)
    x = [zero] * n
    for i, p in enumerate(coeff_pivots):
        x[p] = R[i, n]
    free = [j for j in range(n) if j not in set(coeff_pivots)]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, p in enumerate(coeff_pivots):
            v[p] = -R[i, f]
        basis.append(Matrix._raw([(t,) for t in v], n, 1, A.mode))
    particular = Matrix._raw([(t,) for t in x], n, 1, A.mode)
    return LinearSolution(True, particular, tuple(basis), len(coeff_pivots), aug_rank)


def kron(A, B):
    A._check_mode(B)
    m, n = A.shape
    p, q = B.shape
    out = []
    for i in range(m):
        for k in range(p):
            out.append(tuple(A[i, j] * B[k, l] for j in range(n) for l in range(q)))
    return Matrix._raw(out, m * p, n * q, A.mode)


# 2x2 blocks


@dataclass(frozen=True)
class Block2x2:
    a11: Matrix
    a12: Matrix
    a21: Matrix
    a22: Matrix

    def __post_init__(self):
        if not (self.a11.rows == self.a12.rows and self.a21.rows == self.a22.rows):
            raise DimensionError("block rows do not conform")
        if not (self.a11.cols == self.a21.cols and self.a12.cols == self.a22.cols):
            raise DimensionError("block columns do not conform")
        modes = {self.a11.mode, self.a12.mode, self.a21.mode, self.a22.mode}
        if len(modes) != 1:
            raise ModeError("blocks must share one mode")

    def __iter__(self):
        return iter((self.a11, self.a12, self.a21, self.a22))


def assemble(b):
    top = b.a11.hstack(b.a12)
    bottom = b.a21.hstack(b.a22)
    return top.vstack(bottom)


def split(M, top_rows, left_cols):
    if not (0 <= top_rows <= M.rows and 0 <= left_cols <= M.cols):
        raise DimensionError(f"cut ({top_rows}, {left_cols}) outside {M.shape}")
    m, n = M.shape
    return Block2x2(
        M.submatrix(0, top_rows, 0, left_cols),
        M.submatrix(0, top_rows, left_cols, n),
        M.submatrix(top_rows, m, 0, left_cols),
        M.submatrix(top_rows, m, left_cols, n),
    )


def block(a11, a12, a21, a22):
    """Shorthand for ``assemble(Block2x2(...))``."""
    return assemble(Block2x2(a11, a12, a21, a22))


def upper_triangular(A, C, B):
    """``[[A, C], [0, B]]``."""
    return block(A, C, Matrix.zeros(B.rows, A.cols, A.mode), B)


def block_diag(A, B):
    return block(A, Matrix.zeros(A.rows, B.cols, A.mode), Matrix.zeros(B.rows, A.cols, A.mode), B)


# JSON


def _format_entry(v, mode):
    if mode == RATIONAL:
        return str(v)
    return v


def to_json(A):
    return {
        "mode": A.mode,
        "rows": A.rows,
        "cols": A.cols,
        "data": [_format_entry(v, A.mode) for v in A.flat()],
    }


def from_json(obj, source=None):
    """Parse the shared matrix object. ``data`` may be flat (row-major) or nested."""
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object", source)
    mode = obj.get("mode", RATIONAL)
    if mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}", source)
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"missing or invalid field: {exc}", source) from None
    if data and isinstance(data[0], list):
        data = [v for r in data for v in r]
    if len(data) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, got {len(data)}", source)
    entries = []
    for k, v in enumerate(data):
        if mode == RATIONAL and isinstance(v, float):
            raise ParseError(f"entry {k}: float {v!r} in rational matrix", source)
        if mode == FLOAT and not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ParseError(f"entry {k}: {v!r} is not a number", source)
        try:
            entries.append(_coerce(v, mode))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"entry {k}: {exc}", source) from None
    return Matrix.from_flat(rows, cols, entries, mode)
