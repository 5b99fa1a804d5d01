import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ginv.generate import random_group_invertible, random_matrix
from ginv.numeric import Matrix

DATA = Path(__file__).resolve().parent.parent / "data" / "worked_example"


def M(rows):
    return Matrix(rows)


# A 4x4 rational instance with published group inverses, kept as a regression fixture.
EXAMPLE_A = M([[-1, 0, 1, 2], [-1, 1, 0, -1], [0, -1, 1, 3], [1, 1, -2, -5]])
EXAMPLE_B = M([[4, -2, -2, 0], [-2, 4, -2, 0], [-2, -1, 4, -1], [-1, -1, -1, 3]]) * Fraction(1, 4)
EXAMPLE_C = M([[3, 1, 1, -2], [0, 0, 0, 0], [2, 0, 0, 1], [-6, 1, 1, -2]])
EXAMPLE_A_SHARP = M([[-5, 4, 1, -2], [-21, 17, 4, -9], [16, -13, -3, 7], [-11, 9, 2, -5]])
EXAMPLE_AA_SHARP = M([[-1, 1, 0, -1], [-5, 4, 1, -2], [4, -3, -1, 1], [-3, 2, 1, 0]])
EXAMPLE_B_SHARP = M(
    [[265, -61, -96, -108], [-96, 300, -96, -108], [-115, -137, 246, 6], [-210, -156, -210, 576]]
) * Fraction(2, 1083)
EXAMPLE_BB_SHARP = M(
    [[13, -5, -6, -2], [-6, 14, -6, -2], [-6, -5, 13, -2], [-6, -5, -6, 17]]
) * Fraction(1, 19)


@pytest.fixture
def example():
    return EXAMPLE_A, EXAMPLE_B, EXAMPLE_C


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_gi(rng, n_max=4):
    n = rng.randint(1, n_max)
    return random_group_invertible(rng, n, rng.randint(0, n), bound=3)


def random_pair(rng, n_max=4):
    return random_gi(rng, n_max), random_gi(rng, n_max)


def planted_two_sided(rng, n_max=4):
    A, B = random_pair(rng, n_max)
    X = random_matrix(rng, A.rows, B.rows, 3)
    Y = random_matrix(rng, A.rows, B.rows, 3)
    return A, B, A @ X - Y @ B


def planted_sylvester(rng, n_max=4):
    A, B = random_pair(rng, n_max)
    X = random_matrix(rng, A.rows, B.rows, 3)
    return A, B, A @ X - X @ B, X


small_ints = st.integers(min_value=-4, max_value=4)
small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def rational_matrices(draw, max_dim=4, min_dim=0, entries=small_fractions):
    m = draw(st.integers(min_dim, max_dim))
    n = draw(st.integers(min_dim, max_dim))
    data = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m))
    return Matrix(data, shape=(m, n))


def to_sympy(Mx):
    import sympy

    return sympy.Matrix(Mx.rows, Mx.cols, lambda i, j: sympy.Rational(Mx[i, j].numerator, Mx[i, j].denominator))


def sympy_confirms_similarity(A, B, w):
    """Independent recheck of the four defining identities with sympy arithmetic."""
    A, B = to_sympy(A), to_sympy(B)
    T, Tm, Te = to_sympy(w.t), to_sympy(w.t_minus), to_sympy(w.t_equals)
    return T * Tm * T == T and T * Te * T == T and A == T * B * Te and B == Tm * A * T


def sympy_confirms_equivalence(A, B, w):
    A, B = to_sympy(A), to_sympy(B)
    P, Q, Pm, Qm = (to_sympy(x) for x in (w.p, w.q, w.p_minus, w.q_minus))
    return P * Pm * P == P and Q * Qm * Q == Q and B == P * A * Q and A == Pm * B * Qm
