import random
from fractions import Fraction

import pytest

from conftest import (
    EXAMPLE_A,
    EXAMPLE_A_SHARP,
    EXAMPLE_AA_SHARP,
    EXAMPLE_B,
    EXAMPLE_B_SHARP,
    EXAMPLE_BB_SHARP,
    EXAMPLE_C,
    random_gi,
    random_pair,
)
from ginv.errors import CertificateInvalid, DimensionError, HypothesisViolated
from ginv.generate import random_invertible, random_matrix
from ginv.geninv import (
    block_group_inverse,
    block_triangular_group_invertible,
    group_axioms,
    group_inverse,
    inner_inverse,
    inner_inverse_family,
    spectral_checks,
)
from ginv.numeric import FLOAT, Matrix, block, inverse, rank_factorize, same, upper_triangular


def test_inner_inverse_identity():
    assert inner_inverse(Matrix.identity(2)) == Matrix.identity(2)


def test_inner_inverse_zero():
    assert inner_inverse(Matrix.zeros(2, 3)) == Matrix.zeros(3, 2)


def test_inner_inverse_projection():
    A = Matrix([[1, 0], [0, 0]])
    G = inner_inverse(A)
    assert A @ G @ A == A


def test_inner_inverse_random_rectangular():
    rng = random.Random(7)
    for _ in range(60):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        r = rng.randint(0, min(m, n))
        A = random_matrix(rng, m, r, 3) @ random_matrix(rng, r, n, 3) if r else Matrix.zeros(m, n)
        G = inner_inverse(A)
        assert G.shape == (n, m)
        assert A @ G @ A == A
        assert inner_inverse(A) == G


def test_family_at_zero_is_identity_map():
    P = Matrix([[1, 2], [0, 0]])
    Pm = inner_inverse(P)
    assert inner_inverse_family(P, Pm, Matrix.zeros(2, 2)) == Pm


def test_family_example():
    P = Matrix([[1, 0], [0, 0]])
    G = inner_inverse_family(P, P, Matrix([[0, 1], [0, 0]]))
    assert G == Matrix([[1, 1], [0, 0]])
    assert P @ G @ P == P


def test_family_rejects_bad_inner_inverse():
    P = Matrix([[1, 0], [0, 0]])
    with pytest.raises(CertificateInvalid):
        inner_inverse_family(P, Matrix([[2, 0], [0, 0]]), Matrix.zeros(2, 2))


def test_family_always_inner(rng):
    for _ in range(80):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        P = random_matrix(rng, m, n, 2)
        U = random_matrix(rng, n, m, 3)
        G = inner_inverse_family(P, inner_inverse(P), U)
        assert P @ G @ P == P


def test_family_reproduces_witness_inner_inverse(rng):
    # P = [[AA#, -X BB#], [0, BB#]] with U = [[0, AA# X], [0, 0]] gives [[AA#, AA# X], [0, BB#]].
    for _ in range(20):
        A, B = random_pair(rng)
        X = random_matrix(rng, A.rows, B.rows, 3)
        AA = A @ group_inverse(A).a_sharp
        BB = B @ group_inverse(B).a_sharp
        Z = Matrix.zeros(B.rows, A.rows)
        P = block(AA, -(X @ BB), Z, BB)
        Pm = block(AA, AA @ X @ BB, Z, BB)
        U = block(Matrix.zeros(A.rows, A.rows), AA @ X, Z, Matrix.zeros(B.rows, B.rows))
        assert inner_inverse_family(P, Pm, U) == block(AA, AA @ X, Z, BB)


# group inverse


def test_example_a():
    res = group_inverse(EXAMPLE_A)
    assert res.exists
    assert res.a_sharp == EXAMPLE_A_SHARP
    assert EXAMPLE_A @ res.a_sharp == EXAMPLE_AA_SHARP


def test_example_b():
    res = group_inverse(EXAMPLE_B)
    assert res.a_sharp == EXAMPLE_B_SHARP
    assert EXAMPLE_B @ res.a_sharp == EXAMPLE_BB_SHARP


def test_example_criterion():
    assert block_triangular_group_invertible(EXAMPLE_A, EXAMPLE_B, EXAMPLE_C)


def test_diag():
    res = group_inverse(Matrix.diag([2, 0]))
    assert res.a_sharp == Matrix.diag([Fraction(1, 2), 0])
    assert res.a_pi == Matrix.diag([0, 1])


def test_nilpotent_has_no_group_inverse():
    res = group_inverse(Matrix([[0, 1], [0, 0]]))
    assert not res.exists and res.a_sharp is None


def test_zero_matrix():
    res = group_inverse(Matrix.zeros(3, 3))
    assert res.a_sharp == Matrix.zeros(3, 3)
    assert res.a_pi == Matrix.identity(3)


def test_invertible_gives_inverse():
    A = Matrix([[2, 1], [1, 1]])
    assert group_inverse(A).a_sharp == inverse(A)


def test_non_square():
    with pytest.raises(DimensionError):
        group_inverse(Matrix.zeros(2, 3))


def test_independent_of_factorization(rng):
    # Any other full-rank factorisation F S, S^-1 G gives the same result.
    for _ in range(40):
        A = random_gi(rng, 5)
        fg = rank_factorize(A)
        if fg.r == 0:
            continue
        S = random_invertible(rng, fg.r, 3)
        F2, G2 = fg.F @ S, inverse(S) @ fg.G
        K = inverse(G2 @ F2)
        assert F2 @ K @ K @ G2 == group_inverse(A).a_sharp


def test_existence_matches_rank_condition(rng):
    from ginv.numeric import rank

    for _ in range(100):
        n = rng.randint(1, 4)
        A = random_matrix(rng, n, n, 1)
        assert group_inverse(A).exists == (rank(A) == rank(A @ A))


def test_axioms_float():
    A = Matrix([[2.0, 1.0], [0.0, 0.0]], mode=FLOAT)
    res = group_inverse(A, tol=1e-12)
    assert all(ok for _, ok in group_axioms(A, res.a_sharp, 1e-12))
    assert all(ok for _, ok in spectral_checks(A, res, 1e-12))


# blocks


def test_block_criterion_trivial_false():
    assert not block_triangular_group_invertible(Matrix([[0]]), Matrix([[0]]), Matrix([[1]]))


def test_block_criterion_zero_c(rng):
    for _ in range(20):
        A, B = random_pair(rng)
        assert block_triangular_group_invertible(A, B, Matrix.zeros(A.rows, B.rows))


def test_block_criterion_requires_group_invertible():
    N = Matrix([[0, 1], [0, 0]])
    with pytest.raises(HypothesisViolated):
        block_triangular_group_invertible(N, Matrix([[1]]), Matrix([[1], [1]]))


def test_block_group_inverse_zero_c(rng):
    A, B = random_pair(rng)
    parts = block_group_inverse(A, B, Matrix.zeros(A.rows, B.rows))
    assert parts.s.is_zero()
    assert parts.m_sharp == block(
        group_inverse(A).a_sharp,
        Matrix.zeros(A.rows, B.rows),
        Matrix.zeros(B.rows, A.rows),
        group_inverse(B).a_sharp,
    )


def test_block_group_inverse_scalar():
    A, B, C = Matrix([[2]]), Matrix([[0]]), Matrix([[1]])
    parts = block_group_inverse(A, B, C)
    assert parts.s == Matrix([["1/4"]])
    assert parts.m_sharp == Matrix([["1/2", "1/4"], [0, 0]])
    M = upper_triangular(A, C, B)
    assert all(ok for _, ok in group_axioms(M, parts.m_sharp))


def test_block_group_inverse_example():
    parts = block_group_inverse(EXAMPLE_A, EXAMPLE_B, EXAMPLE_C)
    M = upper_triangular(EXAMPLE_A, EXAMPLE_C, EXAMPLE_B)
    assert all(ok for _, ok in group_axioms(M, parts.m_sharp))
    assert parts.m_sharp == group_inverse(M).a_sharp


def test_block_group_inverse_nonexistent():
    assert block_group_inverse(Matrix([[0]]), Matrix([[0]]), Matrix([[1]])) is None


def test_block_criterion_equivalence(rng):
    seen = {True: 0, False: 0}
    for i in range(120):
        A, B = random_pair(rng)
        if i % 2:
            C = random_matrix(rng, A.rows, B.rows, 3)
        else:
            X = random_matrix(rng, A.rows, B.rows, 3)
            Y = random_matrix(rng, A.rows, B.rows, 3)
            C = A @ X - Y @ B
        M = upper_triangular(A, C, B)
        crit = block_triangular_group_invertible(A, B, C)
        gm = group_inverse(M)
        assert crit == gm.exists
        seen[crit] += 1
        if crit:
            assert block_group_inverse(A, B, C).m_sharp == gm.a_sharp
    assert seen[True] and seen[False]
