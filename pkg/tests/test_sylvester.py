import pytest

from conftest import planted_sylvester, random_pair
from ginv.equivalence import PseudoSimilarityWitness, verify_pseudo_similar
from ginv.errors import CertificateInvalid, HypothesisViolated, NotASolution
from ginv.generate import random_matrix
from ginv.geninv import group_inverse
from ginv.numeric import Matrix, block_diag, upper_triangular
from ginv.oracle import oracle_sylvester
from ginv.sylvester import (
    build_similarity_witness,
    extract_sylvester_solution,
    solution_formula,
    solve_sylvester,
    sylvester_parameters,
)


def residual_zero(A, B, C, X):
    return (A @ X - X @ B - C).is_zero()


def test_trivial_witness(rng):
    A, B = random_pair(rng)
    C = Matrix.zeros(A.rows, B.rows)
    w = build_similarity_witness(A, B, C, C)
    AA = A @ group_inverse(A).a_sharp
    BB = B @ group_inverse(B).a_sharp
    P = block_diag(AA, BB)
    assert w == PseudoSimilarityWitness(P, P, P)
    assert upper_triangular(A, C, B) == block_diag(A, B)
    assert extract_sylvester_solution(A, B, C, w).is_zero()


def test_scalar_witness():
    A, B, C, X = Matrix([[2]]), Matrix([[0]]), Matrix([[3]]), Matrix([["3/2"]])
    w = build_similarity_witness(A, B, C, X)
    assert w.t == Matrix([[1, 0], [0, 0]])
    assert w.t_minus == Matrix([[1, 0], [0, 0]])
    assert w.t_equals == Matrix([[1, "3/2"], [0, 0]])
    D = block_diag(A, B)
    assert w.t @ D @ w.t_equals == Matrix([[2, 3], [0, 0]]) == upper_triangular(A, C, B)
    assert w.t_minus @ upper_triangular(A, C, B) @ w.t == D
    X2 = extract_sylvester_solution(A, B, C, w)
    assert X2 == Matrix([["3/2"]])


def test_rejects_non_solution():
    with pytest.raises(NotASolution):
        build_similarity_witness(Matrix([[2]]), Matrix([[0]]), Matrix([[3]]), Matrix([[1]]))


def test_rejects_non_group_invertible():
    N = Matrix([[0, 1], [0, 0]])
    with pytest.raises(HypothesisViolated):
        build_similarity_witness(N, Matrix([[0]]), Matrix([[0], [0]]), Matrix([[0], [0]]))


def test_round_trip_random(rng):
    for _ in range(40):
        A, B, C, X = planted_sylvester(rng)
        w = build_similarity_witness(A, B, C, X)
        M, D = upper_triangular(A, C, B), block_diag(A, B)
        assert w.t @ D @ w.t_equals == M
        assert w.t_minus @ M @ w.t == D
        assert verify_pseudo_similar(M, D, w).ok
        assert residual_zero(A, B, C, extract_sylvester_solution(A, B, C, w))


def test_extract_from_oracle_witness(rng):
    # The witness is built from the oracle's X, not the planted one.
    for _ in range(20):
        A, B, C, _ = planted_sylvester(rng)
        X = oracle_sylvester(A, B, C).x
        w = build_similarity_witness(A, B, C, X)
        assert residual_zero(A, B, C, extract_sylvester_solution(A, B, C, w))


def test_extract_rejects_unverified_witness(rng):
    A, B, C, X = planted_sylvester(rng)
    w = build_similarity_witness(A, B, C, X)
    bad = PseudoSimilarityWitness(w.t * 0, w.t_minus, w.t_equals)
    if (upper_triangular(A, C, B)).is_zero():
        pytest.skip("degenerate instance")
    with pytest.raises(CertificateInvalid):
        extract_sylvester_solution(A, B, C, bad)


def test_extract_rejects_rescaled_witness():
    # (2P, P⁻/2, P⁼/2) still certifies M ~ D but breaks -C BB# = A R BB# - R B.
    A, B, C, X = Matrix([[2]]), Matrix([[1]]), Matrix([[3]]), Matrix([[3]])
    w = build_similarity_witness(A, B, C, X)
    scaled = PseudoSimilarityWitness(w.t * 2, w.t_minus * "1/2", w.t_equals * "1/2")
    assert verify_pseudo_similar(upper_triangular(A, C, B), block_diag(A, B), scaled).ok
    with pytest.raises(CertificateInvalid) as info:
        extract_sylvester_solution(A, B, C, scaled)
    assert info.value.identity == "-C BB# = A R BB# - R B"


def test_formula_needs_side_conditions(rng):
    # Arbitrary parameter blocks generally do not give a solution.
    failures = 0
    for _ in range(10):
        A, B, C, X = planted_sylvester(rng)
        params = sylvester_parameters(A, B, build_similarity_witness(A, B, C, X))
        m, n = A.rows, B.rows
        wild = params.__class__(
            random_matrix(rng, m, m, 3),
            random_matrix(rng, m, n, 3),
            random_matrix(rng, n, m, 3),
            random_matrix(rng, n, n, 3),
            random_matrix(rng, m, n, 3),
            *(params.u1, params.u2, params.u3, params.u4),
        )
        Xw = solution_formula(A, B, C, wild, group_inverse(A), group_inverse(B))
        failures += not residual_zero(A, B, C, Xw)
    assert failures > 0


def test_solve_scalar():
    res = solve_sylvester(Matrix([[2]]), Matrix([[0]]), Matrix([[3]]))
    assert res.solvable and res.x == Matrix([["3/2"]])
    assert res.x_extracted == Matrix([["3/2"]])


def test_solve_unsolvable():
    res = solve_sylvester(Matrix([[1]]), Matrix([[1]]), Matrix([[1]]))
    assert not res.solvable and res.witness is None


def test_solve_column():
    A, B, C = Matrix.diag([1, 2]), Matrix([[3]]), Matrix([[1], [1]])
    res = solve_sylvester(A, B, C)
    assert res.x == Matrix([["-1/2"], [-1]])
    assert residual_zero(A, B, C, res.x_extracted)


def test_solve_hypothesis_violated():
    with pytest.raises(HypothesisViolated):
        solve_sylvester(Matrix([[0]]), Matrix([[0]]), Matrix([[1]]))


def test_verdicts_match_oracle(rng):
    seen = {True: 0, False: 0}
    for i in range(60):
        A, B = random_pair(rng, 3)
        if i % 3 == 0:
            X = random_matrix(rng, A.rows, B.rows, 3)
            C = A @ X - X @ B
        else:
            C = random_matrix(rng, A.rows, B.rows, 3)
        if not (group_inverse(A).a_pi @ C @ group_inverse(B).a_pi).is_zero():
            continue
        res = solve_sylvester(A, B, C)
        assert res.solvable == oracle_sylvester(A, B, C).feasible
        seen[res.solvable] += 1
        if res.solvable:
            assert residual_zero(A, B, C, res.x) and residual_zero(A, B, C, res.x_extracted)
    assert seen[True] and seen[False]
