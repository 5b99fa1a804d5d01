"""Random group-invertible matrices and solvable equation instances."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .numeric import Matrix, block_diag, inverse, is_invertible

SEED_ENV = "GINV_SEED"


@dataclass(frozen=True)
class GenSpec:
    """Generation parameters.

    ``n`` and ``rank`` describe A; ``k`` and ``rank_b`` describe B and
    default to the same values.
    """

    n: int
    rank: int
    seed: int = 0
    entry_bound: int = 5
    k: int | None = None
    rank_b: int | None = None

    def __post_init__(self):
        if not 0 <= self.rank <= self.n:
            raise ValueError(f"rank {self.rank} outside [0, {self.n}]")
        k, rank_b = self.b_shape
        if not 0 <= rank_b <= k:
            raise ValueError(f"rank_b {rank_b} outside [0, {k}]")
        if self.entry_bound < 1:
            raise ValueError("entry_bound must be positive")

    @property
    def b_shape(self):
        k = self.n if self.k is None else self.k
        rank_b = min(self.rank, k) if self.rank_b is None else self.rank_b
        return k, rank_b


@dataclass(frozen=True)
class Instance:
    kind: str
    a: Matrix
    b: Matrix
    c: Matrix
    solution: tuple


def seed_from_env(default=0):
    value = os.environ.get(SEED_ENV)
    return int(value) if value not in (None, "") else default


def random_matrix(rng, m, n, bound=5):
    return Matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], shape=(m, n))


def random_invertible(rng, n, bound=5):
    while True:
        S = random_matrix(rng, n, n, bound)
        if is_invertible(S):
            return S


def random_group_invertible(rng, n, rank, bound=5):
    """``S diag(K, 0) S^-1`` with K (rank x rank) and S (n x n) invertible."""
    if rank == 0:
        return Matrix.zeros(n, n)
    K = random_invertible(rng, rank, bound)
    S = random_invertible(rng, n, bound)
    core = block_diag(K, Matrix.zeros(n - rank, n - rank))
    return S @ core @ inverse(S)


def gen_group_invertible(spec, rng=None):
    rng = rng or random.Random(spec.seed)
    return random_group_invertible(rng, spec.n, spec.rank, spec.entry_bound)


def gen_solvable_instance(kind, spec, rng=None):
    """(A, B, C) with a planted solution.

    For ``stein`` it is A + I and B + I that are group invertible.
    """
    rng = rng or random.Random(spec.seed)
    bound = spec.entry_bound
    n = spec.n
    k, rank_b = spec.b_shape
    A = random_group_invertible(rng, n, spec.rank, bound)
    B = random_group_invertible(rng, k, rank_b, bound)
    if kind == "sylvester":
        X = random_matrix(rng, n, k, bound)
        return Instance(kind, A, B, A @ X - X @ B, (X,))
    if kind == "two_sided":
        X = random_matrix(rng, n, k, bound)
        Y = random_matrix(rng, n, k, bound)
        return Instance(kind, A, B, A @ X - Y @ B, (X, Y))
    if kind == "stein":
        A = A - Matrix.identity(n)
        B = B - Matrix.identity(k)
        Y = random_matrix(rng, n, k, bound)
        return Instance(kind, A, B, A @ Y @ B - Y, (Y,))
    raise ValueError(f"unknown instance kind {kind!r}")
