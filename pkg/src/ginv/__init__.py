"""Group inverses and certificates for AX - XB = C, AX - YB = C and AYB - Y = C."""

from .errors import (
    CertificateInvalid,
    DimensionError,
    GinvError,
    HypothesisViolated,
    InternalInconsistency,
    ModeError,
    NotASolution,
    ParseError,
)
from .numeric import FLOAT, RATIONAL, Block2x2, Matrix, assemble, rank_factorize, solve_linear, split
from .geninv import (
    block_group_inverse,
    block_triangular_group_invertible,
    group_inverse,
    inner_inverse,
    inner_inverse_family,
)
from .equivalence import (
    PseudoEquivalenceWitness,
    PseudoSimilarityWitness,
    verify_pseudo_equivalent,
    verify_pseudo_similar,
)
from .sylvester import build_similarity_witness, extract_sylvester_solution, solve_sylvester
from .twosided import (
    build_equivalence_certificate,
    check_two_sided_solvable,
    parameters_for_solution,
    solve_two_sided,
)
from .stein import check_stein_criterion, solve_stein
from .oracle import oracle_stein, oracle_sylvester, oracle_two_sided

__version__ = "0.1.0"
