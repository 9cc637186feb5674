"""Tensor complementarity toolkit.

Exact sparse tensors and their polynomial maps, the monomial-basis
coefficient matrix with its zero-padded companion LCP, pivoting and
enumeration solvers, uniqueness transfers, and certified class checkers.
"""

from .auxiliary import (
    AuxiliarySystem, aggregate_coefficient, build, lift_solution,
    mixed_block_is_zero, pad_rhs, split_blocks, truncate,
)
from .lcp import (
    LcpInstance, LemkeOutcome, LemkeResult, SolutionPiece, WUniquenessReport,
    enumerate_solutions, lemke_solve, matrix_column_adequate, verify, w_unique,
)
from .linalg import Matrix, Vec, frac, vec
from .monomials import MonomialBasis, basis, evaluate, grlex_compare, lex_compare, lift, mglo_compare
from .tensor import SparseTensor, identity_tensor, transform_diag, transform_perm
from .tcp import (
    OmegaMethod, OmegaReport, TcpFamily, TcpInstance, TcpSolution,
    check_lift_theorem, omega_unique, solve_enumerate, solve_exact_reduced,
    verify_tcp,
)
from .verdicts import Verdict, VerdictStatus

__version__ = "0.1.0"

__all__ = [
    "AuxiliarySystem", "LcpInstance", "LemkeOutcome", "LemkeResult", "Matrix",
    "MonomialBasis", "OmegaMethod", "OmegaReport", "SolutionPiece",
    "SparseTensor", "TcpFamily", "TcpInstance", "TcpSolution", "Vec",
    "Verdict", "VerdictStatus", "WUniquenessReport", "aggregate_coefficient",
    "basis", "build", "check_lift_theorem", "enumerate_solutions", "evaluate",
    "frac", "grlex_compare", "identity_tensor", "lemke_solve", "lex_compare",
    "lift", "lift_solution", "matrix_column_adequate", "mglo_compare",
    "mixed_block_is_zero", "omega_unique", "pad_rhs", "solve_enumerate",
    "solve_exact_reduced", "split_blocks", "transform_diag", "transform_perm",
    "truncate", "vec", "verify", "verify_tcp", "w_unique",
]
