"""Spectral solver for the Caputo time-fractional diffusion equation on [0, 1].

The heavy lifting lives in the compiled ``_fracspec`` extension; this package
re-exports it and adds a couple of array conveniences.
"""

from ._fracspec import (
    BoundarySpec,
    BracketFailure,
    EigenPair,
    GridSolution,
    InvalidArgument,
    NonConvergence,
    NumericalError,
    QuadratureFailure,
    SingularSystem,
    SpectralSolution,
    ToleranceNotReached,
    caputo_l1,
    check_gap_bound,
    eigen_gap_table,
    eigenpairs,
    fd_solve,
    mittag_leffler,
    ml_integral,
    ml_series,
    robin_char,
    solve_spectral,
)

__all__ = [
    "BoundarySpec",
    "BracketFailure",
    "EigenPair",
    "GridSolution",
    "InvalidArgument",
    "NonConvergence",
    "NumericalError",
    "QuadratureFailure",
    "SingularSystem",
    "SpectralSolution",
    "ToleranceNotReached",
    "caputo_l1",
    "check_gap_bound",
    "eigen_gap_table",
    "eigenpairs",
    "fd_solve",
    "mittag_leffler",
    "ml_integral",
    "ml_series",
    "robin_char",
    "solve_spectral",
    "dirichlet",
    "robin",
]


def dirichlet():
    return BoundarySpec.dirichlet()


def robin(beta):
    return BoundarySpec.robin(beta)
