"""Chain complexes of G-families and their 2-cocycles."""

from .complex import Chain, QuandleComplex, boundary, d2_generators
from .cocycles import (
    Cocycle2,
    CocycleError,
    CocycleReport,
    check_cocycle2,
    coboundary,
    format_cocycle,
    lambda_ab,
    nosaka_theta,
    parse_cocycle,
    solve_cocycles2,
    zero_cocycle,
)
from .iso import (
    IChain,
    IComplex,
    chain_map_f,
    chain_map_g,
    i_boundary,
    i_check_cocycle2,
    i_d_generators,
    i_solve_cocycles2,
    pullback_cocycle,
)
