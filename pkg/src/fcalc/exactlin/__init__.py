"""Exact linear algebra over Z, Q and F_p.

Matrices, Smith normal form, finitely presented modules and their maps,
with kernels, cokernels, images, coinvariants and exactness checks.
"""
from .coeff import Coeff, Z, Q, F2
from .matrix import Mat, det
from .smith import RowBasis, left_kernel, row_span_basis, snf, snf_diagonal, solve_left
from .presented import (
    AffineSolver,
    ExactLinError,
    ModuleMap,
    PresentedModule,
    check_exact,
    coinvariants,
    cokernel,
    descend_to_quotient,
    direct_sum_modules,
    factor_through,
    image_in,
    invert_iso,
    is_isomorphism,
    kernel,
    lift_through,
    preimage_generators,
    solve_mod,
)

__all__ = [
    "Coeff", "Z", "Q", "F2", "Mat", "det",
    "RowBasis", "left_kernel", "row_span_basis", "snf", "snf_diagonal", "solve_left",
    "AffineSolver", "ExactLinError", "ModuleMap", "PresentedModule",
    "check_exact", "coinvariants", "cokernel", "descend_to_quotient",
    "direct_sum_modules", "factor_through", "image_in", "invert_iso",
    "is_isomorphism", "kernel", "lift_through", "preimage_generators",
    "solve_mod",
]
