"""Exact Ext and Yoneda Ext for DG modules over univariate base rings."""

from .complexes import Complex, contraction, homology, soft_truncate
from .dg import DGAlgebra, DGModule, algebra_module, free_module, koszul_algebra, morphism_module
from .extensions import Extension, baer_sum, extension_from_cycle, graded_splitting, is_split, psi
from .linalg import RMatrix, polynomial_ring, quotient_ring, smith_normal_form, solve_linear
from .resolutions import dimension_shift_yext, ext, semifree_resolve

__all__ = [
    "Complex", "contraction", "homology", "soft_truncate",
    "DGAlgebra", "DGModule", "algebra_module", "free_module", "koszul_algebra", "morphism_module",
    "Extension", "baer_sum", "extension_from_cycle", "graded_splitting", "is_split", "psi",
    "RMatrix", "polynomial_ring", "quotient_ring", "smith_normal_form", "solve_linear",
    "dimension_shift_yext", "ext", "semifree_resolve",
]
