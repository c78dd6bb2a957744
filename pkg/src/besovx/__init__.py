"""Numerical toolkit for variable-exponent Besov/Triebel-Lizorkin norms on
periodic grids: Luxemburg norms, dyadic decompositions, quarkonial
analysis/synthesis, maximal operators, and trace/extension machinery."""

from .errors import (BesovxError, DomainTagError, GridMismatchError,
                     InvalidInputError, NumericRangeError, ResolutionError)
from .exponents import ExponentField, constant_exponent, estimate_log_holder
from .grid import (Grid, GridFunction, forward_transform, inverse_transform,
                   spectral_derivative)
from .lebesgue import luxemburg_norm, modular
from .littlewood_paley import (ResolutionOfUnity, besov_norm,
                               build_resolution, lp_decompose, triebel_norm)
from .maximal import eta_convolve, hl_maximal
from .mixed import DyadicSequence, Lp_ell_q_norm, ell_q_Lp_norm

__version__ = "0.1.0"

__all__ = [
    "BesovxError", "DomainTagError", "GridMismatchError", "InvalidInputError",
    "NumericRangeError", "ResolutionError", "ExponentField",
    "constant_exponent", "estimate_log_holder", "Grid", "GridFunction",
    "forward_transform", "inverse_transform", "spectral_derivative",
    "luxemburg_norm", "modular", "ResolutionOfUnity", "besov_norm",
    "build_resolution", "lp_decompose", "triebel_norm", "eta_convolve",
    "hl_maximal", "DyadicSequence", "Lp_ell_q_norm", "ell_q_Lp_norm",
    "__version__",
]
