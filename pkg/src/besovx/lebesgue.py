"""Modulars and Luxemburg-Nakano norms for variable-exponent Lebesgue spaces.

The modular is the rectangle-rule value of integral |f(x)|^p(x) dx; the
Luxemburg norm is inf{lambda > 0 : modular(f/lambda) <= 1}, found by
doubling/halving bracketing from lambda = 1 followed by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, NumericRangeError
from .exponents import ExponentField
from .grid import SPATIAL, GridFunction
from .errors import DomainTagError

BISECT_RTOL = 1e-10
MAX_DOUBLINGS = 200


@dataclass
class ModularValue:
    value: float

    def __post_init__(self):
        self.value = float(self.value)
        if self.value < 0:
            raise NumericRangeError("modular must be non-negative")

    def __float__(self):
        return self.value


def modular_array(absvals: np.ndarray, pvals: np.ndarray, cell_volume: float,
                  mask: np.ndarray | None = None) -> float:
    """h^n * sum |f(x_j)|^p(x_j) over (masked) grid points."""
    if mask is not None:
        absvals = absvals[mask]
        pvals = pvals[mask]
    with np.errstate(over="ignore"):
        powed = np.power(absvals, pvals, where=absvals > 0,
                         out=np.zeros_like(absvals, dtype=float))
    return float(cell_volume * np.sum(powed))


def luxemburg_array(absvals: np.ndarray, pvals: np.ndarray, cell_volume: float,
                    mask: np.ndarray | None = None,
                    rtol: float = BISECT_RTOL) -> float:
    """Luxemburg norm of nonnegative samples against sampled exponents."""
    if mask is not None:
        absvals = absvals[mask]
        pvals = pvals[mask]
        mask = None
    if absvals.size == 0 or not np.any(absvals > 0):
        return 0.0

    def rho(lam):
        return modular_array(absvals / lam, pvals, cell_volume)

    lam = 1.0
    if rho(lam) > 1.0:
        for _ in range(MAX_DOUBLINGS):
            lo, lam = lam, 2.0 * lam
            if rho(lam) <= 1.0:
                break
        else:
            raise NumericRangeError("Luxemburg bracket did not close (overflow)")
        hi = lam
    else:
        for _ in range(MAX_DOUBLINGS):
            hi, lam = lam, lam / 2.0
            if rho(lam) > 1.0:
                break
        else:
            # modular stays <= 1 down to 2^-200: norm is numerically 0
            return 0.0
        lo = lam

    while (hi - lo) > rtol * hi:
        mid = 0.5 * (lo + hi)
        if rho(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def _check_inputs(f: GridFunction, p: ExponentField):
    if f.domain_tag != SPATIAL:
        raise DomainTagError("norms are computed on spatial functions")
    if f.grid != p.grid:
        raise GridMismatchError("function and exponent grids differ")


def modular(f: GridFunction, p: ExponentField, region: np.ndarray | None = None) -> ModularValue:
    """Rectangle-rule modular of f against p, optionally restricted to a mask."""
    _check_inputs(f, p)
    return ModularValue(
        modular_array(np.abs(f.samples), p.values, f.grid.cell_volume(), region)
    )


def luxemburg_norm(f: GridFunction, p: ExponentField,
                   region: np.ndarray | None = None) -> float:
    _check_inputs(f, p)
    return luxemburg_array(np.abs(f.samples), p.values, f.grid.cell_volume(), region)
