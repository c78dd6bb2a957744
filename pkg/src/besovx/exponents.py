"""Variable exponents p(.), q(.), s(.) sampled on a grid.

Admissible integrability exponents are bounded away from 0 and infinity on
the grid; smoothness exponents only need to be finite.  Log-Holder
diagnostics estimate the local continuity constant and the decay constant
toward the limit at infinity from the samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, InvalidInputError
from .grid import Grid

_MAX_PAIRS = 10**6


@dataclass
class ExponentField:
    """A sampled exponent together with its recomputed bounds.

    role "p" (or "q") enforces strict positivity; role "s" allows any finite
    values.
    """

    grid: Grid
    values: np.ndarray
    limit_at_infinity: float | None = None
    role: str = "p"
    inf_value: float = field(init=False)
    sup_value: float = field(init=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.grid.shape:
            raise GridMismatchError("exponent samples do not match the grid shape")
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError("exponent contains non-finite values")
        self.inf_value = float(np.min(self.values))
        self.sup_value = float(np.max(self.values))
        if self.role in ("p", "q") and self.inf_value <= 0:
            raise InvalidInputError(
                f"integrability exponent must be positive, min={self.inf_value}"
            )

    @property
    def is_constant(self) -> bool:
        return self.inf_value == self.sup_value


def constant_exponent(grid: Grid, value: float, role: str = "p") -> ExponentField:
    return ExponentField(
        grid, np.full(grid.shape, float(value)), limit_at_infinity=float(value), role=role
    )


@dataclass
class LogHolderReport:
    c_local: float
    c_decay: float
    limit_used: float
    admissible: bool


@dataclass
class SigmaField:
    """n * (1/min(1, p, q) - 1), pointwise on the grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if np.any(self.values < 0):
            raise InvalidInputError("sigma values must be non-negative")


def _boundary_band_average(p: ExponentField) -> float:
    grid = p.grid
    coords = grid.coords()
    sup_dist = np.max(np.abs(np.stack(coords)), axis=0)
    band = sup_dist >= 0.9 * grid.half_extent
    return float(np.mean(p.values[band]))


def estimate_log_holder(p: ExponentField) -> LogHolderReport:
    """Sampled local log-Holder constant and decay constant toward p_infinity.

    c_local = max over sampled pairs x != y of |p(x)-p(y)| log(e + 1/|x-y|).
    c_decay = max over the grid of |p(x)-p_inf| log(e + |x|).

    Pair enumeration subsamples deterministically to at most 10^6 pairs.
    """
    if not np.all(np.isfinite(p.values)):
        raise InvalidInputError("non-finite exponent values")
    grid = p.grid
    coords = [c.ravel() for c in grid.coords()]
    vals = p.values.ravel()
    npts = vals.size
    stride = 1
    while (npts // stride) ** 2 > _MAX_PAIRS:
        stride *= 2
    sel = slice(0, None, stride)
    pts = np.stack([c[sel] for c in coords], axis=-1)
    pv = vals[sel]
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.sum(diff**2, axis=-1))
    dp = np.abs(pv[:, None] - pv[None, :])
    mask = dist > 0
    weights = np.zeros_like(dist)
    weights[mask] = np.log(np.e + 1.0 / dist[mask])
    c_local = float(np.max(dp * weights)) if np.any(mask) else 0.0

    limit = (
        p.limit_at_infinity
        if p.limit_at_infinity is not None
        else _boundary_band_average(p)
    )
    radius = np.sqrt(sum(c**2 for c in grid.coords()))
    c_decay = float(np.max(np.abs(p.values - limit) * np.log(np.e + radius)))
    admissible = np.isfinite(c_local) and np.isfinite(c_decay)
    return LogHolderReport(c_local, c_decay, float(limit), bool(admissible))


def combine_holder(p1: ExponentField, p2: ExponentField) -> ExponentField:
    """Harmonic combination 1/p0 = 1/p1 + 1/p2, pointwise."""
    if p1.grid != p2.grid:
        raise GridMismatchError("exponents live on different grids")
    values = 1.0 / (1.0 / p1.values + 1.0 / p2.values)
    limit = None
    if p1.limit_at_infinity is not None and p2.limit_at_infinity is not None:
        limit = 1.0 / (1.0 / p1.limit_at_infinity + 1.0 / p2.limit_at_infinity)
    return ExponentField(p1.grid, values, limit_at_infinity=limit, role="p")


def sigma_of(p: ExponentField, q: ExponentField | None = None) -> SigmaField:
    """sigma_p = n(1/min(1,p) - 1), or sigma_{p,q} = n(1/min(1,p,q) - 1)."""
    if q is not None and q.grid != p.grid:
        raise GridMismatchError("exponents live on different grids")
    n = p.grid.dim
    m = np.minimum(1.0, p.values)
    if q is not None:
        m = np.minimum(m, q.values)
    return SigmaField(p.grid, n * (1.0 / m - 1.0))
