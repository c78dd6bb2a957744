"""Shared smooth profile functions: bump, smoothstep, mollified plateaus.

Every smooth cutoff in the toolkit is built from the single compactly
supported bump exp(-1/(1-u^2)) on (-1, 1), so all regression constants are
reproducible.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import CubicSpline

_TABLE_SIZE = 8193


def bump(u) -> np.ndarray:
    """exp(-1/(1-u^2)) on (-1, 1), zero outside; not normalized."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    v = u[inside]
    out[inside] = np.exp(-1.0 / (1.0 - v**2))
    return out


@lru_cache(maxsize=1)
def bump_mass() -> float:
    u = np.linspace(-1.0, 1.0, _TABLE_SIZE)
    return float(np.trapezoid(bump(u), u))


@lru_cache(maxsize=1)
def _bump_cumulative_spline() -> CubicSpline:
    u = np.linspace(-1.0, 1.0, _TABLE_SIZE)
    c = cumulative_trapezoid(bump(u), u, initial=0.0)
    c /= c[-1]
    return CubicSpline(u, c)


def bump_cumulative(u) -> np.ndarray:
    """Normalized antiderivative of the bump: 0 at u<=-1, 1 at u>=1."""
    u = np.asarray(u, dtype=float)
    out = np.where(u >= 1.0, 1.0, 0.0)
    inside = np.abs(u) < 1.0
    if np.any(inside):
        out = np.array(out, dtype=float)
        out[inside] = _bump_cumulative_spline()(u[inside])
    return out


@lru_cache(maxsize=8)
def _bump_derivative_callable(order: int):
    """Closed-form derivative of the bump via symbolic differentiation."""
    import sympy as sp

    u = sp.Symbol("u")
    expr = sp.exp(-1 / (1 - u**2))
    for _ in range(order):
        expr = sp.diff(expr, u)
    return sp.lambdify(u, expr, "numpy")

def bump_derivative(u, order: int) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0 - 1e-12
    if np.any(inside):
        out[inside] = _bump_derivative_callable(order)(u[inside])
    return out


def smoothstep(t) -> np.ndarray:
    """Smooth transition: 0 for t <= 0, 1 for t >= 1."""
    return bump_cumulative(2.0 * np.asarray(t, dtype=float) - 1.0)


def radial_plateau(rho, inner: float, outer: float) -> np.ndarray:
    """1 for rho <= inner, 0 for rho >= outer, smooth monotone in between."""
    rho = np.asarray(rho, dtype=float)
    return 1.0 - smoothstep((rho - inner) / (outer - inner))
