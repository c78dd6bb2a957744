"""Dyadic resolution of unity on the frequency grid and the B/F norms.

The resolution is built from a smooth radial plateau tau with
chi_{B(2)} <= tau <= chi_{B(3)}: theta_0 = tau and
theta_j = tau(2^-j .) - tau(2^-j+1 .), so that sum_{j<=J} theta_j = 1 on
{|xi| <= 2^(J+1)} and supp theta_j lies in the dyadic annulus
{2^(j-1) <= |xi| <= 2^(j+1)}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, ResolutionError
from .exponents import ExponentField
from .grid import (SPECTRAL, Grid, GridFunction, forward_transform,
                   multiplier_apply)
from .mixed import DyadicSequence, Lp_ell_q_norm, ell_q_Lp_norm
from .profiles import radial_plateau


@dataclass
class ResolutionOfUnity:
    tau: GridFunction
    theta: list
    phi: list
    J: int
    inner: float
    outer: float

    @property
    def grid(self) -> Grid:
        return self.tau.grid


def default_band_count(grid: Grid, outer: float = 2.0) -> int:
    return int(np.floor(np.log2(grid.nyquist / outer)))


def build_resolution(grid: Grid, J: int | None = None,
                     profile: str = "norm") -> ResolutionOfUnity:
    """Construct tau and the dyadic bands theta_0..theta_J on the grid.

    profile "norm" uses the 1 -> 2 plateau, so supp theta_j lies in the
    annulus {2^(j-1) <= |xi| <= 2^(j+1)} required of a dyadic resolution.
    profile "sampling" uses the wider 2 -> 3 plateau paired with the kappa
    sampling kernel (supp theta_j inside B(3 * 2^j) = Q(3 * 2^j) band).
    """
    if profile == "norm":
        inner, outer = 1.0, 2.0
    elif profile == "sampling":
        inner, outer = 2.0, 3.0
    else:
        raise ResolutionError(f"unknown profile {profile!r}")
    if J is None:
        J = default_band_count(grid, outer)
    if outer * 2.0**J > grid.nyquist:
        raise ResolutionError(f"J={J} too large for Nyquist {grid.nyquist:.3g}")
    rho = grid.radial_freq()

    def tau_at(scale):
        return radial_plateau(rho * scale, inner, outer)

    tau = GridFunction(grid, tau_at(1.0), SPECTRAL)
    theta = [tau]
    phi = []
    for j in range(1, J + 1):
        band = tau_at(2.0**-j) - tau_at(2.0 ** (-j + 1))
        gf = GridFunction(grid, band, SPECTRAL)
        theta.append(gf)
        phi.append(gf)
    return ResolutionOfUnity(tau=tau, theta=theta, phi=phi, J=J,
                             inner=inner, outer=outer)


def lp_decompose(f: GridFunction, res: ResolutionOfUnity) -> DyadicSequence:
    """Band pieces theta_j(D) f as a dyadic sequence."""
    if f.grid != res.grid:
        raise GridMismatchError("function and resolution grids differ")
    return DyadicSequence([multiplier_apply(th, f) for th in res.theta])


def tail_energy(f: GridFunction, res: ResolutionOfUnity) -> float:
    """Fraction of spectral energy beyond the last fully covered ball."""
    spec = forward_transform(f)
    power = np.abs(spec.samples) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0
    outside = res.grid.radial_freq() > 2.0 ** (res.J + 1)
    return float(np.sum(power[outside]) / total)


def weighted_bands(f: GridFunction, s: ExponentField,
                   res: ResolutionOfUnity) -> DyadicSequence:
    """{2^(j s(x)) theta_j(D)f(x)}_j."""
    pieces = lp_decompose(f, res)
    weighted = []
    for j, piece in enumerate(pieces):
        w = 2.0 ** (j * s.values)
        weighted.append(GridFunction(f.grid, w * piece.samples, piece.domain_tag))
    return DyadicSequence(weighted)


def besov_norm(f: GridFunction, p: ExponentField, q, s: ExponentField,
               res: ResolutionOfUnity) -> float:
    return ell_q_Lp_norm(weighted_bands(f, s, res), p, q)


def triebel_norm(f: GridFunction, p: ExponentField, q, s: ExponentField,
                 res: ResolutionOfUnity) -> float:
    return Lp_ell_q_norm(weighted_bands(f, s, res), p, q)
