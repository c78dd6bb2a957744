"""Hardy-Littlewood maximal operators and eta-kernel convolutions.

Balls are discrete (grid-point membership, periodic distance) and the radius
ladder defaults to the dyadic ladder h*2^k up to the domain half-extent.
Ball averages are evaluated by periodic FFT convolution with the normalized
ball indicator, which is deterministic and exact for the discrete ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, InvalidInputError
from .grid import SPATIAL, Grid, GridFunction
from .errors import DomainTagError


def default_radii(grid: Grid) -> list:
    radii = []
    r = grid.spacing
    while r <= 2.0 * grid.half_extent:
        radii.append(r)
        r *= 2.0
    return radii


def _centered_distance(grid: Grid) -> np.ndarray:
    return np.sqrt(sum(c**2 for c in grid.coords()))


def _periodic_convolve(values: np.ndarray, centered_kernel: np.ndarray) -> np.ndarray:
    """Circular convolution with a kernel given in centered layout."""
    k = np.fft.ifftshift(centered_kernel)
    return np.real(np.fft.ifftn(np.fft.fftn(values) * np.fft.fftn(k)))


def hl_maximal(f: GridFunction, radii=None) -> GridFunction:
    """Discrete Hardy-Littlewood maximal function over a radius ladder."""
    if f.domain_tag != SPATIAL:
        raise DomainTagError("maximal operator acts on spatial functions")
    grid = f.grid
    if radii is None:
        radii = default_radii(grid)
    radii = list(radii)
    if not radii:
        raise InvalidInputError("radius ladder must be nonempty")
    dist = _centered_distance(grid)
    absf = np.abs(f.samples)
    best = np.zeros(grid.shape)
    for r in radii:
        ball = (dist <= r + 1e-12).astype(float)
        count = ball.sum()
        avg = _periodic_convolve(absf, ball) / count
        np.maximum(best, avg, out=best)
    return GridFunction(grid, best, SPATIAL)


def hl_maximal_r(f: GridFunction, r: float, radii=None) -> GridFunction:
    """(M |f|^r)^(1/r) for 0 < r <= 1."""
    if not 0.0 < r <= 1.0:
        raise InvalidInputError(f"r must lie in (0, 1], got {r}")
    powered = GridFunction(f.grid, np.abs(f.samples) ** r, SPATIAL)
    m = hl_maximal(powered, radii)
    return GridFunction(f.grid, np.real(m.samples) ** (1.0 / r), SPATIAL)


def eta_integral(m: float, dim: int) -> float:
    """Continuum integral of (1+|x|)^-m over R^dim (m > dim)."""
    if m <= dim:
        raise InvalidInputError(f"kernel exponent m={m} must exceed dim={dim}")
    if dim == 1:
        return 2.0 / (m - 1.0)
    return 2.0 * np.pi / ((m - 1.0) * (m - 2.0))


@dataclass
class EtaKernel:
    """Samples of 2^(nu n) (1 + |2^nu x|)^-m, rescaled so the discrete
    integral matches the continuum one."""

    grid: Grid
    nu: int
    m_exponent: float
    samples: np.ndarray = field(init=False)
    scale_correction: float = field(init=False)

    def __post_init__(self):
        if self.nu < 0:
            raise InvalidInputError("nu must be non-negative")
        if self.m_exponent <= 0:
            raise InvalidInputError("m must be positive")
        n = self.grid.dim
        dist = _centered_distance(self.grid)
        raw = 2.0 ** (self.nu * n) * (1.0 + 2.0**self.nu * dist) ** (-self.m_exponent)
        discrete = float(raw.sum() * self.grid.cell_volume())
        target = eta_integral(self.m_exponent, n)
        self.scale_correction = target / discrete
        self.samples = raw * self.scale_correction


def eta_convolve(f: GridFunction, nu: int, m: float) -> GridFunction:
    """Periodic convolution with the (renormalized) eta_{nu,m} kernel."""
    if f.domain_tag != SPATIAL:
        raise DomainTagError("eta_convolve acts on spatial functions")
    kernel = EtaKernel(f.grid, nu, m)
    vol = f.grid.cell_volume()
    re = _periodic_convolve(np.real(f.samples), kernel.samples)
    im = _periodic_convolve(np.imag(f.samples), kernel.samples)
    return GridFunction(f.grid, vol * (re + 1j * im), SPATIAL)
