"""Uniform periodic grids on [-T, T)^n and spectral calculus.

All functions are sampled on a uniform grid with N points per axis (N a power
of two).  The Fourier transform follows the symmetric convention

    Ff(xi) = (2 pi)^(-n/2) * integral f(x) exp(-i x.xi) dx,

discretised by the rectangle rule, which is exact for functions that are
band-limited below the Nyquist frequency pi*N/(2T) and decay below round-off
at the boundary (or are periodic).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainTagError, GridMismatchError, InvalidInputError

SPATIAL = "spatial"
SPECTRAL = "spectral"


@dataclass(frozen=True)
class Grid:
    """Uniform periodic sampling of [-T, T)^n, n in {1, 2}."""

    dim: int
    half_extent: float
    samples_per_axis: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise InvalidInputError(f"dim must be 1 or 2, got {self.dim}")
        if self.half_extent <= 0:
            raise InvalidInputError("half_extent must be positive")
        n = self.samples_per_axis
        if n < 8 or (n & (n - 1)) != 0:
            raise InvalidInputError("samples_per_axis must be a power of two >= 8")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_extent / self.samples_per_axis

    @property
    def shape(self) -> tuple:
        return (self.samples_per_axis,) * self.dim

    @property
    def freq_spacing(self) -> float:
        return np.pi / self.half_extent

    @property
    def nyquist(self) -> float:
        return np.pi * self.samples_per_axis / (2.0 * self.half_extent)

    def axis_coords(self) -> np.ndarray:
        """Sample coordinates along one axis, ascending from -T."""
        n = self.samples_per_axis
        return -self.half_extent + self.spacing * np.arange(n)

    def axis_freqs(self) -> np.ndarray:
        """Frequency samples along one axis, ascending from -Nyquist."""
        n = self.samples_per_axis
        return self.freq_spacing * (np.arange(n) - n // 2)

    def coords(self) -> list:
        """Meshgrid coordinate arrays (one per axis, 'ij' indexing)."""
        x = self.axis_coords()
        if self.dim == 1:
            return [x]
        return list(np.meshgrid(x, x, indexing="ij"))

    def freqs(self) -> list:
        xi = self.axis_freqs()
        if self.dim == 1:
            return [xi]
        return list(np.meshgrid(xi, xi, indexing="ij"))

    def radial_freq(self) -> np.ndarray:
        """|xi| on the frequency grid."""
        fs = self.freqs()
        return np.sqrt(sum(f**2 for f in fs))

    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def index_of(self, point) -> tuple:
        """Grid index of an on-grid point; raises if the point is off-grid."""
        point = np.atleast_1d(np.asarray(point, dtype=float))
        idx = (point + self.half_extent) / self.spacing
        rounded = np.rint(idx)
        if np.any(np.abs(idx - rounded) > 1e-9):
            raise InvalidInputError(f"point {point} is not on the grid")
        if np.any(rounded < 0) or np.any(rounded >= self.samples_per_axis):
            raise InvalidInputError(f"point {point} is outside the grid")
        return tuple(int(i) for i in rounded)


@dataclass
class GridFunction:
    """Complex samples of a function on a Grid, in spatial or spectral domain."""

    grid: Grid
    samples: np.ndarray
    domain_tag: str = SPATIAL

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.shape != self.grid.shape:
            raise GridMismatchError(
                f"samples shape {self.samples.shape} != grid shape {self.grid.shape}"
            )
        if self.domain_tag not in (SPATIAL, SPECTRAL):
            raise DomainTagError(f"unknown domain tag {self.domain_tag!r}")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidInputError("samples contain non-finite values")

    def copy(self) -> "GridFunction":
        return GridFunction(self.grid, self.samples.copy(), self.domain_tag)

    def __add__(self, other):
        _check_same_grid(self, other)
        if self.domain_tag != other.domain_tag:
            raise DomainTagError("cannot add functions with different domain tags")
        return GridFunction(self.grid, self.samples + other.samples, self.domain_tag)

    def __sub__(self, other):
        _check_same_grid(self, other)
        if self.domain_tag != other.domain_tag:
            raise DomainTagError("cannot subtract functions with different domain tags")
        return GridFunction(self.grid, self.samples - other.samples, self.domain_tag)

    def __mul__(self, scalar):
        return GridFunction(self.grid, self.samples * scalar, self.domain_tag)

    __rmul__ = __mul__

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.samples)))


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError("grids do not match")


def zeros(grid: Grid, domain_tag: str = SPATIAL) -> GridFunction:
    return GridFunction(grid, np.zeros(grid.shape, dtype=np.complex128), domain_tag)


def from_callable(grid: Grid, func, domain_tag: str = SPATIAL) -> GridFunction:
    """Sample a callable of the coordinate arrays on the grid."""
    pts = grid.coords() if domain_tag == SPATIAL else grid.freqs()
    vals = func(*pts)
    vals = np.broadcast_to(np.asarray(vals, dtype=np.complex128), grid.shape)
    return GridFunction(grid, np.array(vals), domain_tag)


def _transform_scale(grid: Grid) -> float:
    return (2.0 * np.pi) ** (-grid.dim / 2.0) * grid.cell_volume()


def forward_transform(f: GridFunction) -> GridFunction:
    """Continuous-convention Fourier transform on the grid.

    Exact identity: Ff(xi_k) = (2 pi)^(-n/2) h^n sum_j f(x_j) exp(-i x_j.xi_k).
    """
    if f.domain_tag != SPATIAL:
        raise DomainTagError("forward_transform expects a spatial function")
    spec = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(f.samples)))
    return GridFunction(f.grid, spec * _transform_scale(f.grid), SPECTRAL)


def inverse_transform(g: GridFunction) -> GridFunction:
    """Exact inverse of forward_transform on the grid."""
    if g.domain_tag != SPECTRAL:
        raise DomainTagError("inverse_transform expects a spectral function")
    spat = np.fft.fftshift(np.fft.ifftn(np.fft.ifftshift(g.samples)))
    return GridFunction(g.grid, spat / _transform_scale(g.grid), SPATIAL)


def multiplier_apply(theta: GridFunction, f: GridFunction) -> GridFunction:
    """theta(D) f = inverse transform of theta * Ff."""
    _check_same_grid(theta, f)
    if theta.domain_tag != SPECTRAL:
        raise DomainTagError("multiplier must be spectral")
    if f.domain_tag != SPATIAL:
        raise DomainTagError("multiplier_apply expects a spatial function")
    spec = forward_transform(f)
    return inverse_transform(
        GridFunction(f.grid, theta.samples * spec.samples, SPECTRAL)
    )


def spectral_derivative(f: GridFunction, multi_index) -> GridFunction:
    """Partial derivative d^alpha f via multiplication by (i xi)^alpha."""
    if f.domain_tag != SPATIAL:
        raise DomainTagError("spectral_derivative expects a spatial function")
    alpha = tuple(int(a) for a in np.atleast_1d(multi_index))
    if len(alpha) != f.grid.dim or any(a < 0 for a in alpha):
        raise InvalidInputError(f"bad multi-index {alpha} for dim {f.grid.dim}")
    spec = forward_transform(f)
    sym = np.ones(f.grid.shape, dtype=np.complex128)
    for ax_freq, a in zip(f.grid.freqs(), alpha):
        if a:
            sym = sym * (1j * ax_freq) ** a
    return inverse_transform(GridFunction(f.grid, sym * spec.samples, SPECTRAL))


def spectral_energy(f: GridFunction) -> float:
    """sum |f|^2 * cell volume (spatial) or * frequency cell volume (spectral)."""
    if f.domain_tag == SPATIAL:
        vol = f.grid.cell_volume()
    else:
        vol = f.grid.freq_spacing**f.grid.dim
    return float(np.sum(np.abs(f.samples) ** 2) * vol)


# ---------------------------------------------------------------------------
# Serialization: flat little-endian complex64 binary with a JSON sidecar.


def save(f: GridFunction, path) -> None:
    path = Path(path)
    data = f.samples.astype("<c8").ravel()
    path.write_bytes(data.tobytes())
    header = {
        "dim": f.grid.dim,
        "T": f.grid.half_extent,
        "N": f.grid.samples_per_axis,
        "tag": f.domain_tag,
    }
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(header))


def load(path) -> GridFunction:
    path = Path(path)
    header = json.loads(path.with_suffix(path.suffix + ".json").read_text())
    grid = Grid(header["dim"], header["T"], header["N"])
    raw = np.frombuffer(path.read_bytes(), dtype="<c8")
    samples = raw.astype(np.complex128).reshape(grid.shape)
    return GridFunction(grid, samples, header["tag"])


def load_csv(path, half_extent: float) -> GridFunction:
    """Import a 1-D function from CSV rows of `re[,im]` values."""
    raw = np.loadtxt(path, delimiter=",", ndmin=2)
    vals = raw[:, 0] + 1j * (raw[:, 1] if raw.shape[1] > 1 else 0.0)
    grid = Grid(1, half_extent, len(vals))
    return GridFunction(grid, vals, SPATIAL)
