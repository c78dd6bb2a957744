"""Seeded reference corpora: band-limited trigonometric polynomials, Gaussian
mixtures, smooth exponent profiles, and atom families for regression tests.

Everything is deterministic under a fixed seed; generators draw from
numpy's default_rng only.
"""

from __future__ import annotations

import numpy as np

from .decomposition import DyadicCube, QuarkBasis, multi_indices
from .errors import InvalidInputError
from .exponents import ExponentField
from .grid import SPATIAL, SPECTRAL, Grid, GridFunction, inverse_transform
from .profiles import radial_plateau


def band_limited(grid: Grid, rng, band: float, decay: float = 0.5) -> GridFunction:
    """Random trigonometric polynomial with spectrum inside |xi| <= band.

    Spectral coefficients are complex Gaussians damped by exp(-decay |xi|),
    so the spatial samples are smooth and O(1).
    """
    if band >= grid.nyquist:
        raise InvalidInputError("requested band exceeds the grid Nyquist")
    rho = grid.radial_freq()
    inside = rho <= band
    spec = np.zeros(grid.shape, dtype=np.complex128)
    k = int(inside.sum())
    spec[inside] = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) \
        * np.exp(-decay * rho[inside])
    f = inverse_transform(GridFunction(grid, spec, SPECTRAL))
    peak = f.sup_norm()
    return f * (1.0 / peak) if peak > 0 else f


def gaussian_mix(grid: Grid, rng, count: int = 3) -> GridFunction:
    """Sum of Gaussians with random centers in the inner half of the domain
    and widths small enough to decay below round-off at the boundary."""
    T = grid.half_extent
    out = np.zeros(grid.shape, dtype=np.complex128)
    for _ in range(count):
        c = rng.uniform(-0.4 * T, 0.4 * T, size=grid.dim)
        w = rng.uniform(0.05 * T, 0.12 * T)
        a = rng.standard_normal() + 1j * rng.standard_normal()
        q = sum((x - ci) ** 2 for x, ci in zip(grid.coords(), c))
        out += a * np.exp(-q / (2.0 * w**2))
    f = GridFunction(grid, out, SPATIAL)
    peak = f.sup_norm()
    return f * (1.0 / peak) if peak > 0 else f


def smooth_corpus(grid: Grid, count: int, seed: int,
                  band: float | None = None) -> list:
    """Alternating band-limited and Gaussian-mixture functions."""
    rng = np.random.default_rng(seed)
    if band is None:
        band = min(0.5 * grid.nyquist, 20.0)
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append(band_limited(grid, rng, band))
        else:
            out.append(gaussian_mix(grid, rng))
    return out


def smooth_exponent(grid: Grid, base: float, amplitude: float, seed: int,
                    role: str = "p") -> ExponentField:
    """base + smooth random perturbation that dies off toward the boundary,
    so the limit at infinity is the base value and the field is log-Holder."""
    rng = np.random.default_rng(seed)
    T = grid.half_extent
    pert = np.zeros(grid.shape)
    for _ in range(3):
        c = rng.uniform(-0.4 * T, 0.4 * T, size=grid.dim)
        w = rng.uniform(0.1 * T, 0.25 * T)
        q = sum((x - ci) ** 2 for x, ci in zip(grid.coords(), c))
        pert += rng.uniform(-1.0, 1.0) * np.exp(-q / (2.0 * w**2))
    sup_dist = np.max(np.abs(np.stack(grid.coords())), axis=0)
    envelope = radial_plateau(sup_dist / T, 0.5, 0.85)
    scale = np.max(np.abs(pert))
    if scale > 0:
        pert *= amplitude / scale
    return ExponentField(grid, base + pert * envelope,
                         limit_at_infinity=base, role=role)


def restrict_to_line(e: ExponentField) -> ExponentField:
    """Exponent values on the boundary row x_n = 0 as a 1-D field."""
    if e.grid.dim != 2:
        raise InvalidInputError("hyperplane restriction needs a 2-D exponent")
    line = Grid(1, e.grid.half_extent, e.grid.samples_per_axis)
    vals = e.values[:, e.grid.samples_per_axis // 2]
    return ExponentField(line, vals.copy(), e.limit_at_infinity, e.role)


def trace_exponent_triple(grid: Grid, seed: int) -> tuple:
    """(p, q, s) with p, q >= 3/2 and s > 1/p + margin, so the trace-space
    smoothness condition s - [1/p + (n-1)(1/min(1,p) - 1)] > 0 holds with
    room to spare (and also with min(1, p, q))."""
    p = smooth_exponent(grid, 2.0, 0.4, seed, role="p")
    q = smooth_exponent(grid, 2.0, 0.4, seed + 1, role="q")
    s_vals = 1.0 / p.values + 0.5 \
        + 0.2 * (smooth_exponent(grid, 0.0, 1.0, seed + 2, role="s").values)
    s = ExponentField(grid, s_vals, limit_at_infinity=None, role="s")
    return p, q, s


def make_atom(grid: Grid, cube: DyadicCube, K: int, L: int, rng,
              basis: QuarkBasis | None = None) -> GridFunction:
    """Random [K, L]-atom: a quark-bump profile on the cube times a random
    low-degree polynomial, moment-corrected when L >= 0 and rescaled to meet
    the derivative bounds with a 10% margin."""
    if basis is None:
        basis = QuarkBasis(grid.dim)
    t = [2.0**cube.nu * x - mi - 0.5
         for x, mi in zip(grid.coords(), cube.m)]
    window = np.ones(grid.shape)
    for ti in t:
        window = window * basis.mu(np.asarray(ti))
    poly = np.zeros(grid.shape, dtype=np.complex128)
    for beta in multi_indices(grid.dim, 2):
        mono = np.ones(grid.shape)
        for ti, b in zip(t, beta):
            if b:
                mono = mono * np.asarray(ti) ** b
        poly += (rng.standard_normal() + 1j * rng.standard_normal()) * mono
    vals = window * poly

    if L >= 0:
        # project out the moments against windowed monomials
        basis_fns = []
        for beta in multi_indices(grid.dim, L):
            mono = np.ones(grid.shape)
            for ti, b in zip(t, beta):
                if b:
                    mono = mono * np.asarray(ti) ** b
            basis_fns.append(window * mono)
        momdirs = multi_indices(grid.dim, L)
        vol = grid.cell_volume()

        def moments(arr):
            out = []
            for beta in momdirs:
                mono = np.ones(grid.shape)
                for x, b in zip(grid.coords(), beta):
                    if b:
                        mono = mono * x**b
                out.append(vol * np.sum(mono * arr))
            return np.array(out)

        A = np.stack([moments(bf) for bf in basis_fns], axis=1)
        coef = np.linalg.solve(A, moments(vals))
        for c, bf in zip(coef, basis_fns):
            vals = vals - c * bf

    f = GridFunction(grid, vals, SPATIAL)
    from .grid import spectral_derivative
    worst = 0.0
    for alpha in multi_indices(grid.dim, K):
        bound = 2.0 ** (cube.nu * sum(alpha))
        worst = max(worst, spectral_derivative(f, alpha).sup_norm() / bound)
    if worst > 0:
        f = f * (1.0 / (1.1 * worst))
    return f


def lower_half_fixture(grid: Grid, seed: int) -> GridFunction:
    """Smooth function supported in {x_n <= -0.05 T}, kept away from the
    periodic seam at x_n = -T so wrap-around does not contaminate support
    checks."""
    rng = np.random.default_rng(seed)
    T = grid.half_extent
    out = np.zeros(grid.shape, dtype=np.complex128)
    xs = grid.coords()
    for _ in range(3):
        c = list(rng.uniform(-0.4 * T, 0.4 * T, size=grid.dim))
        c[-1] = rng.uniform(-0.45 * T, -0.2 * T)
        w = rng.uniform(0.05 * T, 0.1 * T)
        a = rng.standard_normal() + 1j * rng.standard_normal()
        q = sum((x - ci) ** 2 for x, ci in zip(xs, c))
        out += a * np.exp(-q / (2.0 * w**2))
    cutoff = radial_plateau(xs[-1] / T, -0.15, -0.05)
    f = GridFunction(grid, out * cutoff, SPATIAL)
    peak = f.sup_norm()
    return f * (1.0 / peak) if peak > 0 else f
