"""Dyadic-cube coefficient arrays, atoms, and the quarkonial machinery.

Quarks are (beta qu)_{nu,m}(x) = psi^beta(2^nu x - m) with psi a product of
mollified unit hats, so sum_m psi(x - m) = 1 exactly.  Analysis samples the
Littlewood-Paley bands on the dyadic lattices and pushes them through the
derivative cache of the sampling kernel kappa; on the periodic grid the
band-limited sampling identity is exact for the periodized kernel, which is
what the discrete transform produces, so analysis + synthesis round-trips up
to the Taylor tail in |beta|.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import (DomainTagError, GridMismatchError, InvalidInputError,
                     ResolutionError)
from .exponents import ExponentField, sigma_of
from .grid import (SPATIAL, SPECTRAL, Grid, GridFunction, forward_transform,
                   inverse_transform, multiplier_apply, spectral_derivative,
                   zeros)
from .littlewood_paley import ResolutionOfUnity
from .mixed import DyadicSequence, Lp_ell_q_norm, ell_q_Lp_norm
from .profiles import bump_cumulative, bump_derivative, bump_mass, radial_plateau

KAPPA_INNER = 3.0
KAPPA_OUTER = 3.0 + 1.0 / 100.0


# ---------------------------------------------------------------------------
# Dyadic cubes and double-index coefficient arrays.


@dataclass(frozen=True)
class DyadicCube:
    """Q_{nu,m} = prod_i [2^-nu m_i, 2^-nu (m_i + 1)), side 2^-nu."""

    nu: int
    m: tuple

    def __post_init__(self):
        if self.nu < 0:
            raise InvalidInputError("cube level nu must be >= 0")
        object.__setattr__(self, "m", tuple(int(v) for v in np.atleast_1d(self.m)))

    @property
    def dim(self) -> int:
        return len(self.m)

    @property
    def side(self) -> float:
        return 2.0**-self.nu

    def lower(self) -> np.ndarray:
        return self.side * np.asarray(self.m, dtype=float)

    def center(self) -> np.ndarray:
        return self.side * (np.asarray(self.m, dtype=float) + 0.5)

    def index_slices(self, grid: Grid) -> tuple:
        """Per-axis grid index slices covering the cube, or raise."""
        if self.dim != grid.dim:
            raise GridMismatchError("cube dimension does not match the grid")
        step = _lattice_step(grid, self.nu)
        slices = []
        for mi in self.m:
            start = mi * step + grid.samples_per_axis // 2
            if start < 0 or start + step > grid.samples_per_axis:
                raise InvalidInputError(f"cube {self} outside grid")
            slices.append(slice(start, start + step))
        return tuple(slices)

    def indicator(self, grid: Grid) -> np.ndarray:
        out = np.zeros(grid.shape)
        out[self.index_slices(grid)] = 1.0
        return out


def _lattice_step(grid: Grid, nu: int) -> int:
    """Grid points per lattice cell at level nu (2^-nu must be a multiple of h)."""
    step = 1.0 / (2.0**nu * grid.spacing)
    if abs(step - round(step)) > 1e-9 or round(step) < 1:
        raise ResolutionError(f"level {nu} lattice finer than the grid spacing")
    half = 2.0**nu * grid.half_extent
    if abs(half - round(half)) > 1e-9:
        raise ResolutionError("lattice is not aligned with the domain boundary")
    return int(round(step))


def _lattice_count(grid: Grid, nu: int) -> int:
    return grid.samples_per_axis // _lattice_step(grid, nu)


def _as_ituple(v) -> tuple:
    if isinstance(v, tuple):
        return v
    if isinstance(v, (list, np.ndarray)):
        return tuple(int(x) for x in v)
    return (int(v),)


@dataclass
class CoefficientArray:
    """Finitely supported double-index sequence {lambda_{nu,m}}."""

    entries: dict
    nu_max: int

    def __post_init__(self):
        clean = {}
        for (nu, m), v in self.entries.items():
            nu = int(nu)
            if nu < 0 or nu > self.nu_max:
                raise InvalidInputError(f"coefficient level {nu} out of range")
            clean[(nu, _as_ituple(m))] = complex(v)
        self.entries = clean

    def __len__(self):
        return len(self.entries)

    def level(self, nu: int) -> dict:
        return {m: v for (lv, m), v in self.entries.items() if lv == nu}

    def shifted(self, l) -> "CoefficientArray":
        """Shift every m-index by the integer vector l."""
        l = tuple(int(x) for x in np.atleast_1d(l))
        return CoefficientArray(
            {(nu, tuple(mi + li for mi, li in zip(m, l))): v
             for (nu, m), v in self.entries.items()},
            self.nu_max,
        )


def step_functions(lam: CoefficientArray, grid: Grid,
                   s: ExponentField | None = None) -> DyadicSequence:
    """Per-level step functions 2^(nu s(x)) sum_m lambda_{nu,m} chi_{nu,m}(x)."""
    seq = []
    for nu in range(lam.nu_max + 1):
        dense = np.zeros(grid.shape, dtype=np.complex128)
        for m, v in lam.level(nu).items():
            dense[DyadicCube(nu, m).index_slices(grid)] += v
        if s is not None:
            dense = dense * 2.0 ** (nu * s.values)
        seq.append(GridFunction(grid, dense, SPATIAL))
    return DyadicSequence(seq)


def seq_norm_b(lam: CoefficientArray, p: ExponentField, q,
               s: ExponentField) -> float:
    """l^q(L^p) norm of the per-level step functions of lambda."""
    return ell_q_Lp_norm(step_functions(lam, p.grid, s), p, q)


def seq_norm_f(lam: CoefficientArray, p: ExponentField, q,
               s: ExponentField) -> float:
    """L^p(l^q) norm of the per-level step functions of lambda."""
    return Lp_ell_q_norm(step_functions(lam, p.grid, s), p, q)


# ---------------------------------------------------------------------------
# Atom validation.


@dataclass
class AtomReport:
    support_ok: bool
    leakage: float
    derivative_ok: bool
    derivative_margins: dict
    moments_ok: bool
    moment_values: dict

    @property
    def passed(self) -> bool:
        return self.support_ok and self.derivative_ok and self.moments_ok


def validate_atom(a: GridFunction, K: int, L: int, cube: DyadicCube,
                  gamma: float, moment_tol: float = 1e-8) -> AtomReport:
    """Check the [K, L]-atom conditions for a centered at the cube.

    Support must stay inside gamma * Q (relative leakage <= 1e-12), the
    sup-norms of d^alpha a for |alpha| <= K must not exceed 2^(nu |alpha|),
    and the moments integral x^beta a dx for |beta| <= L must vanish up to
    moment_tol.  L <= -1 skips the moment checks.
    """
    if gamma <= 1.0:
        raise InvalidInputError("gamma must exceed 1")
    grid = a.grid
    if cube.dim != grid.dim:
        raise GridMismatchError("cube dimension does not match the grid")
    peak = a.sup_norm()

    center = cube.center()
    half = 0.5 * gamma * cube.side
    outside = np.zeros(grid.shape, dtype=bool)
    for c, ci in zip(grid.coords(), center):
        outside |= np.abs(c - ci) > half + 1e-12
    leakage = 0.0
    if peak > 0 and np.any(outside):
        leakage = float(np.max(np.abs(a.samples[outside])) / peak)
    support_ok = leakage <= 1e-12

    margins = {}
    derivative_ok = True
    for alpha in multi_indices(grid.dim, K):
        bound = 2.0 ** (cube.nu * sum(alpha))
        margins[alpha] = spectral_derivative(a, alpha).sup_norm() / bound
        if margins[alpha] > 1.0 + 1e-9:
            derivative_ok = False

    moment_values = {}
    moments_ok = True
    if L >= 0:
        vol = grid.cell_volume()
        for beta in multi_indices(grid.dim, L):
            mono = np.ones(grid.shape)
            for c, b in zip(grid.coords(), beta):
                if b:
                    mono = mono * c**b
            val = complex(vol * np.sum(mono * a.samples))
            moment_values[beta] = val
            if abs(val) > moment_tol:
                moments_ok = False

    return AtomReport(support_ok, leakage, derivative_ok, margins,
                      moments_ok, moment_values)


def multi_indices(dim: int, order_max: int) -> list:
    """All multi-indices beta with |beta| <= order_max, lexicographic."""
    if order_max < 0:
        return []
    return [b for b in product(range(order_max + 1), repeat=dim)
            if sum(b) <= order_max]


# ---------------------------------------------------------------------------
# The quark basis psi^beta(2^nu x - m).


@dataclass
class QuarkBasis:
    """psi(x) = prod_i mu(x_i) with mu a unit hat mollified at scale
    mollify_radius, so sum_m psi(x - m) = 1 exactly and
    supp psi in B(2^r), r = log2((1/2 + radius) sqrt(n))."""

    dim: int
    mollify_radius: float = 0.05
    rho: int = 2
    r: float = field(init=False)

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise InvalidInputError("dim must be 1 or 2")
        if not 0.0 < self.mollify_radius < 0.5:
            raise InvalidInputError("mollify_radius must lie in (0, 1/2)")
        self.rho = int(self.rho)
        self.r = math.log2((0.5 + self.mollify_radius) * math.sqrt(self.dim))
        if self.rho <= self.r:
            raise InvalidInputError(f"rho={self.rho} must exceed r={self.r:.3f}")

    @property
    def support_half_width(self) -> float:
        return 0.5 + self.mollify_radius

    def mu(self, t) -> np.ndarray:
        w = self.mollify_radius
        return bump_cumulative((np.asarray(t, float) + 0.5) / w) \
            - bump_cumulative((np.asarray(t, float) - 0.5) / w)

    def mu_derivative(self, t, order: int) -> np.ndarray:
        if order == 0:
            return self.mu(t)
        w = self.mollify_radius
        t = np.asarray(t, dtype=float)
        scale = 1.0 / (w**order * bump_mass())
        return scale * (bump_derivative((t + 0.5) / w, order - 1)
                        - bump_derivative((t - 0.5) / w, order - 1))

    def quark_axis(self, t, b: int) -> np.ndarray:
        """1-D factor t^b mu(t)."""
        t = np.asarray(t, dtype=float)
        return t**b * self.mu(t) if b else self.mu(t)


def quark_eval(beta, nu: int, m, basis: QuarkBasis, grid: Grid) -> GridFunction:
    """Samples of psi^beta(2^nu x - m) on the grid (not wrapped)."""
    beta = tuple(int(b) for b in np.atleast_1d(beta))
    m = tuple(int(v) for v in np.atleast_1d(m))
    if len(beta) != grid.dim or len(m) != grid.dim:
        raise InvalidInputError("beta and m must have one component per axis")
    x = grid.axis_coords()
    vals = None
    for axis, (b, mi) in enumerate(zip(beta, m)):
        factor = basis.quark_axis(2.0**nu * x - mi, b)
        if grid.dim == 2:
            factor = factor.reshape(-1, 1) if axis == 0 else factor.reshape(1, -1)
        vals = factor if vals is None else vals * factor
    return GridFunction(grid, np.broadcast_to(vals, grid.shape).copy(), SPATIAL)


# ---------------------------------------------------------------------------
# The sampling kernel kappa.


def _axis_plateau(grid: Grid, scale: float = 1.0) -> np.ndarray:
    return radial_plateau(np.abs(grid.axis_freqs()) * scale, KAPPA_INNER,
                          KAPPA_OUTER)


def _axis_inverse(grid: Grid, spec_vals: np.ndarray) -> np.ndarray:
    """1-D inverse transform of a centered axis spectrum (same convention)."""
    scale = (2.0 * np.pi) ** -0.5 * grid.spacing
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(spec_vals))) / scale


@dataclass
class KappaKernel:
    """Product plateau kappa with chi_{Q(3)} <= kappa <= chi_{Q(3.01)} and
    the spectral derivative cache of its (periodized) inverse transform."""

    grid: Grid
    beta_max: int
    kappa: GridFunction = field(init=False)
    inv_kappa: GridFunction = field(init=False)
    _axis_cache: dict = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        if self.grid.nyquist <= KAPPA_OUTER:
            raise ResolutionError("grid Nyquist below the kappa band edge")
        axis = _axis_plateau(self.grid)
        spec = axis if self.grid.dim == 1 else np.outer(axis, axis)
        self.kappa = GridFunction(self.grid, spec, SPECTRAL)
        self.inv_kappa = inverse_transform(self.kappa)

    def inv_kappa_derivative(self, beta) -> GridFunction:
        """d^beta of the inverse transform of kappa (exact, spectral)."""
        beta = tuple(int(b) for b in np.atleast_1d(beta))
        return spectral_derivative(self.inv_kappa, beta)

    def level_axis_kernel(self, nu: int, order: int) -> np.ndarray:
        """1-D spatial samples of the order-th derivative of the inverse
        transform of kappa(. / 2^nu) along one axis."""
        key = (nu, order)
        if key not in self._axis_cache:
            if KAPPA_OUTER * 2.0**nu > self.grid.nyquist:
                raise ResolutionError(f"kappa band at level {nu} exceeds Nyquist")
            xi = self.grid.axis_freqs()
            spec = _axis_plateau(self.grid, 2.0**-nu) * (1j * xi) ** order
            self._axis_cache[key] = _axis_inverse(self.grid, spec)
        return self._axis_cache[key]


def build_kappa(grid: Grid, beta_max: int) -> KappaKernel:
    return KappaKernel(grid, beta_max)


def phi_transform_synthesize(samples: CoefficientArray, kernel: KappaKernel,
                             R: float, method: str = "spectral") -> GridFunction:
    """Reconstruct a band-limited f (supp Ff in Q(3R)) from f(m/R).

    method "spectral" places the samples on the rate-R lattice, transforms,
    multiplies by kappa(. / R), and inverts; on the periodic grid this equals
    the lattice sum against the periodized kernel and is exact for periodic
    band-limited f, but requires the sample indices to sit inside the grid.
    method "direct" evaluates the truncated lattice sum against the
    non-periodized kernel and accepts sample indices beyond the grid window
    (needed for non-periodic f, whose reconstruction tail decays slowly).
    """
    grid = kernel.grid
    nu = round(math.log2(R))
    if abs(2.0**nu - R) > 1e-9 * R or nu < 0:
        raise InvalidInputError("sampling rate R must be a dyadic integer 2^nu")
    if KAPPA_OUTER * R > grid.nyquist:
        raise ResolutionError("sampling band Q(3R) exceeds the grid Nyquist")
    if method == "direct":
        return _phi_synthesize_direct(samples, grid, nu)
    if method != "spectral":
        raise InvalidInputError(f"unknown method {method!r}")
    step = _lattice_step(grid, nu)
    half = grid.samples_per_axis // 2
    comb = np.zeros(grid.shape, dtype=np.complex128)
    for m, v in samples.level(nu).items():
        idx = tuple(mi * step + half for mi in m)
        if any(i < 0 or i >= grid.samples_per_axis for i in idx):
            raise InvalidInputError(f"sample index {m} outside the grid window")
        comb[idx] = v
    spec = forward_transform(GridFunction(grid, comb, SPATIAL))
    spec = GridFunction(grid, spec.samples * _level_kappa(kernel, nu), SPECTRAL)
    upsample = (2.0**-nu / grid.spacing) ** grid.dim
    return inverse_transform(spec) * upsample


def continuum_kernel_table(spacing: float, reach: float) -> np.ndarray:
    """The 1-D inverse transform of the kappa plateau tabulated on the lattice
    j * spacing, |j * spacing| <= reach, with negligible periodization (the
    auxiliary period is at least four times the requested reach)."""
    count = int(math.ceil(reach / spacing))
    n_aux = 1 << max(8, int(math.ceil(math.log2(8.0 * count))))
    aux = Grid(1, spacing * n_aux / 2.0, n_aux)
    if aux.nyquist <= KAPPA_OUTER:
        raise ResolutionError("lattice spacing too coarse for the kappa band")
    vals = _axis_inverse(aux, _axis_plateau(aux)).real
    center = n_aux // 2
    return vals[center - count: center + count + 1]


def _phi_synthesize_direct(samples: CoefficientArray, grid: Grid,
                           nu: int) -> GridFunction:
    level = samples.level(nu)
    if not level:
        return zeros(grid)
    R = 2.0**nu
    x = R * grid.axis_coords()
    m_lists = []
    for axis in range(grid.dim):
        m_lists.append(np.array(sorted({m[axis] for m in level}), dtype=np.int64))
    reach = max(abs(x[0]), abs(x[-1])) \
        + max(max(abs(ml[0]), abs(ml[-1])) for ml in m_lists) + 1.0
    spacing = R * grid.spacing
    table = continuum_kernel_table(spacing, reach)
    center = len(table) // 2
    const = (2.0 * np.pi) ** (-grid.dim / 2.0)

    def axis_matrix(ml):
        idx = np.rint((x[:, None] - ml[None, :]) / spacing).astype(np.int64)
        return table[idx + center]

    if grid.dim == 1:
        vec = np.zeros(len(m_lists[0]), dtype=np.complex128)
        pos = {int(m): i for i, m in enumerate(m_lists[0])}
        for m, v in level.items():
            vec[pos[m[0]]] += v
        out = const * axis_matrix(m_lists[0]) @ vec
    else:
        p1 = {int(m): i for i, m in enumerate(m_lists[0])}
        p2 = {int(m): i for i, m in enumerate(m_lists[1])}
        slab = np.zeros((len(m_lists[0]), len(m_lists[1])), dtype=np.complex128)
        for m, v in level.items():
            slab[p1[m[0]], p2[m[1]]] += v
        out = const * axis_matrix(m_lists[0]) @ slab @ axis_matrix(m_lists[1]).T
    return GridFunction(grid, out, SPATIAL)


def _level_kappa(kernel: KappaKernel, nu: int) -> np.ndarray:
    axis = _axis_plateau(kernel.grid, 2.0**-nu)
    return axis if kernel.grid.dim == 1 else np.outer(axis, axis)


# ---------------------------------------------------------------------------
# Quark coefficients, analysis, synthesis, norm.


@dataclass
class QuarkCoefficients:
    """Finitely supported triple-index sequence {lambda^beta_{nu,m}}.

    trusted skips per-entry canonicalization; used internally where the
    entries are constructed with canonical key types already.
    """

    entries: dict
    beta_max: int
    rho: int
    trusted: bool = False

    def __post_init__(self):
        if self.trusted:
            return
        clean = {}
        for (beta, nu, m), v in self.entries.items():
            beta = _as_ituple(beta)
            if sum(beta) > self.beta_max:
                raise InvalidInputError(f"|beta| of {beta} exceeds {self.beta_max}")
            clean[(beta, int(nu), _as_ituple(m))] = complex(v)
        self.entries = clean

    def __len__(self):
        return len(self.entries)

    def represented_betas(self) -> list:
        return sorted({beta for (beta, _, _) in self.entries})

    def beta_slice(self, beta) -> CoefficientArray:
        beta = _as_ituple(beta)
        sliced = {(nu, m): v for (b, nu, m), v in self.entries.items()
                  if b == beta}
        nu_max = max((nu for (nu, _) in sliced), default=0)
        return CoefficientArray(sliced, nu_max)


def save_quark_coefficients(lam: QuarkCoefficients, path) -> None:
    """JSON-lines export, one record {beta, nu, m, re, im} per coefficient."""
    with Path(path).open("w") as fh:
        for (beta, nu, m), v in sorted(lam.entries.items()):
            fh.write(json.dumps({"beta": list(beta), "nu": nu, "m": list(m),
                                 "re": v.real, "im": v.imag}) + "\n")


def load_quark_coefficients(path, rho: int = 2) -> QuarkCoefficients:
    entries = {}
    with Path(path).open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            key = (tuple(rec["beta"]), int(rec["nu"]), tuple(rec["m"]))
            entries[key] = complex(rec["re"], rec["im"])
    beta_max = max((sum(b) for (b, _, _) in entries), default=0)
    return QuarkCoefficients(entries, beta_max, rho)


def default_nu_max(grid: Grid, res: ResolutionOfUnity, rho: int) -> int:
    """Deepest band whose analysis lattice still lives on the grid."""
    depth = int(math.floor(math.log2(1.0 / grid.spacing))) - rho
    return max(0, min(res.J, depth))


def quark_analyze(f: GridFunction, basis: QuarkBasis, kernel: KappaKernel,
                  res: ResolutionOfUnity, nu_max: int | None = None,
                  beta_max: int = 6, window: float | None = None,
                  drop_tol: float = 1e-12) -> QuarkCoefficients:
    """Quark coefficients of f.

    Lambda_{0,m} = (2 pi)^(-n/2) tau(D)f(m) and
    Lambda_{nu,m} = (2 pi)^(-n/2) phi_nu(D)f(m / 2^nu), then

        lambda^beta_{nu+rho,l}
            = (2^(-rho |beta|) / beta!) sum_m Lambda_{nu,m}
              d^beta k((l / 2^rho) - m)

    with k the (periodized) inverse transform of kappa rescaled to the band.
    The dimensional constant is carried here so synthesis is plain summation.
    window, if set, truncates the kernel sum to |l/2^rho - m|_inf <= window;
    the default keeps the full (periodic) lattice sum, which is exact.
    """
    if f.domain_tag != SPATIAL:
        raise DomainTagError("quark_analyze expects a spatial function")
    grid = f.grid
    if grid != kernel.grid or grid != res.grid:
        raise GridMismatchError("function, kernel, and resolution grids differ")
    if basis.dim != grid.dim:
        raise InvalidInputError("basis dimension does not match the grid")
    rho = basis.rho
    if nu_max is None:
        nu_max = default_nu_max(grid, res, rho)
    if nu_max > res.J:
        raise ResolutionError(f"band count {nu_max} exceeds resolution J={res.J}")
    n = grid.dim
    N = grid.samples_per_axis
    const = (2.0 * np.pi) ** (-n / 2.0)

    slabs = {}
    for nu in range(nu_max + 1):
        band = multiplier_apply(res.theta[nu], f)
        m_step = _lattice_step(grid, nu)
        l_step = _lattice_step(grid, nu + rho)
        sub = (slice(None, None, m_step),) * n
        lam_level = const * band.samples[sub]
        if not np.any(np.abs(lam_level) > 0):
            continue
        M = N // m_step
        L = N // l_step
        li = np.arange(L)
        mj = np.arange(M)
        idx = (li[:, None] * l_step - mj[None, :] * m_step + N // 2) % N
        if window is not None:
            dist = np.abs((li[:, None] * l_step - mj[None, :] * m_step)
                          * grid.spacing * 2.0**nu)
            keep = dist <= window
        for b in range(beta_max + 1):
            axis_kernel = kernel.level_axis_kernel(nu, b)
            P = axis_kernel[idx] * (2.0 ** (-rho * b - nu * (1 + b))
                                    / math.factorial(b))
            if window is not None:
                P = np.where(keep, P, 0.0)
            if n == 1:
                slabs[((b,), nu + rho)] = P @ lam_level
            else:
                for b2 in range(beta_max + 1 - b):
                    axis2 = kernel.level_axis_kernel(nu, b2)
                    P2 = axis2[idx] * (2.0 ** (-rho * b2 - nu * (1 + b2))
                                       / math.factorial(b2))
                    if window is not None:
                        P2 = np.where(keep, P2, 0.0)
                    slabs[((b, b2), nu + rho)] = P @ lam_level @ P2.T

    gmax = max((np.max(np.abs(s)) for s in slabs.values()), default=0.0)
    entries = {}
    if gmax > 0:
        for (beta, nu), slab in slabs.items():
            half_l = slab.shape[0] // 2
            keep = np.abs(slab) > drop_tol * gmax
            pos = np.argwhere(keep) - half_l
            vals = slab[keep]
            if n == 1:
                entries.update(
                    ((beta, nu, (int(i),)), complex(v))
                    for (i,), v in zip(pos, vals))
            else:
                entries.update(
                    ((beta, nu, (int(i), int(j))), complex(v))
                    for (i, j), v in zip(pos, vals))
    return QuarkCoefficients(entries, beta_max, rho, trusted=True)


def _quark_axis_matrix(basis: QuarkBasis, grid: Grid, nu: int, b: int,
                       l_vals: np.ndarray) -> sp.csr_matrix:
    """Sparse (N x len(l_vals)) matrix of t^b mu(t), t = 2^nu x - l, with
    periodic wrap of the rows."""
    N = grid.samples_per_axis
    h = grid.spacing
    T = grid.half_extent
    half = basis.support_half_width
    width = int(math.floor(2.0 * half / (2.0**nu * h))) + 2
    start = np.ceil(((l_vals - half) / 2.0**nu + T) / h).astype(int)
    rows = start[:, None] + np.arange(width)[None, :]
    x = -T + rows * h
    t = 2.0**nu * x - l_vals[:, None]
    data = basis.quark_axis(t.ravel(), b).reshape(t.shape)
    cols = np.broadcast_to(np.arange(len(l_vals))[:, None], rows.shape)
    mat = sp.coo_matrix((data.ravel(), (rows.ravel() % N, cols.ravel())),
                        shape=(N, len(l_vals)))
    return mat.tocsr()


def quark_synthesize(lam: QuarkCoefficients, basis: QuarkBasis,
                     grid: Grid) -> GridFunction:
    """sum over (beta, nu, m) of lambda^beta_{nu,m} psi^beta(2^nu x - m),
    evaluated periodically on the grid."""
    if basis.dim != grid.dim:
        raise InvalidInputError("basis dimension does not match the grid")
    n = grid.dim
    by_slab = {}
    for (beta, nu, m), v in lam.entries.items():
        key = (beta, nu)
        bucket = by_slab.get(key)
        if bucket is None:
            bucket = by_slab[key] = ([], [])
        bucket[0].append(m)
        bucket[1].append(v)
    out = np.zeros(grid.shape, dtype=np.complex128)
    for (beta, nu), (ms, vs) in sorted(by_slab.items()):
        marr = np.asarray(ms, dtype=np.int64).reshape(len(ms), n)
        varr = np.asarray(vs, dtype=np.complex128)
        if n == 1:
            l_vals, inv = np.unique(marr[:, 0], return_inverse=True)
            vec = np.zeros(len(l_vals), dtype=np.complex128)
            np.add.at(vec, inv, varr)
            B = _quark_axis_matrix(basis, grid, nu, beta[0], l_vals.astype(float))
            out += B @ vec
        else:
            l1, inv1 = np.unique(marr[:, 0], return_inverse=True)
            l2, inv2 = np.unique(marr[:, 1], return_inverse=True)
            slab = np.zeros((len(l1), len(l2)), dtype=np.complex128)
            np.add.at(slab, (inv1, inv2), varr)
            B1 = _quark_axis_matrix(basis, grid, nu, beta[0], l1.astype(float))
            B2 = _quark_axis_matrix(basis, grid, nu, beta[1], l2.astype(float))
            out += B1 @ (B2 @ slab.T).T
    return GridFunction(grid, out, SPATIAL)


def quark_norm(lam: QuarkCoefficients, p: ExponentField, q,
               s: ExponentField, flavor: str = "besov") -> float:
    """sup over represented beta of 2^(rho |beta|) times the slice seq norm."""
    if flavor == "besov":
        norm_fn, sigma = seq_norm_b, sigma_of(p)
    elif flavor == "triebel":
        from .mixed import _is_inf_exponent
        qf = None if _is_inf_exponent(q) else q
        norm_fn, sigma = seq_norm_f, sigma_of(p, qf)
    else:
        raise InvalidInputError(f"unknown flavor {flavor!r}")
    if float(np.min(s.values - sigma.values)) <= 0.0:
        warnings.warn("smoothness does not dominate sigma: the quark norm "
                      "characterization may fail", stacklevel=2)
    best = 0.0
    for beta in lam.represented_betas():
        val = norm_fn(lam.beta_slice(beta), p, q, s)
        best = max(best, 2.0 ** (lam.rho * sum(beta)) * val)
    return best
