"""Trace to the hyperplane x_n = 0 and extension operators from the upper
half-space: quark-based trace/co-extension, Hestenes reflection, the lifting
multiplier J_sigma, and the composite extension Ext_N.

Convention: x_n is the last axis; the boundary row sits at grid index N/2
(x_n = 0 is always a sample).  Reflected arguments -j x_n always land on
grid rows because T/h = N/2 is an integer; rows beyond the domain are taken
as zero (functions in the corpus decay at the boundary).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decomposition import (KappaKernel, QuarkBasis, QuarkCoefficients,
                            build_kappa, quark_analyze, quark_synthesize)
from .errors import (DomainTagError, GridMismatchError, InvalidInputError,
                     NumericRangeError)
from .exponents import ExponentField
from .grid import SPATIAL, SPECTRAL, Grid, GridFunction, multiplier_apply
from .littlewood_paley import (ResolutionOfUnity, besov_norm, build_resolution,
                               triebel_norm)
from .profiles import bump, bump_mass


# ---------------------------------------------------------------------------
# Half-space functions.


@dataclass
class HalfSpaceFunction:
    """Samples defined on {x_n >= 0}; the lower half is identically zero."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.shape != self.grid.shape:
            raise GridMismatchError("samples do not match the grid shape")
        self.samples = self.samples.copy()
        self.samples[..., : self.grid.samples_per_axis // 2] = 0.0

    @classmethod
    def restrict(cls, g: GridFunction) -> "HalfSpaceFunction":
        if g.domain_tag != SPATIAL:
            raise DomainTagError("restriction acts on spatial functions")
        return cls(g.grid, g.samples)

    def upper_slice(self) -> np.ndarray:
        return self.samples[..., self.grid.samples_per_axis // 2:]

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.samples)))


def _boundary_index(grid: Grid) -> int:
    return grid.samples_per_axis // 2


# ---------------------------------------------------------------------------
# Trace.


def trace(f: GridFunction) -> GridFunction:
    """f(x', 0): the boundary row as an (n-1)-dimensional function."""
    if f.domain_tag != SPATIAL:
        raise DomainTagError("trace acts on spatial functions")
    if f.grid.dim != 2:
        raise InvalidInputError("trace requires a 2-dimensional grid")
    line = Grid(1, f.grid.half_extent, f.grid.samples_per_axis)
    return GridFunction(line, f.samples[:, _boundary_index(f.grid)].copy(),
                        SPATIAL)


def trace_quark(lam: QuarkCoefficients, basis: QuarkBasis) -> QuarkCoefficients:
    """Trace on the coefficient side: keep (beta_n = 0, m_n = 0) entries.

    The x_n quark factor at the boundary is 0^{beta_n} mu(-m_n): it vanishes
    unless beta_n = 0 and m_n = 0, where it equals mu(0) = 1, so the kept
    coefficients pass through unchanged with the last index dropped.
    """
    if basis.dim != 2:
        raise InvalidInputError("trace_quark requires a 2-dimensional basis")
    entries = {}
    for (beta, nu, m), v in lam.entries.items():
        if beta[1] == 0 and m[1] == 0:
            entries[((beta[0],), nu, (m[0],))] = v
    return QuarkCoefficients(entries, lam.beta_max, lam.rho)


# ---------------------------------------------------------------------------
# Co-extension: prescribe the first k boundary derivatives.


def coextend(gs: list, L: int, basis: QuarkBasis, kernel: KappaKernel,
             res: ResolutionOfUnity, nu_max: int | None = None,
             beta_max: int = 6) -> GridFunction:
    """Build f on the 2-D grid with trace(d^l f / dx_n^l) = g_l, l <= k.

    Each boundary datum g_j is quark-analyzed in one dimension; its
    coefficients, divided by (2L+j)! 2^(nu (2L+j)), are attached to the
    x_n-profile d^{2L}/du^{2L} [u^{2L+j} mu(u)] evaluated at u = 2^nu x_n.
    Since mu is flat near 0, the boundary derivatives of the profiles obey
    the delta_{j,l} (2L+j)! orthogonality, which makes the traces exact up to
    analysis error.  The x_n-derivative is applied in closed form (Leibniz
    against the analytic hat derivatives) because the mollification scale can
    drop below the grid spacing at high levels.
    """
    if basis.dim != 1 or kernel.grid.dim != 1:
        raise InvalidInputError("coextend analyzes 1-dimensional boundary data")
    if L < 0:
        raise InvalidInputError("L must be non-negative")
    line = kernel.grid
    plane = Grid(2, line.half_extent, line.samples_per_axis)
    x_axis = plane.axis_coords()
    out = np.zeros(plane.shape, dtype=np.complex128)
    from .decomposition import _quark_axis_matrix

    for j, g in enumerate(gs):
        if g.grid != line:
            raise GridMismatchError("boundary data on mismatched grids")
        lam = quark_analyze(g, basis, kernel, res, nu_max=nu_max,
                            beta_max=beta_max)
        by_slab = {}
        for (beta, nu, m), v in lam.entries.items():
            by_slab.setdefault((beta[0], nu), []).append((m[0], v))
        for (b, nu), items in sorted(by_slab.items()):
            l_vals = np.array(sorted({m for m, _ in items}), dtype=float)
            pos = {int(l): i for i, l in enumerate(l_vals)}
            vec = np.zeros(len(l_vals), dtype=np.complex128)
            scale = 1.0 / (math.factorial(2 * L + j) * 2.0 ** (nu * (2 * L + j)))
            for m, v in items:
                vec[pos[m]] += v * scale
            B = _quark_axis_matrix(basis, line, nu, b, l_vals)
            profile = 2.0 ** (2 * L * nu) * _derived_hat_profile(
                basis, 2.0**nu * x_axis, 2 * L + j, 2 * L)
            out += np.outer(B @ vec, profile)
    return GridFunction(plane, out, SPATIAL)


def _derived_hat_profile(basis: QuarkBasis, u: np.ndarray, power: int,
                         order: int) -> np.ndarray:
    """d^order/du^order [u^power mu(u)] by the Leibniz rule."""
    out = np.zeros_like(u)
    for i in range(order + 1):
        if power - i < 0:
            break
        coeff = math.comb(order, i) * math.factorial(power) \
            / math.factorial(power - i)
        out = out + coeff * u ** (power - i) * basis.mu_derivative(u, order - i)
    return out


# ---------------------------------------------------------------------------
# Hestenes reflection.


@dataclass
class HestenesCoeffs:
    """Reflection weights lambda_1..lambda_M for sum_j lambda_j f(x', -j x_n)."""

    M: int
    lambdas: list
    rhs_variant: str = "derivative_matching"

    def __post_init__(self):
        if len(self.lambdas) != self.M:
            raise InvalidInputError("need exactly M reflection weights")
        rhs = _hestenes_rhs(self.M, self.rhs_variant)
        for l in range(self.M):
            lhs = sum((-j) ** l * lam for j, lam in
                      enumerate(self.lambdas, start=1))
            if abs(lhs - rhs[l]) > 1e-12 * max(1.0, abs(rhs[l])):
                raise InvalidInputError("weights do not solve the moment system")


def _hestenes_rhs(M: int, variant: str) -> list:
    if variant == "derivative_matching":
        return [1.0] * M
    if variant == "paper_delta":
        return [1.0] + [0.0] * (M - 1)
    raise InvalidInputError(f"unknown rhs variant {variant!r}")


def hestenes_coeffs(M: int, variant: str = "derivative_matching") -> HestenesCoeffs:
    """Solve sum_{j=1..M} (-j)^l lambda_j = rhs_l for l = 0..M-1, exactly.

    derivative_matching uses rhs = 1 for every l (the classical choice that
    matches all boundary derivatives up to order M-1); paper_delta uses
    rhs = (1, 0, ..., 0).
    """
    if not 1 <= M <= 12:
        raise InvalidInputError("M must lie in 1..12")
    import sympy

    A = sympy.Matrix(M, M, lambda l, j: sympy.Integer(-(j + 1)) ** l)
    rhs = sympy.Matrix([sympy.Integer(int(v)) for v in _hestenes_rhs(M, variant)])
    sol = A.solve(rhs)
    return HestenesCoeffs(M, [float(v) for v in sol], variant)


def _reflect_lower(samples: np.ndarray, lambdas, N: int) -> np.ndarray:
    """Fill {x_n < 0} from the (authoritative) upper half by reflection."""
    out = samples.copy()
    half = N // 2
    i = np.arange(half)
    lower = np.zeros_like(out[..., :half])
    for j, lam in enumerate(lambdas, start=1):
        idx = half * (1 + j) - j * i
        valid = idx < N
        lower[..., valid] += lam * out[..., idx[valid]]
    out[..., :half] = lower
    return out


def hestenes_extend(f: HalfSpaceFunction,
                    coeffs: HestenesCoeffs) -> GridFunction:
    """f*(x) = f(x) for x_n >= 0 and sum_j lambda_j f(x', -j x_n) below."""
    ext = _reflect_lower(f.samples, coeffs.lambdas, f.grid.samples_per_axis)
    return GridFunction(f.grid, ext, SPATIAL)


# ---------------------------------------------------------------------------
# The lifting multiplier J_sigma.


_GL_NODES = 64


@dataclass
class LiftSymbol:
    """phi^(sigma)(xi', xi_n) = (<xi'> psi_eps(xi_n / <xi'>))^sigma with the
    principal logarithm; psi_eps(z) = int eta(t) exp(-i eps t z) dt - i z."""

    sigma: float
    epsilon: float
    grid: Grid
    symbol: GridFunction = field(init=False)

    def __post_init__(self):
        if self.epsilon <= 0:
            raise InvalidInputError("epsilon must be positive")
        base = _lift_base(self.grid, self.epsilon)
        vals = np.exp(self.sigma * np.log(base)) if self.sigma != 0.0 \
            else np.ones(self.grid.shape, dtype=np.complex128)
        self.symbol = GridFunction(self.grid, vals, SPECTRAL)

    @staticmethod
    def eta_profile(t) -> np.ndarray:
        """Bump supported in (-2, -1), normalized so its integral is 2."""
        t = np.asarray(t, dtype=float)
        return bump(2.0 * (t + 1.5)) * (4.0 / bump_mass())


def _psi_eps(z: np.ndarray, epsilon: float) -> np.ndarray:
    nodes, weights = np.polynomial.legendre.leggauss(_GL_NODES)
    t = -1.5 + 0.5 * nodes
    w = 0.5 * weights * LiftSymbol.eta_profile(t)
    acc = np.zeros(z.shape, dtype=np.complex128)
    for tk, wk in zip(t, w):
        acc += wk * np.exp(-1j * epsilon * tk * z)
    return acc - 1j * z


def _lift_base(grid: Grid, epsilon: float) -> np.ndarray:
    if grid.dim == 1:
        bracket = np.ones(grid.shape)
        zn = grid.axis_freqs()
    else:
        xi1, zn = grid.freqs()
        bracket = np.sqrt(1.0 + xi1**2)
    w = _psi_eps(zn / bracket, epsilon)
    in_omega = (w.real > 1.0) | (np.abs(w.imag) > 1.0)
    if not np.all(in_omega):
        raise NumericRangeError(
            "psi_eps leaves the admissible region at some grid frequency; "
            "epsilon too large")
    return bracket * w


def build_lift_symbol(sigma: float, epsilon: float, grid: Grid,
                      max_halvings: int = 10) -> LiftSymbol:
    """Construct the symbol, halving epsilon while the range check fails."""
    eps = float(epsilon)
    for _ in range(max_halvings + 1):
        try:
            return LiftSymbol(sigma, eps, grid)
        except NumericRangeError:
            eps /= 2.0
    raise NumericRangeError("no admissible epsilon found by halving")


def lift_apply(f: GridFunction, sym: LiftSymbol) -> GridFunction:
    if f.grid != sym.grid:
        raise GridMismatchError("function and symbol grids differ")
    return multiplier_apply(sym.symbol, f)


# ---------------------------------------------------------------------------
# Ext_N and derived operators.


EXT_PATHS = ("smooth", "lifted", "hestenes")


def _default_machinery(grid: Grid, basis, kernel, res, beta_max):
    if basis is None:
        basis = QuarkBasis(grid.dim)
    if kernel is None:
        kernel = build_kappa(grid, beta_max)
    if res is None:
        res = build_resolution(grid, profile="sampling")
    return basis, kernel, res


def _smooth_reflect(cand: GridFunction, lambdas, basis, kernel, res,
                    nu_max, beta_max) -> GridFunction:
    """Quark-analyze a full-grid candidate and reflect the synthesized sum."""
    lam = quark_analyze(cand, basis, kernel, res, nu_max=nu_max,
                        beta_max=beta_max)
    syn = quark_synthesize(lam, basis, cand.grid)
    ext = _reflect_lower(syn.samples, lambdas, cand.grid.samples_per_axis)
    return GridFunction(cand.grid, ext, SPATIAL)


def ext_N(f: HalfSpaceFunction, path: str = "smooth", M: int = 3,
          variant: str = "derivative_matching", sigma: float | None = None,
          epsilon: float = 0.01, basis: QuarkBasis | None = None,
          kernel: KappaKernel | None = None,
          res: ResolutionOfUnity | None = None, nu_max: int | None = None,
          beta_max: int = 4, p: ExponentField | None = None,
          s: ExponentField | None = None) -> GridFunction:
    """Extend f across x_n = 0.

    hestenes: direct weighted reflection.  smooth: reflect each quark of the
    analyzed candidate (equivalently, reflect the synthesized quark sum).
    lifted: conjugate the smooth reflection by the lifting multipliers,
    J_sigma after, J_{-sigma} before.  Every path returns f unchanged on
    {x_n >= 0}: the reflection only writes the lower half.
    """
    if path not in EXT_PATHS:
        raise InvalidInputError(f"unknown extension path {path!r}")
    grid = f.grid
    coeffs = hestenes_coeffs(M, variant)
    candidate = hestenes_extend(f, coeffs)
    if path == "hestenes":
        ext = candidate
    else:
        basis, kernel, res = _default_machinery(grid, basis, kernel, res,
                                                beta_max)
        if path == "smooth":
            ext = _smooth_reflect(candidate, coeffs.lambdas, basis, kernel,
                                  res, nu_max, beta_max)
        else:
            if sigma is None:
                sigma = _auto_sigma(grid, p, s)
            down = build_lift_symbol(-sigma, epsilon, grid)
            up = build_lift_symbol(sigma, down.epsilon, grid)
            shifted = lift_apply(candidate, down)
            reflected = _smooth_reflect(shifted, coeffs.lambdas, basis,
                                        kernel, res, nu_max, beta_max)
            ext = lift_apply(reflected, up)
    out = ext.samples.copy()
    half = _boundary_index(grid)
    out[..., half:] = f.samples[..., half:]
    return GridFunction(grid, out, SPATIAL)


def _auto_sigma(grid: Grid, p: ExponentField | None,
                s: ExponentField | None) -> float:
    """Smallest multiple of 1/2 with s + sigma > n/p pointwise (1.0 when the
    exponents are not supplied)."""
    if p is None or s is None:
        return 1.0
    gap = float(np.max(grid.dim / p.values - s.values))
    return 0.5 * (math.floor(2.0 * gap) + 1)


def halfspace_norm_upper(f: HalfSpaceFunction, p: ExponentField, q,
                         s: ExponentField, flavor: str = "besov",
                         res: ResolutionOfUnity | None = None,
                         **ext_kwargs) -> float:
    """Upper bound for the restriction-space norm: the minimum, over the
    three extension paths, of the full-space norm of the extension."""
    if flavor not in ("besov", "triebel"):
        raise InvalidInputError(f"unknown flavor {flavor!r}")
    if res is None:
        res = build_resolution(f.grid)
    norm_fn = besov_norm if flavor == "besov" else triebel_norm
    best = math.inf
    for path in EXT_PATHS:
        ext = ext_N(f, path=path, p=p, s=s, **ext_kwargs)
        best = min(best, norm_fn(ext, p, q, s, res))
    return best


def utrace(f: HalfSpaceFunction, path: str = "smooth",
           **ext_kwargs) -> GridFunction:
    """trace(Ext_N f): the boundary values induced by the extension."""
    return trace(ext_N(f, path=path, **ext_kwargs))
