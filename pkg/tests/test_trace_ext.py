import numpy as np
import pytest

from besovx import corpus
from besovx.decomposition import QuarkBasis, build_kappa
from besovx.errors import InvalidInputError
from besovx.grid import Grid, spectral_derivative
from besovx.littlewood_paley import build_resolution
from besovx.trace_ext import (EXT_PATHS, HalfSpaceFunction, build_lift_symbol,
                              coextend, ext_N, hestenes_coeffs,
                              hestenes_extend, lift_apply, trace, trace_quark,
                              utrace)


def test_hestenes_coefficient_systems():
    assert hestenes_coeffs(3).lambdas == pytest.approx([6.0, -8.0, 3.0])
    assert hestenes_coeffs(1).lambdas == pytest.approx([1.0])
    assert hestenes_coeffs(2, "paper_delta").lambdas == pytest.approx([2.0, -1.0])
    # independent check: Vandermonde residual of the returned weights
    lam = hestenes_coeffs(4).lambdas
    for l in range(4):
        assert sum(lj * (-j) ** l for j, lj in enumerate(lam, start=1)) == \
            pytest.approx(1.0, abs=1e-10)


def test_hestenes_monomial_reproduction():
    g = Grid(1, 8.0, 512)
    x = g.axis_coords()
    coeffs = hestenes_coeffs(3)
    probe = (x < 0) & (x > -2.0)
    for l in range(3):
        f = HalfSpaceFunction(g, np.where(x >= 0, x**l, 0.0))
        ext = hestenes_extend(f, coeffs)
        assert np.max(np.abs(ext.samples[probe].real - x[probe] ** l)) < 1e-12


def test_hestenes_preserves_upper_half():
    g = Grid(1, 8.0, 512)
    f = HalfSpaceFunction.restrict(corpus.smooth_corpus(g, 1, 5)[0])
    ext = hestenes_extend(f, hestenes_coeffs(3))
    half = g.samples_per_axis // 2
    assert np.array_equal(ext.samples[half:], f.samples[half:])


def test_trace_picks_boundary_row(g2):
    f = corpus.smooth_corpus(g2, 1, 6, band=5.0)[0]
    tr = trace(f)
    assert tr.grid.dim == 1
    half = g2.samples_per_axis // 2
    assert np.array_equal(tr.samples, f.samples[:, half])


def test_trace_quark_keeps_boundary_coefficients():
    from besovx.decomposition import QuarkCoefficients
    basis = QuarkBasis(2)
    lam = QuarkCoefficients({
        ((0, 0), 1, (2, 0)): 1.0,
        ((0, 1), 1, (2, 0)): 2.0,   # normal-direction quark index: dropped
        ((1, 0), 1, (2, 3)): 3.0,   # off the hyperplane: dropped
    }, beta_max=1, rho=2)
    tr = trace_quark(lam, basis)
    assert set(tr.entries) == {((0,), 1, (2,))}
    assert tr.entries[((0,), 1, (2,))] == pytest.approx(1.0)


def test_coextend_reproduces_boundary_jets():
    line = Grid(1, 16.0, 512)
    basis = QuarkBasis(1)
    kern = build_kappa(line, 6)
    res = build_resolution(line, profile="sampling")
    g0, g1b = corpus.smooth_corpus(line, 2, 8, band=4.0)
    F = coextend([g0, g1b], 0, basis, kern, res)
    assert np.max(np.abs(trace(F).samples - g0.samples)) < \
        1e-3 * np.max(np.abs(g0.samples))
    dF = spectral_derivative(F, (0, 1))
    assert np.max(np.abs(trace(dF).samples - g1b.samples)) < \
        1e-3 * np.max(np.abs(g1b.samples))


def test_lift_inverse_and_support(g2):
    up = build_lift_symbol(1.0, 0.01, g2)
    down = build_lift_symbol(-1.0, up.epsilon, g2)
    f = corpus.smooth_corpus(g2, 1, 9)[0]
    back = lift_apply(lift_apply(f, up), down)
    assert np.max(np.abs(back.samples - f.samples)) < 1e-8

    low = corpus.lower_half_fixture(g2, 1235)
    lifted = lift_apply(low, up)
    xn = g2.coords()[-1]
    leak = np.abs(lifted.samples[xn > 0.1]).sum() / np.abs(lifted.samples).sum()
    assert leak <= 1e-3


def test_lift_symbol_comparable_to_weight(g2):
    up = build_lift_symbol(1.0, 0.01, g2)
    xi1, xin = g2.freqs()
    ratio = np.abs(up.symbol.samples) / (np.sqrt(1.0 + xi1**2) + np.abs(xin))
    assert 0.5 < ratio.min() and ratio.max() < 3.0


def test_ext_restriction_identity_and_utrace(g2):
    f = HalfSpaceFunction.restrict(corpus.smooth_corpus(g2, 1, 10, band=5.0)[0])
    half = g2.samples_per_axis // 2
    traces = []
    for path in EXT_PATHS:
        e = ext_N(f, path=path)
        assert np.array_equal(e.samples[..., half:], f.samples[..., half:])
        traces.append(trace(e).samples)
    scale = np.max(np.abs(traces[0]))
    for t in traces[1:]:
        assert np.max(np.abs(t - traces[0])) < 1e-4 * scale
    # utrace agrees with trace-of-extension
    assert np.array_equal(utrace(f).samples, traces[0])


def test_ext_rejects_unknown_path(g2):
    f = HalfSpaceFunction.restrict(corpus.smooth_corpus(g2, 1, 11)[0])
    with pytest.raises(InvalidInputError):
        ext_N(f, path="mystery")


def test_halfspace_restrict_zeroes_lower_half(g2):
    f = corpus.smooth_corpus(g2, 1, 12)[0]
    hs = HalfSpaceFunction.restrict(f)
    xn = g2.coords()[-1]
    assert np.all(hs.samples[xn < 0] == 0.0)
    assert np.array_equal(hs.samples[xn >= 0], f.samples[xn >= 0])
