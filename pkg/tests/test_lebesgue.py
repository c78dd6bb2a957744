import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besovx import corpus
from besovx.exponents import constant_exponent
from besovx.grid import SPATIAL, GridFunction, zeros
from besovx.lebesgue import luxemburg_norm, modular


def test_zero_function_has_zero_norm(g1):
    p = constant_exponent(g1, 2.0)
    assert luxemburg_norm(zeros(g1), p) == 0.0
    assert float(modular(zeros(g1), p)) == 0.0


def test_constant_exponent_reduces_to_classical(g1, smooth1):
    for pv in (1.0, 2.0, 2.5, 4.0):
        p = constant_exponent(g1, pv)
        for f in smooth1[:3]:
            direct = (np.sum(np.abs(f.samples) ** pv)
                      * g1.cell_volume()) ** (1.0 / pv)
            assert luxemburg_norm(f, p) == pytest.approx(direct, rel=1e-8)


def test_frozen_regression_value(g1):
    f = corpus.smooth_corpus(g1, 1, 2024)[0]
    p = constant_exponent(g1, 2.5)
    assert luxemburg_norm(f, p) == pytest.approx(1.8255755612626672, rel=1e-10)


def test_unit_ball_property(g1, smooth1):
    p = corpus.smooth_exponent(g1, 2.0, 0.5, 31)
    for f in smooth1:
        nrm = luxemburg_norm(f, p)
        assert float(modular(f * (1.0 / nrm), p)) == pytest.approx(1.0, abs=1e-6)


@settings(max_examples=30, deadline=None)
@given(c=st.floats(min_value=1e-3, max_value=1e3))
def test_homogeneity(g1, smooth1, c):
    p = corpus.smooth_exponent(g1, 2.0, 0.5, 32)
    f = smooth1[0]
    assert luxemburg_norm(f * c, p) == pytest.approx(
        c * luxemburg_norm(f, p), rel=1e-9)


def test_quasi_triangle_r_exponent(g1, smooth1):
    p = corpus.smooth_exponent(g1, 0.8, 0.3, 33)
    r = min(p.inf_value, 1.0)
    for f, h in zip(smooth1, smooth1[1:]):
        lhs = luxemburg_norm(f + h, p) ** r
        rhs = luxemburg_norm(f, p) ** r + luxemburg_norm(h, p) ** r
        assert lhs <= rhs + 1e-12


def test_modular_monotone_in_magnitude(g1, smooth1):
    p = corpus.smooth_exponent(g1, 2.0, 0.5, 34)
    f = smooth1[0]
    bigger = GridFunction(g1, 2.0 * np.abs(f.samples), SPATIAL)
    assert float(modular(bigger, p)) >= float(modular(f, p))


def test_norm_monotone_in_magnitude(g1, smooth1):
    p = corpus.smooth_exponent(g1, 2.0, 0.5, 35)
    f = smooth1[0]
    half = GridFunction(g1, 0.5 * np.abs(f.samples), SPATIAL)
    assert luxemburg_norm(half, p) <= luxemburg_norm(f, p) + 1e-12
