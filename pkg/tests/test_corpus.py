import numpy as np
import pytest

from besovx import corpus
from besovx.errors import InvalidInputError
from besovx.exponents import estimate_log_holder
from besovx.grid import forward_transform


def test_deterministic_under_seed(g1):
    a = corpus.smooth_corpus(g1, 4, 77)
    b = corpus.smooth_corpus(g1, 4, 77)
    for fa, fb in zip(a, b):
        assert np.array_equal(fa.samples, fb.samples)
    c = corpus.smooth_corpus(g1, 4, 78)
    assert not np.array_equal(a[0].samples, c[0].samples)


def test_band_limited_respects_band(g1):
    f = corpus.band_limited(g1, np.random.default_rng(1), 5.0)
    spec = forward_transform(f)
    outside = g1.radial_freq() > 5.0
    assert np.max(np.abs(spec.samples[outside])) < 1e-12
    assert f.sup_norm() == pytest.approx(1.0)
    with pytest.raises(InvalidInputError):
        corpus.band_limited(g1, np.random.default_rng(1), 2.0 * g1.nyquist)


def test_smooth_exponent_is_admissible(g1):
    p = corpus.smooth_exponent(g1, 2.0, 0.4, 21)
    rep = estimate_log_holder(p)
    assert rep.admissible
    assert p.limit_at_infinity == 2.0
    # perturbation dies off at the boundary
    assert p.values[0] == pytest.approx(2.0, abs=1e-12)
    assert abs(p.values - 2.0).max() == pytest.approx(0.4, rel=1e-9)


def test_trace_exponent_triple_satisfies_margin(g2):
    p, q, s = corpus.trace_exponent_triple(g2, 3)
    assert p.inf_value > 1.0 and q.inf_value > 1.0
    # trace condition: s - 1/p stays strictly positive
    assert np.min(s.values - 1.0 / p.values) > 0.2


def test_restrict_to_line_matches_boundary_row(g2):
    p = corpus.smooth_exponent(g2, 2.0, 0.4, 22)
    line = corpus.restrict_to_line(p)
    half = g2.samples_per_axis // 2
    assert np.array_equal(line.values, p.values[:, half])


def test_lower_half_fixture_support(g2):
    f = corpus.lower_half_fixture(g2, 9)
    xn = g2.coords()[-1]
    T = g2.half_extent
    assert np.all(f.samples[xn > -0.05 * T + 1e-12] == 0.0)
    # stays clear of the periodic seam at x_n = -T
    assert np.max(np.abs(f.samples[xn < -0.9 * T])) < 1e-6
    assert f.sup_norm() == pytest.approx(1.0)
