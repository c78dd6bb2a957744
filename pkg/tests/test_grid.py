import numpy as np
import pytest

from besovx.errors import DomainTagError, InvalidInputError
from besovx.grid import (Grid, forward_transform, from_callable,
                         inverse_transform, load, save, spectral_derivative,
                         spectral_energy)


def test_grid_validation():
    with pytest.raises(InvalidInputError):
        Grid(3, 8.0, 256)
    with pytest.raises(InvalidInputError):
        Grid(1, 8.0, 100)  # not a power of two
    with pytest.raises(InvalidInputError):
        Grid(1, -1.0, 256)


def test_transform_roundtrip_exact(g1, smooth1):
    for f in smooth1:
        back = inverse_transform(forward_transform(f))
        assert np.max(np.abs(back.samples - f.samples)) < 1e-13


def test_gaussian_transform_analytic(g1):
    # F[exp(-x^2/2)] = exp(-xi^2/2) in the unitary convention
    f = from_callable(g1, lambda x: np.exp(-0.5 * x**2))
    spec = forward_transform(f)
    expected = np.exp(-0.5 * g1.axis_freqs() ** 2)
    assert np.max(np.abs(spec.samples - expected)) < 1e-13


def test_parseval(g1, smooth1):
    for f in smooth1[:3]:
        spatial = np.sum(np.abs(f.samples) ** 2) * g1.cell_volume()
        spec = forward_transform(f)
        spectral = np.sum(np.abs(spec.samples) ** 2) * g1.freq_spacing
        assert abs(spatial - spectral) < 1e-12 * spatial


def test_spectral_derivative_matches_analytic(g1):
    f = from_callable(g1, lambda x: np.exp(-0.5 * x**2))
    df = spectral_derivative(f, (1,))
    expected = -g1.axis_coords() * np.exp(-0.5 * g1.axis_coords() ** 2)
    assert np.max(np.abs(df.samples - expected)) < 1e-11


def test_transform_requires_matching_domain(g1, smooth1):
    spec = forward_transform(smooth1[0])
    with pytest.raises(DomainTagError):
        forward_transform(spec)
    with pytest.raises(DomainTagError):
        inverse_transform(smooth1[0])


def test_index_of_on_and_off_grid(g1):
    assert g1.index_of(0.0) == (128,)
    assert g1.index_of(-8.0) == (0,)
    with pytest.raises(InvalidInputError):
        g1.index_of(0.013)
    with pytest.raises(InvalidInputError):
        g1.index_of(8.0)  # right endpoint excluded


def test_save_load_roundtrip(tmp_path, g1, smooth1):
    path = tmp_path / "f.bin"
    save(smooth1[0], path)
    back = load(path)
    assert back.grid == g1
    # storage is complex64, so only single precision survives
    assert np.max(np.abs(back.samples - smooth1[0].samples)) < 1e-6


def test_spectral_energy_additive_over_disjoint_bands(g1, smooth1):
    f = smooth1[0]
    total = spectral_energy(f)
    spec = forward_transform(f)
    low = np.abs(g1.axis_freqs()) <= 5.0
    e_low = np.sum(np.abs(spec.samples[low]) ** 2) * g1.freq_spacing
    e_high = np.sum(np.abs(spec.samples[~low]) ** 2) * g1.freq_spacing
    assert abs(total - (e_low + e_high)) < 1e-12 * total
