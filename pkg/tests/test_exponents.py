import numpy as np
import pytest

from besovx import corpus
from besovx.errors import GridMismatchError, InvalidInputError
from besovx.exponents import (ExponentField, combine_holder,
                              constant_exponent, estimate_log_holder,
                              sigma_of)


def test_constant_field_properties(g1):
    p = constant_exponent(g1, 2.0)
    assert p.is_constant
    assert p.inf_value == p.sup_value == 2.0
    assert p.limit_at_infinity == 2.0


def test_positivity_enforced(g1):
    with pytest.raises(InvalidInputError):
        constant_exponent(g1, 0.0)
    with pytest.raises(InvalidInputError):
        ExponentField(g1, np.full(g1.shape, -1.0), role="q")
    # smoothness exponents may be negative
    ExponentField(g1, np.full(g1.shape, -1.0), role="s")


def test_shape_mismatch(g1, g2):
    with pytest.raises(GridMismatchError):
        ExponentField(g1, np.full(g2.shape, 2.0))


def test_log_holder_constant_field_is_flat(g1):
    rep = estimate_log_holder(constant_exponent(g1, 2.0))
    assert rep.c_local == 0.0
    assert rep.c_decay == 0.0
    assert rep.admissible


def test_log_holder_smooth_corpus_field(g1):
    p = corpus.smooth_exponent(g1, 2.0, 0.4, 5)
    rep = estimate_log_holder(p)
    assert rep.admissible
    assert 0.0 < rep.c_local < 10.0
    assert rep.limit_used == 2.0


def test_combine_holder_reciprocals(g1):
    p1 = corpus.smooth_exponent(g1, 2.0, 0.3, 11)
    p2 = corpus.smooth_exponent(g1, 3.0, 0.3, 12)
    p0 = combine_holder(p1, p2)
    assert np.allclose(1.0 / p0.values, 1.0 / p1.values + 1.0 / p2.values)


def test_sigma_field_values(g1):
    # sigma_p = n (1/min(1,p) - 1) vanishes where p >= 1
    p = constant_exponent(g1, 2.0)
    assert np.all(sigma_of(p).values == 0.0)
    p_small = constant_exponent(g1, 0.5)
    assert np.allclose(sigma_of(p_small).values, 1.0)
    q = constant_exponent(g1, 0.25, role="q")
    # sigma_{p,q} uses min(1, p, q)
    assert np.allclose(sigma_of(p_small, q).values, 3.0)
