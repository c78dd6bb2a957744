import numpy as np
import pytest

from besovx import corpus
from besovx.errors import GridMismatchError, InvalidInputError
from besovx.exponents import constant_exponent
from besovx.lebesgue import luxemburg_norm
from besovx.mixed import DyadicSequence, Lp_ell_q_norm, ell_q_Lp_norm


def _seq(g, rng, J=3):
    return DyadicSequence([corpus.band_limited(g, rng, 0.4 * g.nyquist)
                           for _ in range(J + 1)])


def test_single_entry_reduces_to_lebesgue(g1, smooth1):
    p = corpus.smooth_exponent(g1, 2.0, 0.4, 41)
    q = corpus.smooth_exponent(g1, 1.7, 0.3, 42, role="q")
    f = smooth1[0]
    seq = DyadicSequence([f])
    lux = luxemburg_norm(f, p)
    assert ell_q_Lp_norm(seq, p, q) == pytest.approx(lux, rel=1e-8)
    assert Lp_ell_q_norm(seq, p, q) == pytest.approx(lux, rel=1e-8)


def test_constant_exponents_closed_forms(g1, rng):
    p = constant_exponent(g1, 2.0)
    q = constant_exponent(g1, 1.5, role="q")
    seq = _seq(g1, np.random.default_rng(7))
    # ell_q(L_p): (sum_j ||f_j||_p^q)^(1/q)
    lq = sum(luxemburg_norm(f, p) ** 1.5 for f in seq) ** (1.0 / 1.5)
    assert ell_q_Lp_norm(seq, p, q) == pytest.approx(lq, rel=1e-7)
    # L_p(ell_q): || (sum_j |f_j|^q)^(1/q) ||_p
    stack = sum(np.abs(f.samples) ** 1.5 for f in seq) ** (1.0 / 1.5)
    lp = (np.sum(stack ** 2.0) * g1.cell_volume()) ** 0.5
    assert Lp_ell_q_norm(seq, p, q) == pytest.approx(lp, rel=1e-7)


def test_infinite_q(g1):
    p = constant_exponent(g1, 2.0)
    seq = _seq(g1, np.random.default_rng(8))
    sup_lp = max(luxemburg_norm(f, p) for f in seq)
    assert ell_q_Lp_norm(seq, p, None) == pytest.approx(sup_lp, rel=1e-7)
    env = np.max(np.stack([np.abs(f.samples) for f in seq]), axis=0)
    lp_env = (np.sum(env ** 2.0) * g1.cell_volume()) ** 0.5
    assert Lp_ell_q_norm(seq, p, "inf") == pytest.approx(lp_env, rel=1e-7)


def test_quasi_triangle_exponents(g1):
    rng = np.random.default_rng(9)
    p = corpus.smooth_exponent(g1, 0.9, 0.3, 43)
    q = corpus.smooth_exponent(g1, 1.1, 0.4, 44, role="q")
    for _ in range(10):
        a, b = _seq(g1, rng), _seq(g1, rng)
        both = DyadicSequence([x + y for x, y in zip(a, b)])
        r = min(p.inf_value, q.inf_value, 1.0)
        assert Lp_ell_q_norm(both, p, q) ** r <= \
            Lp_ell_q_norm(a, p, q) ** r + Lp_ell_q_norm(b, p, q) ** r + 1e-12
        alpha = min(q.inf_value, 1.0) * min(1.0, float(np.min(p.values / q.values)))
        assert ell_q_Lp_norm(both, p, q) ** alpha <= \
            ell_q_Lp_norm(a, p, q) ** alpha + ell_q_Lp_norm(b, p, q) ** alpha + 1e-12


def test_sequence_validation(g1, g2, smooth1):
    other = corpus.smooth_corpus(g2, 1, 1)[0]
    with pytest.raises(GridMismatchError):
        DyadicSequence([smooth1[0], other])
    from besovx.grid import forward_transform
    with pytest.raises(InvalidInputError):
        DyadicSequence([forward_transform(smooth1[0])])
