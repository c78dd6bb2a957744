"""Iterated quasi-norms l^q(.)(L^p(.)) and L^p(.)(l^q(.)) on finite sequences.

The l^q(.)(L^p(.)) modular of {f_j} uses the identity (valid for q+ < infty)

    rho({f_j}) = sum_j || |f_j|^q(.) ||_{L^{p(.)/q(.)}},

and the norm is inf{mu > 0 : rho({f_j/mu}) <= 1}, computed by bracketing and
bisection.  The L^p(.)(l^q(.)) norm evaluates the pointwise inner l^q(x)
value and takes its Luxemburg norm.  q = infinity is the pointwise (resp.
per-term) supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, InvalidInputError, NumericRangeError
from .exponents import ExponentField
from .grid import SPATIAL, GridFunction
from .lebesgue import BISECT_RTOL, MAX_DOUBLINGS, ModularValue, luxemburg_array

MAX_SEQ_LEN = 65

INF = math.inf


def _is_inf_exponent(q) -> bool:
    return q is None or (isinstance(q, float) and math.isinf(q)) or q == "inf"


@dataclass
class DyadicSequence:
    """Finite ordered list {f_j}, j = 0..J, on one shared grid."""

    entries: list

    def __post_init__(self):
        if len(self.entries) > MAX_SEQ_LEN:
            raise InvalidInputError(f"sequence longer than {MAX_SEQ_LEN} entries")
        for f in self.entries:
            if f.domain_tag != SPATIAL:
                raise InvalidInputError("sequence entries must be spatial")
            if f.grid != self.entries[0].grid:
                raise GridMismatchError("sequence entries on different grids")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def grid(self):
        return self.entries[0].grid

    def abs_arrays(self) -> list:
        return [np.abs(f.samples) for f in self.entries]


def _check_exponents(seq: DyadicSequence, p: ExponentField, q) -> None:
    if len(seq) and seq.grid != p.grid:
        raise GridMismatchError("sequence and exponent grids differ")
    if not _is_inf_exponent(q) and q.grid != p.grid:
        raise GridMismatchError("p and q grids differ")


def _ellq_lp_modular(abs_entries, p: ExponentField, q: ExponentField, mu: float,
                     per_term_power) -> float:
    """sum_j || (|f_j| / mu^w(.))^q(.) ||_{L^{p/q}} with w = per_term_power."""
    pq = p.values / q.values
    vol = p.grid.cell_volume()
    scale = mu**per_term_power
    total = 0.0
    for av in abs_entries:
        inner = np.power(av / scale, q.values, where=av > 0,
                         out=np.zeros_like(av, dtype=float))
        total += luxemburg_array(inner, pq, vol)
    return total


def iterated_modular(seq: DyadicSequence, p: ExponentField, q: ExponentField,
                     mu: float) -> ModularValue:
    """Modular of {f_j} at scale mu, entries divided by mu^(1/q(x))."""
    _check_exponents(seq, p, q)
    if mu <= 0:
        raise InvalidInputError("mu must be positive")
    if len(seq) == 0:
        return ModularValue(0.0)
    val = _ellq_lp_modular(seq.abs_arrays(), p, q, mu, 1.0 / q.values)
    return ModularValue(val)


def _bisect_scale(rho) -> float:
    """inf{mu > 0 : rho(mu) <= 1} by doubling/halving from mu = 1."""
    mu = 1.0
    if rho(mu) > 1.0:
        for _ in range(MAX_DOUBLINGS):
            lo, mu = mu, 2.0 * mu
            if rho(mu) <= 1.0:
                break
        else:
            raise NumericRangeError("scale bracket did not close (overflow)")
        hi = mu
    else:
        for _ in range(MAX_DOUBLINGS):
            hi, mu = mu, mu / 2.0
            if rho(mu) > 1.0:
                break
        else:
            return 0.0
        lo = mu
    while (hi - lo) > BISECT_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if rho(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def ell_q_Lp_norm(seq: DyadicSequence, p: ExponentField, q) -> float:
    """The l^q(.)(L^p(.)) quasi-norm of a finite sequence.

    For q = infinity this is sup_j ||f_j||_{L^p(.)}.
    """
    _check_exponents(seq, p, q)
    if len(seq) == 0:
        return 0.0
    abs_entries = seq.abs_arrays()
    vol = p.grid.cell_volume()
    if _is_inf_exponent(q):
        return max(luxemburg_array(av, p.values, vol) for av in abs_entries)
    if not any(np.any(av > 0) for av in abs_entries):
        return 0.0

    def rho(mu):
        return _ellq_lp_modular(abs_entries, p, q, mu, 1.0)

    return _bisect_scale(rho)


def Lp_ell_q_norm(seq: DyadicSequence, p: ExponentField, q) -> float:
    """The L^p(.)(l^q(.)) quasi-norm: inner pointwise l^q(x), outer Luxemburg."""
    _check_exponents(seq, p, q)
    if len(seq) == 0:
        return 0.0
    abs_entries = seq.abs_arrays()
    if _is_inf_exponent(q):
        inner = np.max(np.stack(abs_entries), axis=0)
    else:
        qv = q.values
        acc = np.zeros(p.grid.shape, dtype=float)
        for av in abs_entries:
            acc += np.power(av, qv, where=av > 0, out=np.zeros_like(av, dtype=float))
        inner = np.power(acc, 1.0 / qv, where=acc > 0,
                         out=np.zeros_like(acc, dtype=float))
    return luxemburg_array(inner, p.values, p.grid.cell_volume())
