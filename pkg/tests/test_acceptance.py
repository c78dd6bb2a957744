"""Acceptance gate: each test covers one top-level criterion and prints a
single PASS/FAIL line with the measured constants.

All measurements come from the registered verification suite, which the
session fixture runs once at the reference seed against the committed
fixture bands.
"""

import sys

import pytest

CRITERIA = {
    1: ("constant-exponent reduction to the Plancherel band form",
        ["littlewood.plancherel_besov", "littlewood.plancherel_triebel"]),
    2: ("Luxemburg unit ball and homogeneity",
        ["lebesgue.unit_ball", "lebesgue.homogeneity"]),
    3: ("quasi-triangle inequalities with sharp exponents",
        ["lebesgue.quasi_triangle", "mixed.quasi_triangle_lp_lq",
         "mixed.quasi_triangle_lq_lp"]),
    4: ("band-limited sampling reconstruction",
        ["decomposition.phi_reconstruction"]),
    5: ("quark round trip and norm equivalence band",
        ["decomposition.roundtrip", "decomposition.norm_equivalence_min",
         "decomposition.norm_equivalence_max"]),
    6: ("reflection weights, monomial reproduction, h-halving slope",
        ["trace_ext.hestenes_coeffs", "trace_ext.hestenes_monomial",
         "trace_ext.hestenes_slope"]),
    7: ("lift inverse, symbol comparability band, support preservation",
        ["trace_ext.lift_inverse", "trace_ext.lift_comparability_min",
         "trace_ext.lift_comparability_max", "trace_ext.lift_support"]),
    8: ("trace/co-extension round trips and trace-boundedness band",
        ["trace_ext.coextend_trace0", "trace_ext.coextend_trace1",
         "trace_ext.utrace_paths", "trace_ext.restriction_identity",
         "trace_ext.trace_bound"]),
    9: ("hyperplane sequence-norm equivalence band",
        ["trace_ext.hyperplane_equiv_min", "trace_ext.hyperplane_equiv_max"]),
    10: ("maximal operator and eta-convolution regression bands",
         ["maximal.hl_ratio", "maximal.eta_pointwise",
          "mixed.eta_ratio_lq_lp", "mixed.eta_ratio_lp_lq"]),
}


def _check(verify_report, number):
    title, ids = CRITERIA[number]
    by_id = {r.check_id: r for r in verify_report.records}
    records = [by_id[i] for i in ids]
    ok = all(r.status == "pass" for r in records)
    detail = ", ".join(f"{r.check_id.split('.')[1]}={r.measured_constant:.3g}"
                       for r in records)
    print(f"{'PASS' if ok else 'FAIL'} [criterion {number:2d}] {title}: "
          f"{detail}", file=sys.stderr)
    assert ok, f"criterion {number} ({title}): " + "; ".join(
        f"{r.check_id} {r.status} measured={r.measured_constant:.6g} "
        f"({r.tolerance})" for r in records if r.status != "pass")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(verify_report, number):
    _check(verify_report, number)
