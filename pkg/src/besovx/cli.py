"""Command-line surface: norms, quark transforms, trace/extension
operators, and the `verify` regression suite.  All reports are JSON.

Exit codes: 0 success, 1 invariant/verification failure, 2 input error.
"""

from __future__ import annotations

import json
import sys

import click

from . import corpus as corpus_mod
from . import grid as grid_mod
from .decomposition import (CoefficientArray, QuarkBasis, build_kappa,
                            load_quark_coefficients, quark_analyze,
                            quark_norm, quark_synthesize,
                            save_quark_coefficients, seq_norm_b, seq_norm_f)
from .errors import BesovxError
from .exponents import ExponentField, constant_exponent, estimate_log_holder
from .grid import Grid
from .lebesgue import luxemburg_norm
from .littlewood_paley import besov_norm, build_resolution, triebel_norm
from .maximal import hl_maximal
from .mixed import DyadicSequence, Lp_ell_q_norm, ell_q_Lp_norm
from .trace_ext import (EXT_PATHS, HalfSpaceFunction, build_lift_symbol,
                        coextend, ext_N, lift_apply, trace,
                        utrace)
from .verify import REFERENCE_SEED, load_bands, run_suite


def _parse_grid(spec: str) -> Grid:
    try:
        dim, T, N = spec.split("x")
        return Grid(int(dim), float(T), int(N))
    except (ValueError, BesovxError) as exc:
        raise click.UsageError(f"bad --grid spec {spec!r} "
                               f"(expected DIMxTxN, e.g. 1x8x256): {exc}")


def _parse_exponent(spec: str, grid: Grid, seed: int, role: str) -> ExponentField:
    """Either a constant ("2.0") or a seeded smooth field ("smooth:2.0:0.4")."""
    offset = {"p": 0, "q": 1, "s": 2}[role]
    try:
        if spec.startswith("smooth:"):
            _, base, amp = spec.split(":")
            return corpus_mod.smooth_exponent(grid, float(base), float(amp),
                                              seed + offset, role=role)
        return constant_exponent(grid, float(spec), role=role)
    except (ValueError, BesovxError) as exc:
        raise click.UsageError(f"bad --{role} spec {spec!r}: {exc}")


def _load_fn(path: str, grid: Grid | None):
    f = grid_mod.load(path)
    if grid is not None and f.grid != grid:
        raise click.UsageError(
            f"{path} was sampled on {f.grid}, but --grid asked for {grid}")
    return f


def _load_coeffs(path: str) -> CoefficientArray:
    """Double-index coefficients from JSON lines {nu, m, re, im}."""
    entries = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            entries[(int(rec["nu"]), tuple(rec["m"]))] = complex(
                rec["re"], rec.get("im", 0.0))
    nu_max = max((nu for nu, _ in entries), default=0)
    return CoefficientArray(entries, nu_max)


def _emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


class _Ctx:
    def __init__(self, grid, seed, out, threads):
        self.grid = _parse_grid(grid) if grid else None
        self.seed = seed
        self.out = out
        self.threads = threads

    def exponents(self, p=None, q=None, s=None, grid=None):
        g = grid or self.grid
        if g is None:
            raise click.UsageError("--grid is required for this operation")
        out = []
        for spec, role in ((p, "p"), (q, "q"), (s, "s")):
            out.append(None if spec is None
                       else _parse_exponent(spec, g, self.seed, role))
        return out


@click.group()
@click.option("--grid", default=None, help="grid spec DIMxTxN, e.g. 2x8x128")
@click.option("--seed", default=REFERENCE_SEED, show_default=True, type=int)
@click.option("--threads", default=1, show_default=True, type=int,
              help="accepted for interface compatibility; runs are "
                   "sequential so reports never depend on it")
@click.option("--out", default=None, type=click.Path(),
              help="write the JSON report here instead of stdout")
@click.pass_context
def main(ctx, grid, seed, threads, out):
    """Numerical toolkit for variable-exponent function-space norms."""
    ctx.obj = _Ctx(grid, seed, out, threads)


def _wrap(fn):
    """Map toolkit errors to exit code 2 (input error)."""
    import functools

    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BesovxError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
    return inner


# -- norm -------------------------------------------------------------------

@main.group()
def norm():
    """Norm evaluations."""


@norm.command("lp")
@click.argument("input", type=click.Path(exists=True))
@click.option("--p", required=True)
@click.pass_obj
@_wrap
def norm_lp(obj, input, p):
    f = _load_fn(input, obj.grid)
    (pf, _, _) = obj.exponents(p=p, grid=f.grid)
    _emit({"operation": "norm.lp", "input": input, "p": p,
           "norm": luxemburg_norm(f, pf)}, obj.out)


@norm.command("mixed")
@click.argument("inputs", nargs=-1, type=click.Path(exists=True))
@click.option("--p", required=True)
@click.option("--q", required=True)
@click.option("--order", type=click.Choice(["lq_lp", "lp_lq"]),
              default="lq_lp", show_default=True)
@click.pass_obj
@_wrap
def norm_mixed(obj, inputs, p, q, order):
    if not inputs:
        raise click.UsageError("need at least one input function")
    fns = [_load_fn(path, obj.grid) for path in inputs]
    pf, qf, _ = obj.exponents(p=p, q=q, grid=fns[0].grid)
    seq = DyadicSequence(fns)
    val = (ell_q_Lp_norm if order == "lq_lp" else Lp_ell_q_norm)(seq, pf, qf)
    _emit({"operation": f"norm.mixed.{order}", "inputs": list(inputs),
           "p": p, "q": q, "norm": val}, obj.out)


def _scale_norm(obj, input, p, q, s, kind):
    f = _load_fn(input, obj.grid)
    pf, qf, sf = obj.exponents(p=p, q=q, s=s, grid=f.grid)
    res = build_resolution(f.grid)
    fn = besov_norm if kind == "besov" else triebel_norm
    _emit({"operation": f"norm.{kind}", "input": input, "p": p, "q": q,
           "s": s, "bands": res.J + 1, "norm": fn(f, pf, qf, sf, res)},
          obj.out)


@norm.command("besov")
@click.argument("input", type=click.Path(exists=True))
@click.option("--p", required=True)
@click.option("--q", required=True)
@click.option("--s", required=True)
@click.pass_obj
@_wrap
def norm_besov(obj, input, p, q, s):
    _scale_norm(obj, input, p, q, s, "besov")


@norm.command("triebel")
@click.argument("input", type=click.Path(exists=True))
@click.option("--p", required=True)
@click.option("--q", required=True)
@click.option("--s", required=True)
@click.pass_obj
@_wrap
def norm_triebel(obj, input, p, q, s):
    _scale_norm(obj, input, p, q, s, "triebel")


@norm.command("sequence")
@click.argument("coeffs", type=click.Path(exists=True))
@click.option("--p", required=True)
@click.option("--q", required=True)
@click.option("--s", required=True)
@click.option("--flavor", type=click.Choice(["b", "f"]), default="b",
              show_default=True)
@click.pass_obj
@_wrap
def norm_sequence(obj, coeffs, p, q, s, flavor):
    lam = _load_coeffs(coeffs)
    pf, qf, sf = obj.exponents(p=p, q=q, s=s)
    fn = seq_norm_b if flavor == "b" else seq_norm_f
    _emit({"operation": "norm.sequence", "coeffs": coeffs, "flavor": flavor,
           "entries": len(lam), "norm": fn(lam, pf, qf, sf)}, obj.out)


@norm.command("quark")
@click.argument("coeffs", type=click.Path(exists=True))
@click.option("--p", required=True)
@click.option("--q", required=True)
@click.option("--s", required=True)
@click.option("--flavor", type=click.Choice(["b", "f"]), default="b",
              show_default=True)
@click.pass_obj
@_wrap
def norm_quark(obj, coeffs, p, q, s, flavor):
    lam = load_quark_coefficients(coeffs)
    pf, qf, sf = obj.exponents(p=p, q=q, s=s)
    kind = {"b": "besov", "f": "triebel"}[flavor]
    _emit({"operation": "norm.quark", "coeffs": coeffs, "flavor": flavor,
           "entries": len(lam.entries),
           "norm": quark_norm(lam, pf, qf, sf, flavor=kind)}, obj.out)


# -- quark ------------------------------------------------------------------

@main.group()
def quark():
    """Quarkonial analysis and synthesis."""


@quark.command("analyze")
@click.argument("input", type=click.Path(exists=True))
@click.argument("coeffs_out", type=click.Path())
@click.option("--beta-max", default=6, show_default=True, type=int)
@click.option("--nu-max", default=None, type=int)
@click.pass_obj
@_wrap
def quark_analyze_cmd(obj, input, coeffs_out, beta_max, nu_max):
    f = _load_fn(input, obj.grid)
    basis = QuarkBasis(f.grid.dim)
    kern = build_kappa(f.grid, beta_max)
    res = build_resolution(f.grid, profile="sampling")
    lam = quark_analyze(f, basis, kern, res, nu_max=nu_max, beta_max=beta_max)
    save_quark_coefficients(lam, coeffs_out)
    _emit({"operation": "quark.analyze", "input": input,
           "coeffs": coeffs_out, "entries": len(lam.entries),
           "beta_max": beta_max}, obj.out)


@quark.command("synthesize")
@click.argument("coeffs", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.pass_obj
@_wrap
def quark_synthesize_cmd(obj, coeffs, output):
    if obj.grid is None:
        raise click.UsageError("--grid is required to synthesize")
    lam = load_quark_coefficients(coeffs)
    basis = QuarkBasis(obj.grid.dim)
    f = quark_synthesize(lam, basis, obj.grid)
    grid_mod.save(f, output)
    _emit({"operation": "quark.synthesize", "coeffs": coeffs,
           "output": output, "sup_norm": f.sup_norm()}, obj.out)


# -- trace / extension ------------------------------------------------------

@main.command("trace")
@click.argument("input", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.pass_obj
@_wrap
def trace_cmd(obj, input, output):
    f = _load_fn(input, obj.grid)
    tr = trace(f)
    grid_mod.save(tr, output)
    _emit({"operation": "trace", "input": input, "output": output,
           "sup_norm": tr.sup_norm()}, obj.out)


@main.command("utrace")
@click.argument("input", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.option("--path", "ext_path", type=click.Choice(EXT_PATHS),
              default="smooth", show_default=True)
@click.pass_obj
@_wrap
def utrace_cmd(obj, input, output, ext_path):
    f = HalfSpaceFunction.restrict(_load_fn(input, obj.grid))
    tr = utrace(f, path=ext_path)
    grid_mod.save(tr, output)
    _emit({"operation": "utrace", "input": input, "output": output,
           "path": ext_path, "sup_norm": tr.sup_norm()}, obj.out)


@main.command("coextend")
@click.argument("boundary", nargs=-1, type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.option("--k", default=None, type=int,
              help="number of prescribed derivatives (default: #inputs - 1)")
@click.option("--smoothness-reserve", "reserve", default=0, type=int,
              help="L parameter: extra flatness orders beyond k")
@click.pass_obj
@_wrap
def coextend_cmd(obj, boundary, output, k, reserve):
    if not boundary:
        raise click.UsageError("need at least one boundary function")
    gs = [grid_mod.load(path) for path in boundary]
    if k is not None:
        gs = gs[: k + 1]
    line = gs[0].grid
    basis = QuarkBasis(1)
    kern = build_kappa(line, 6)
    res = build_resolution(line, profile="sampling")
    F = coextend(gs, reserve, basis, kern, res)
    grid_mod.save(F, output)
    _emit({"operation": "coextend", "boundary": list(boundary),
           "output": output, "k": len(gs) - 1, "L": reserve}, obj.out)


@main.command("extend")
@click.argument("input", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.option("--path", "ext_path", type=click.Choice(EXT_PATHS),
              default="smooth", show_default=True)
@click.option("--m", "M", default=3, show_default=True, type=int)
@click.pass_obj
@_wrap
def extend_cmd(obj, input, output, ext_path, M):
    f = HalfSpaceFunction.restrict(_load_fn(input, obj.grid))
    e = ext_N(f, path=ext_path, M=M)
    grid_mod.save(e, output)
    _emit({"operation": "extend", "input": input, "output": output,
           "path": ext_path, "M": M, "sup_norm": e.sup_norm()}, obj.out)


@main.command("lift")
@click.argument("input", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.option("--sigma", required=True, type=float)
@click.option("--epsilon", default=0.01, show_default=True, type=float)
@click.pass_obj
@_wrap
def lift_cmd(obj, input, output, sigma, epsilon):
    f = _load_fn(input, obj.grid)
    sym = build_lift_symbol(sigma, epsilon, f.grid)
    lifted = lift_apply(f, sym)
    grid_mod.save(lifted, output)
    _emit({"operation": "lift", "input": input, "output": output,
           "sigma": sigma, "epsilon": sym.epsilon,
           "sup_norm": lifted.sup_norm()}, obj.out)


@main.command("maximal")
@click.argument("input", type=click.Path(exists=True))
@click.argument("output", type=click.Path())
@click.pass_obj
@_wrap
def maximal_cmd(obj, input, output):
    f = _load_fn(input, obj.grid)
    m = hl_maximal(f)
    grid_mod.save(m, output)
    _emit({"operation": "maximal", "input": input, "output": output,
           "sup_norm": m.sup_norm()}, obj.out)


# -- exponents --------------------------------------------------------------

@main.group("exponents")
def exponents_grp():
    """Exponent field diagnostics."""


@exponents_grp.command("check")
@click.option("--p", required=True)
@click.pass_obj
@_wrap
def exponents_check(obj, p):
    (pf, _, _) = obj.exponents(p=p)
    rep = estimate_log_holder(pf)
    _emit({"operation": "exponents.check", "p": p,
           "c_local": rep.c_local, "c_decay": rep.c_decay,
           "limit_at_infinity": rep.limit_used,
           "admissible": rep.admissible}, obj.out)
    if not rep.admissible:
        sys.exit(1)


# -- verify -----------------------------------------------------------------

@main.command("verify")
@click.argument("suite", default="all")
@click.option("--bands", default=None, type=click.Path(exists=True),
              help="alternative fixture-band file")
@click.pass_obj
@_wrap
def verify_cmd(obj, suite, bands):
    try:
        band_table = load_bands(bands)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read fixture bands: {exc}")
    report = run_suite(suite=suite, seed=obj.seed, bands=band_table)
    if not report.records:
        raise click.UsageError(f"unknown suite {suite!r}")
    payload = report.to_dict()
    for rec in payload["records"]:
        line = (f"[{rec['status']:4s}] {rec['check_id']:45s} "
                f"{rec['measured_constant']:.6g}  ({rec['tolerance']})")
        click.echo(line, err=True)
    _emit(payload, obj.out)
    if not report.passed:
        sys.exit(1)


if __name__ == "__main__":
    main()
