import json

import numpy as np
import pytest
from click.testing import CliRunner

from besovx import corpus
from besovx.cli import main
from besovx.exponents import constant_exponent
from besovx.grid import save
from besovx.lebesgue import luxemburg_norm


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def fn_file(tmp_path, g1):
    f = corpus.smooth_corpus(g1, 1, 55)[0]
    path = tmp_path / "f.bin"
    save(f, path)
    return str(path), f


def test_norm_lp_matches_direct_call(runner, fn_file, g1):
    path, f = fn_file
    result = runner.invoke(main, ["norm", "lp", path, "--p", "2.0"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    direct = luxemburg_norm(f, constant_exponent(g1, 2.0))
    # the on-disk function is complex64, so match to single precision
    assert report["norm"] == pytest.approx(direct, rel=1e-5)


def test_invalid_exponent_is_input_error(runner, fn_file):
    path, _ = fn_file
    result = runner.invoke(main, ["norm", "lp", path, "--p", "0.0"])
    assert result.exit_code == 2
    assert "exponent" in result.output


def test_reports_are_byte_identical(runner, fn_file, tmp_path):
    path, _ = fn_file
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        result = runner.invoke(main, [
            "--seed", "5", "--out", str(out),
            "norm", "besov", path,
            "--p", "smooth:2.0:0.3", "--q", "2.0", "--s", "0.5"])
        assert result.exit_code == 0, result.output
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_grid_mismatch_rejected(runner, fn_file):
    path, _ = fn_file
    result = runner.invoke(main, ["--grid", "1x8x512", "norm", "lp",
                                  path, "--p", "2.0"])
    assert result.exit_code == 2


def test_exponents_check_reports_constants(runner):
    result = runner.invoke(main, ["--grid", "1x8x256", "exponents", "check",
                                  "--p", "smooth:2.0:0.4"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["admissible"] is True
    assert report["c_local"] > 0


def test_verify_unknown_suite(runner):
    result = runner.invoke(main, ["verify", "nonsense"])
    assert result.exit_code == 2


def test_verify_exponents_suite(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["--out", str(out), "verify", "exponents"])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text())
    assert payload["passed"] is True
    assert all(r["status"] == "pass" for r in payload["records"])


def test_trace_roundtrip_through_files(runner, tmp_path, g2):
    f = corpus.smooth_corpus(g2, 1, 56, band=5.0)[0]
    src = tmp_path / "f2.bin"
    dst = tmp_path / "tr.bin"
    save(f, src)
    result = runner.invoke(main, ["trace", str(src), str(dst)])
    assert result.exit_code == 0, result.output
    from besovx.grid import load
    tr = load(dst)
    half = g2.samples_per_axis // 2
    assert np.allclose(tr.samples, f.samples[:, half], atol=1e-6)
