import asyncio
import csv
import io
import json

import pytest

from config import ENV_OVERRIDES
from main import format_triples, main
from operators.paired import PairedSpec
from symbols.laurent import LaurentPoly
from symbols.parser import parse_symbol


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for variable in ENV_OVERRIDES:
        monkeypatch.delenv(variable, raising=False)


def run(capsys, *argv):
    code = asyncio.run(main(list(argv)))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("a, b, f, expected", [
    ("1", "z", "1 + z^-1", "(0, 2, 0)"),
    ("z^-1", "z", "1 - z^-2", ""),
    ("1", "1", "z", "(1, 1, 0)"),
])
def test_apply_prints_sorted_triples(capsys, a, b, f, expected):
    code, payload = run_json(capsys, "apply", "--a", a, "--b", b, "--f", f)
    assert code == 0
    assert payload["result"]["triples"] == expected


def test_format_triples():
    assert format_triples(parse_symbol("-0.5i*z^-1 + 3")) == "(-1, 0, -0.5) (0, 3, 0)"
    assert format_triples(LaurentPoly.zero()) == ""


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "apply", "--a", "1", "--b", "z", "--f", "1 + z^-1")
    assert code == 0
    assert out.startswith("## apply")
    assert "- triples: (0, 2, 0)" in out


def test_apply_sigma(capsys):
    _, payload = run_json(capsys, "apply", "--a", "z^-1", "--b", "z", "--f", "z", "--sigma")
    assert payload["result"]["operator"] == "Sigma"
    assert payload["result"]["triples"] == "(0, 1, 0)"


def test_norm_reports_every_band(capsys):
    code, payload = run_json(capsys, "norm", "--a", "1", "--b", "z", "--N", "4", "8")
    assert code == 0
    result = payload["result"]
    assert result["monotone"]
    assert [row["N"] for row in result["norms"]] == [4, 8]
    assert result["norms"][-1]["sigma_max"] == pytest.approx(2 ** 0.5, abs=1e-9)


@pytest.mark.parametrize("a, b, dim", [("z^-1", "z", 2), ("z^-1", "1", 1), ("1", "1 - z", 0)])
def test_kernel_dimensions(capsys, a, b, dim):
    code, payload = run_json(capsys, "kernel", "--a", a, "--b", b, "--N", "16")
    assert code == 0
    result = payload["result"]
    assert result["N"] == 16
    assert result["dim"] == result["exact_dim"] == dim
    assert len(result["basis_expressions"]) == dim
    assert result["max_residual"] <= 1e-10


def test_global_band_reaches_the_kernel(capsys):
    _, payload = run_json(capsys, "--N", "8", "kernel", "--a", "z^-1", "--b", "z")
    assert payload["result"]["N"] == 8
    assert payload["config"]["band"] == 8


def test_kernel_projections(capsys):
    _, payload = run_json(capsys, "kernel", "--a", "z^-1", "--b", "1", "--N", "8", "--project")
    result = payload["result"]
    [plus] = result["plus_basis"]
    [minus] = result["minus_basis"]
    assert parse_symbol(plus).kmin == parse_symbol(plus).kmax == 0
    assert parse_symbol(minus).kmax == -1
    assert result["reconstruction_error"] == 0.0


def test_factor(capsys):
    code, payload = run_json(capsys, "factor", "--p", "z - 2")
    assert code == 0
    result = payload["result"]
    assert result["inner_is_constant"]
    assert parse_symbol(result["outer_expression"]).allclose(parse_symbol("2 - z"), 1e-12)
    assert result["outer_at_zero"] == pytest.approx(2.0)
    assert result["product_residual"] <= 1e-8


def test_pair_from(capsys):
    code, payload = run_json(capsys, "pair-from", "--f", "1 - z^-1")
    assert code == 0
    result = payload["result"]
    assert result["within_tolerance"]
    spec = PairedSpec.from_json(result["spec"])
    assert spec.a.allclose(LaurentPoly.one(), 1e-12)
    assert spec.b.allclose(parse_symbol("z"), 1e-12)


def test_coburn(capsys):
    code, payload = run_json(capsys, "coburn", "--a", "z^-1", "--b", "z")
    assert code == 0
    result = payload["result"]
    assert result["dims"] == {"ker_ab": 2, "ker_ba": 0, "ker_conj": 0, "ker_adjoint": 0}
    assert result["passed"]


def test_parse_error_exits_with_two(capsys):
    code, out, err = run(capsys, "apply", "--a", "z/2", "--b", "1", "--f", "1")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_degenerate_kernel_request_exits_with_two(capsys):
    code, _, err = run(capsys, "kernel", "--a", "z", "--b", "z")
    assert code == 2
    assert "error" in err


def test_invalid_configuration_exits_with_two(capsys):
    code, _, err = run(capsys, "--N", "0", "apply", "--a", "1", "--b", "1", "--f", "1")
    assert code == 2
    assert "invalid configuration" in err


def test_csv_output(capsys):
    code, out, _ = run(capsys, "--format", "csv", "norm", "--a", "1", "--b", "z", "--N", "2", "4")
    assert code == 0
    records = list(csv.DictReader(io.StringIO(out)))
    assert [record["N"] for record in records] == ["2", "4"]
    assert "sigma_max" in records[0]


def test_out_writes_the_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, err = run(capsys, "--format", "json", "--out", str(path),
                         "apply", "--a", "1", "--b", "z", "--f", "z^-1")
    assert code == 0
    assert out == ""
    assert str(path) in err
    assert json.loads(path.read_text())["command"] == "apply"


def test_config_file_is_embedded(capsys, tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"band": 6, "tolerances": {"membership": 1e-9}}))
    _, payload = run_json(capsys, "--config", str(path), "kernel", "--a", "z^-1", "--b", "z")
    assert payload["result"]["N"] == 6
    assert payload["config"]["tolerances"]["membership"] == 1e-9


def test_suite_is_deterministic(capsys):
    argv = ("suite", "coburn", "--trials", "2", "--seed", "5")
    code, first = run_json(capsys, *argv)
    _, second = run_json(capsys, *argv)
    assert code == 0
    assert first == second
    assert first["result"]["seed"] == 5
    assert "runtime" not in first["result"]["suites"][0]


def test_save_config_writes_the_effective_configuration(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PAIRED_GRID", "512")
    path = tmp_path / "effective.json"
    code, _ = run_json(capsys, "--N", "10", "--save-config", str(path),
                       "apply", "--a", "1", "--b", "z", "--f", "1")
    assert code == 0
    saved = json.loads(path.read_text())
    assert (saved["band"], saved["grid_points"], saved["format"]) == (10, 512, "json")
