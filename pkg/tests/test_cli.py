import csv
import io
import json
import subprocess
import sys

import pytest

from matterwave import __version__
from matterwave.cli import main
from matterwave.experiments import REGISTRY, run_experiment
from matterwave.report import strip_timestamp

SUBCOMMANDS = ["constants", "dispersion", "wave-residual", "continuity", "maxwell", "lorentz", "uncertainty",
               "schrodinger", "photon", "charge", "transfer", "polarization", "spin", "compton", "epr", "suite"]

FAST_ARGS = {
    "polarization": ["--samples", "1000"],
    "epr": ["--n", "1000"],
    "suite": ["quick"],
}


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_registry_matches_subcommands():
    assert sorted(REGISTRY) == sorted(SUBCOMMANDS)


@pytest.mark.parametrize("name", [n for n in SUBCOMMANDS if n != "suite"])
def test_every_subcommand_runs(name, capsys):
    code, out, err = _run([name, *FAST_ARGS.get(name, [])], capsys)
    assert code == 0, err
    report = json.loads(out)
    assert report["experiment"] == name and report["version"] == __version__
    # every result carries a unit and a provenance entry
    for key, res in report["results"].items():
        assert set(res) == {"value", "unit"}, key
        assert report["provenance"][key]


def test_constants_dump(capsys):
    code, out, _ = _run(["constants"], capsys)
    res = json.loads(out)["results"]
    for key in ("e", "m_e", "c", "h", "hbar", "beta_f", "hbar_estimate", "lambda_compton"):
        assert key in res


def test_uncertainty_fields(capsys):
    _, out, _ = _run(["uncertainty", "--u", "2e6"], capsys)
    res = json.loads(out)["results"]
    assert {"k", "delta_k", "delta_x", "product_kx", "product_px", "corrected"} <= set(res)
    assert res["product_kx"]["value"] == pytest.approx(3.141592653589793)


def test_exit_codes(capsys, tmp_path):
    assert _run(["bogus"], capsys)[0] == 3
    code, _, err = _run(["dispersion", "--u", "fast"], capsys)
    assert code == 4
    assert json.loads(err)["exit_code"] == 4
    assert _run(["dispersion", "--u", "0"], capsys)[0] == 4
    assert _run(["maxwell", "--wave", "neutron"], capsys)[0] in (2, 4)
    assert _run(["suite", "weird"], capsys)[0] == 2
    assert _run(["dispersion", "--no-such-flag"], capsys)[0] == 2
    assert _run([], capsys)[0] == 2
    assert _run(["constants", "--config", str(tmp_path / "missing.ini")], capsys)[0] == 5
    assert _run(["constants", "--output", str(tmp_path / "nodir" / "x.json")], capsys)[0] == 5
    assert _run(["dispersion", "--threads", "0"], capsys)[0] == 4


def test_error_is_json_on_stderr(capsys):
    code, out, err = _run(["bogus"], capsys)
    payload = json.loads(err)
    assert out == "" and payload["exit_code"] == code and payload["error"] == "unknown_experiment"


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[global]\nseed = 7\n\n[dispersion]\nu = 2e6\nsamples = 10\n")
    code, out, _ = _run(["dispersion", "--config", str(cfg)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["inputs"]["u"] == 2e6 and rep["inputs"]["seed"] == 7
    code, out, _ = _run(["dispersion", "--config", str(cfg), "--u", "3e6"], capsys)
    assert json.loads(out)["inputs"]["u"] == 3e6


@pytest.mark.parametrize("text", [
    "[dispersion]\nspeed = 1\n",
    "[global]\ncolour = blue\n",
    "[nonsense]\nx = 1\n",
    "not an ini file",
])
def test_bad_config_rejected(text, capsys, tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text(text)
    assert _run(["dispersion", "--config", str(cfg)], capsys)[0] == 4


def test_csv_output(capsys, tmp_path):
    path = tmp_path / "out.csv"
    assert _run(["compton", "--format", "csv", "--output", str(path)], capsys)[0] == 0
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == ["result", "value", "unit", "provenance"]
    values = {r[0]: r[1] for r in rows[1:]}
    assert float(values["delta_lambda"]) == pytest.approx(2.4263e-12, rel=1e-4)
    assert "e-12" in values["delta_lambda"] and len(values["delta_lambda"].split("e")[0]) >= 13


def test_coarse_grid_reports_failure(capsys):
    # relative residual at n = 64 is about 6e-3, above the 1e-3 pass threshold
    code, out, _ = _run(["continuity", "--n", "64"], capsys)
    assert code == 1 and json.loads(out)["pass"] is False


def test_determinism_byte_identical(capsys):
    outs = []
    for threads in ("1", "3"):
        _, out, _ = _run(["polarization", "--samples", "5000", "--seed", "11", "--threads", threads], capsys)
        outs.append(strip_timestamp(out))
    assert outs[0] == outs[1]
    _, other, _ = _run(["polarization", "--samples", "5000", "--seed", "12"], capsys)
    assert strip_timestamp(other) != outs[0]


@pytest.mark.parametrize("name", ["dispersion", "wave-residual", "transfer", "epr", "spin", "compton"])
def test_report_round_trip(name, capsys):
    _, out, _ = _run([name, *FAST_ARGS.get(name, []), "--seed", "3"], capsys)
    first = json.loads(out)
    again = run_experiment(name, dict(first["inputs"]), seed=first["inputs"].get("seed"))
    assert json.loads(strip_timestamp(again.to_json()))["results"] == first["results"]


def test_suite_table_and_report(capsys, tmp_path):
    path = tmp_path / "suite.json"
    code, out, _ = _run(["suite", "quick", "--threads", "4", "--output", str(path)], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 16 and all(" PASS " in line for line in lines)
    rep = json.loads(path.read_text())
    assert rep["pass"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matterwave", "spin", "--kind", "fermion"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["inputs"]["kind"] == "fermion"
    proc = subprocess.run([sys.executable, "-m", "matterwave", "--version"], capture_output=True, text=True)
    assert __version__ in proc.stdout
