import csv
import io
import json
import subprocess
import sys

import pytest

from pdmzero.ambiguity import named_set
from pdmzero.cli import main
from pdmzero.separation import QuantumNumbers
from pdmzero.spectra import REPORT_HEADER, constraint_residual, solve_family, ALPHA_EQUALS_GAMMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_constraint_residual_json(capsys):
    code, out, _ = run(capsys, "constraint", "residual", "--case", "1", "--j", "0", "--nrho", "0",
                       "--nz", "0", "--m", "0", "--set", "mm", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert list(obj) == list(REPORT_HEADER)
    assert abs(obj["residual"]) < 1e-15
    assert obj["admissible"] is True


def test_constraint_residual_matches_library(capsys):
    code, out, _ = run(capsys, "constraint", "residual", "--case", "2", "--j", "0.5", "--nrho", "1",
                       "--alpha", "-0.1", "--beta", "-0.6", "--gamma", "-0.3", "--mode", "rederived")
    from pdmzero.ambiguity import AmbiguityParameters
    rep = constraint_residual(2, AmbiguityParameters(-0.1, -0.6, -0.3), 0.5, QuantumNumbers(1, 0, 0), mode="rederived")
    assert code == (0 if rep.admissible else 1)
    assert float(rows(out)[0]["residual"]) == rep.residual


def test_inadmissible_exit_1(capsys):
    code, out, err = run(capsys, "constraint", "residual", "--case", "1", "--set", "gw")
    assert code == 1
    assert rows(out)[0]["admissible"] == "false"
    assert json.loads(err)["reason"] == "ell_radicand_negative"


def test_zeta_example(capsys):
    code, out, _ = run(capsys, "zeta", "--alpha", "0", "--beta", "-1", "--gamma", "0", "--j", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert (obj["zeta"], obj["F"], obj["script_l_abs"]) == (0, 2, 1.5)


def test_zeta_off_constraint_is_usage_error(capsys):
    code, _, _ = run(capsys, "zeta", "--alpha", "0", "--beta", "0", "--gamma", "0")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["constraint", "residual", "--case", "5", "--set", "mm"],
    ["constraint", "residual", "--case", "1", "--set", "nope"],
    ["constraint", "residual", "--case", "1"],
    ["constraint", "residual", "--case", "1", "--set", "mm", "--alpha", "0"],
    ["constraint", "residual", "--case", "1", "--set", "mm", "--nrho", "-1"],
    ["constraint", "solve", "--case", "1", "--family", "beta", "--bracket", "-1", "0"],
    ["constraint", "solve", "--case", "1", "--family", "alpha-eq-gamma", "--bracket", "0", "-1"],
    ["spectrum", "analytic", "--potential", "ho", "--l-abs", "0.5", "--coupling", "-2"],
    ["constraint", "residual", "--case", "1", "--set", "mm", "--a-sq", "0"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_sets_list(capsys):
    code, out, _ = run(capsys, "sets", "list")
    assert code == 0
    assert [r["set"] for r in rows(out)] == ["bdd", "zk", "mm", "gw", "lk"]


def test_sets_check(capsys):
    code, out, _ = run(capsys, "sets", "check", "--case", "1")
    assert code == 0
    table = {r["set"]: float(r["residual"]) for r in rows(out)}
    assert table["mm"] == 0
    assert all(abs(v) > 0.1 for k, v in table.items() if k != "mm")


def test_constraint_solve(capsys):
    code, out, _ = run(capsys, "constraint", "solve", "--case", "1", "--family", "alpha-eq-gamma",
                       "--bracket", "-1", "0")
    assert code == 0
    got = [float(r["alpha"]) for r in rows(out)]
    lib = [p.alpha for p in solve_family(1, ALPHA_EQUALS_GAMMA, 0, QuantumNumbers(0, 0, 0), bracket=(-1, 0))]
    assert got == lib


def test_constraint_scan(capsys):
    code, out, _ = run(capsys, "constraint", "scan", "--case", "1", "--nrho-max", "1", "--nz-max", "1",
                       "--m-max", "1", "--set", "mm")
    assert code == 0
    table = rows(out)
    assert len(table) == 8
    assert out.splitlines()[0] == ",".join(REPORT_HEADER)


def test_constraint_scan_empty(capsys):
    code, out, _ = run(capsys, "constraint", "scan", "--case", "1", "--nrho-max", "-1", "--nz-max", "0",
                       "--m-max", "0", "--set", "mm")
    assert code == 0
    assert out == ",".join(REPORT_HEADER) + "\n"
    code, out, _ = run(capsys, "constraint", "scan", "--case", "1", "--nrho-max", "-1", "--nz-max", "0",
                       "--m-max", "0", "--set", "mm", "--format", "json")
    assert out == "[]\n"


def test_spectrum_analytic(capsys):
    code, out, _ = run(capsys, "spectrum", "analytic", "--potential", "coulomb", "--l-abs", "0.5",
                       "--coupling", "1", "--levels", "1", "--convention", "published")
    assert code == 0
    assert float(rows(out)[0]["energy"]) == pytest.approx(-4 / 9)


def test_spectrum_numeric(capsys):
    code, out, _ = run(capsys, "spectrum", "numeric", "--potential", "ho", "--l-abs", "0.5",
                       "--coupling", "2", "--levels", "3")
    assert code == 0
    for r in rows(out):
        assert abs(float(r["delta"])) < 1e-3


def test_vonroos_residual_refine(capsys, tmp_path):
    field = tmp_path / "field.csv"
    code, out, _ = run(capsys, "vonroos", "residual", "--case", "1", "--set", "mm", "--grid-h", "0.04",
                       "--rho-max", "5", "--z-max", "3", "--refine", "--field-out", str(field))
    assert code == 0
    table = rows(out)
    assert len(table) == 2
    assert table[0]["convergence_order"] == ""
    assert 1.5 < float(table[1]["convergence_order"]) < 2.5
    assert rows(field.read_text())[0].keys() == {"rho", "z", "residual"}


def test_wavefunction_emit(capsys):
    code, out, _ = run(capsys, "wavefunction", "emit", "--potential", "ho", "--l-abs", "0.5",
                       "--coupling", "2", "--x-max", "8", "--grid-h", "0.01")
    assert code == 0
    table = rows(out)
    h = float(table[0]["x"])
    assert sum(float(r["u"]) ** 2 for r in table) * h == pytest.approx(1.0, abs=1e-8)
    code, num, _ = run(capsys, "wavefunction", "emit", "--potential", "ho", "--l-abs", "0.5",
                       "--coupling", "2", "--x-max", "8", "--grid-h", "0.01", "--source", "numeric")
    assert code == 0
    assert len(rows(num)) == len(table)


def test_potential_emit(capsys):
    code, out, _ = run(capsys, "potential", "emit", "--case", "4", "--grid-h", "1", "--rho-max", "2",
                       "--z-max", "2")
    assert code == 0
    assert rows(out) == [{"rho": "1", "z": "1", "value": "-2"}]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "o.csv"
    code, out, _ = run(capsys, "sets", "list", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes().startswith(b"set,name,")
    assert b"\r" not in target.read_bytes()


def test_pretty_format(capsys):
    code, out, _ = run(capsys, "sets", "list", "--format", "pretty")
    assert code == 0
    assert out.splitlines()[1].startswith("-")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pdmzero", "sets", "list"], capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith(b"set,name")
