import json
import math
import subprocess
import sys

import numpy as np
import pytest

from vkbessel import io as vio
from vkbessel.cli import main
from vkbessel.errors import DomainError
from vkbessel.vk import TriangularArray, VKParams, generate_vk


@pytest.fixture
def omega_file(tmp_path):
    path = tmp_path / "omega.json"
    path.write_text(json.dumps({"alpha": [0.5, 0.25], "beta": 1.0, "gamma": 0.25}))
    return str(path)


@pytest.fixture
def omega_plus_file(tmp_path):
    path = tmp_path / "omega_plus.json"
    path.write_text(json.dumps({"alpha": [0.5], "beta": 1.0}))
    return str(path)


def test_bessel_a_command(capsys):
    rc = main(["bessel-a", "--k", "1/2", "--lam", "0.7", "--z", "1.3"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    want = complex(np.exp(0.7j * 1.3))
    assert abs(complex(doc["re"], doc["im"]) - want) < 1e-12
    assert doc["converged"] is True


def test_bessel_b_command(capsys):
    rc = main(["bessel-b", "--k", "1", "--kprime", "1/2", "--lam", "2", "--z", "1"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    # i*lam squares to -lam^2: alternating version of sum 1/(j!)^2
    want = sum((-1.0) ** j / math.factorial(j) ** 2 for j in range(40))
    assert abs(doc["re"] - want) < 1e-12


def test_usage_error_exit_code_1(capsys):
    assert main(["bessel-a", "--k", "1"]) == 1  # missing required flags
    assert main(["no-such-command"]) == 1


def test_domain_error_exit_code_2(capsys, omega_file):
    # r > n is a precondition violation
    rc = main(["bessel-a", "--k", "1", "--lam", "0.5", "--z", "0.1,0.2"])
    assert rc == 2
    # bad rational
    rc = main(["bessel-a", "--k", "x/y", "--lam", "0.5", "--z", "0.1"])
    assert rc == 2
    # missing omega file
    rc = main(["limit-a", "--k", "1", "--omega", "/nonexistent.json",
               "--x-grid", "lin:0:1:2:r1"])
    assert rc == 2


def test_vk_generate_and_analyze(tmp_path, omega_file, capsys):
    out = tmp_path / "arr.txt"
    rc = main(["vk-generate", "--omega", omega_file, "--n-list", "8,16",
               "--out", str(out)])
    assert rc == 0
    arr = vio.read_triangular(out)
    assert arr.sizes() == [8, 16]
    om = VKParams((0.5, 0.25), 1.0, 0.25)
    assert np.array_equal(arr.rows[8], generate_vk(om, 8))

    rc = main(["vk-analyze", "--array", str(out), "--i-max", "2"])
    assert rc == 0
    text = capsys.readouterr().out
    head, *rows = [ln for ln in text.splitlines() if ln]
    assert head.split(",")[:4] == ["n", "beta_hat", "delta_hat", "gamma_hat"]
    assert len(rows) == 2
    beta_hat = float(rows[0].split(",")[1])
    assert abs(beta_hat - 1.0) < 1e-12


def test_vk_generate_plus(tmp_path, omega_plus_file, capsys):
    rc = main(["vk-generate", "--omega", omega_plus_file, "--n-list", "4,8", "--plus"])
    assert rc == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln]
    assert len(lines[0].split()) == 4
    assert len(lines[1].split()) == 8
    assert all(float(v) >= 0 for v in lines[1].split())


def test_triangular_format_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1.0 2.0\n3.0\n")  # sizes must strictly increase
    with pytest.raises(DomainError):
        vio.read_triangular(bad)
    bad.write_text("1.0\n1.0 2.0\n")  # second row not <<-descending
    with pytest.raises(DomainError):
        vio.read_triangular(bad)


def test_limit_commands(tmp_path, omega_file, omega_plus_file, capsys):
    rc = main(["limit-a", "--k", "1", "--omega", omega_file,
               "--x-grid", "lin:-1:1:3:r2", "--format", "json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc) == 9
    mods = [abs(complex(rec["re"], rec["im"])) for rec in doc]
    assert all(m <= 1.0 + 1e-12 for m in mods)

    rc = main(["limit-b", "--k", "1", "--omega", omega_plus_file,
               "--x-grid", "lin:0:2:3:r2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "x_1,x_2,re,im"


def test_converge_a_command(tmp_path, capsys):
    om = tmp_path / "om.json"
    om.write_text(json.dumps({"alpha": [], "beta": 0.8, "gamma": 0.0}))
    out = tmp_path / "report.csv"
    rc = main([
        "converge-a", "--k", "1", "--omega", str(om), "--n-list", "4,8",
        "--x-grid", "lin:-1:1:3:r1", "--max-degree", "40", "--out", str(out),
    ])
    assert rc == 0
    summary = capsys.readouterr().out
    assert summary.splitlines()[0] == "n,sup_err,mean_err,max_truncation_estimate"
    # constant rows hit the limit exactly (reduction identity): tiny errors
    for line in summary.splitlines()[1:]:
        assert float(line.split(",")[1]) < 1e-8
    rows = vio.read_report_csv(out.read_text())
    assert {r["n"] for r in rows} == {4, 8}


def test_converge_b_command(tmp_path, omega_plus_file, capsys):
    rc = main([
        "converge-b", "--preset", "C", "--p-rule", "n", "--omega", omega_plus_file,
        "--n-list", "4,8", "--x-grid", "lin:0:1:2:r2", "--format", "json",
    ])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["meta"]["kprime_sublinear"] is True
    assert [s["n"] for s in doc["summary"]] == [4, 8]
    assert doc["summary"][1]["sup_err"] < doc["summary"][0]["sup_err"]


def test_converge_b_explicit_kprime(tmp_path, omega_plus_file, capsys):
    rc = main([
        "converge-b", "--k", "1", "--kprime", "1/2,1/2", "--omega", omega_plus_file,
        "--n-list", "4,8", "--x-grid", "lin:0:1:2:r2",
    ])
    assert rc == 0


def test_xgrid_parsing(tmp_path):
    g = vio.parse_x_grid("lin:-2:2:5:r2")
    assert g.shape == (25, 2)
    g = vio.parse_x_grid("rand:0:1:7:r3", seed=5)
    assert g.shape == (7, 3) and g.min() >= 0
    g2 = vio.parse_x_grid("rand:0:1:7:r3", seed=5)
    assert np.array_equal(g, g2)
    path = tmp_path / "grid.txt"
    path.write_text("0.0 0.5\n1.0 0.25\n")
    g = vio.parse_x_grid(str(path))
    assert g.shape == (2, 2)
    with pytest.raises(DomainError):
        vio.parse_x_grid("bogus:1:2:3:r1")


def test_p_rule_parsing():
    assert vio.parse_p_rule("n")(7) == 7
    assert vio.parse_p_rule("2n")(7) == 14
    assert vio.parse_p_rule("n+3")(7) == 10
    assert vio.parse_p_rule("2n-1")(7) == 13
    with pytest.raises(DomainError):
        vio.parse_p_rule("n^2")


def test_module_entrypoint_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "vkbessel", "bessel-a", "--k", "1",
         "--lam", "0.5", "--z", "0.25"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert abs(complex(doc["re"], doc["im"]) - complex(np.exp(0.5j * 0.25))) < 1e-12
