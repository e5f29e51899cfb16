import csv
import filecmp
import math

import numpy as np
import pytest

from dirgsp.digraph import format_edge_list, perturbed_cycle
from dirgsp.harness.cli import main
from dirgsp.harness.experiments import (
    DENOISE_HEADER,
    METRICS_HEADER,
    SAMPLE_HEADER,
    SPECTRA_HEADER,
    bound_holds,
    expected_norm,
)


def _run(tmp_path, *argv):
    code = main([*argv, "--out", str(tmp_path)])
    return code


def _read(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


@pytest.mark.parametrize(
    "cmd, name, header",
    [
        ("table1", "metrics.csv", METRICS_HEADER),
        ("spectra", "spectra.csv", SPECTRA_HEADER),
        ("denoise", "denoise.csv", DENOISE_HEADER),
        ("sample", "sample.csv", SAMPLE_HEADER),
    ],
)
def test_headers_and_determinism(tmp_path, cmd, name, header):
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run(a, cmd, "--seed", "42", "--trials", "5") == 0
    assert _run(b, cmd, "--seed", "42", "--trials", "5") == 0
    got, rows = _read(a / name)
    assert tuple(got) == header
    assert rows
    assert filecmp.cmp(a / name, b / name, shallow=False)
    assert b"\r" not in (a / name).read_bytes()


@pytest.mark.parametrize("cmd, name", [("denoise", "denoise.csv"), ("sample", "sample.csv")])
def test_jobs_do_not_change_output(tmp_path, cmd, name):
    assert _run(tmp_path / "1", cmd, "--seed", "3", "--trials", "12", "--jobs", "1") == 0
    assert _run(tmp_path / "4", cmd, "--seed", "3", "--trials", "12", "--jobs", "4") == 0
    assert filecmp.cmp(tmp_path / "1" / name, tmp_path / "4" / name, shallow=False)


@pytest.mark.parametrize("cmd", ["table1", "denoise", "sample"])
def test_missing_seed_fails(tmp_path, cmd, capsys):
    assert _run(tmp_path, cmd) != 0
    err = capsys.readouterr().err
    assert "seed" in err and err.count("\n") == 1


def test_cycle_only_needs_no_seed(tmp_path):
    assert _run(tmp_path, "table1", "--graph", "cycle") == 0


def test_edge_file_graph(tmp_path):
    g = perturbed_cycle(12, 0.3, 0.8, 5)
    path = tmp_path / "g.txt"
    path.write_text("# twelve vertices\n" + format_edge_list(g))
    assert _run(tmp_path, "table1", "--graph", "file", "--edges", str(path)) == 0
    _, rows = _read(tmp_path / "metrics.csv")
    assert len(rows) == 1 and rows[0][0] == "file"
    assert float(rows[0][1]) > 1.0


def test_bad_edge_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n 3\n0 0 1.0\n")
    assert _run(tmp_path, "table1", "--graph", "file", "--edges", str(path)) == 1
    assert "line 2" in capsys.readouterr().err


def test_table1_with_no_perturbation(tmp_path):
    assert _run(tmp_path, "table1", "--seed", "1", "--p", "0") == 0
    _, rows = _read(tmp_path / "metrics.csv")
    assert rows[0][1:] == rows[1][1:]


def test_spectra_geometry(tmp_path):
    assert _run(tmp_path, "spectra", "--seed", "1") == 0
    _, rows = _read(tmp_path / "spectra.csv")
    lam = {g: np.array([complex(float(r[2]), float(r[3])) for r in rows if r[0] == g]) for g in ("cycle", "perturbed")}
    assert np.max(np.abs(np.abs(lam["cycle"] - 1) - 1)) <= 1e-9
    assert np.sum(np.abs(lam["cycle"]) <= 1e-9) == 1
    assert np.max(np.abs(np.abs(lam["perturbed"] - 1) - 1)) > 1e-3
    ks = [int(r[1]) for r in rows if r[0] == "cycle"]
    assert ks == list(range(20))


def test_denoise_noiseless_is_exact(tmp_path):
    assert _run(tmp_path, "denoise", "--seed", "9", "--levels", "0", "--trials", "20") == 0
    _, rows = _read(tmp_path / "denoise.csv")
    assert len(rows) == 40
    assert max(float(r[3]) for r in rows) <= 1e-8


def test_denoise_kappa_column(tmp_path):
    assert _run(tmp_path, "denoise", "--seed", "1", "--levels", "0.1", "--trials", "3") == 0
    _, rows = _read(tmp_path / "denoise.csv")
    kap = {r[0]: float(r[4]) for r in rows}
    assert kap["cycle"] == pytest.approx(1.0, abs=1e-9) and kap["perturbed"] > 1.0


def test_sample_bound_column(tmp_path):
    assert _run(tmp_path, "sample", "--seed", "5", "--trials", "30") == 0
    _, rows = _read(tmp_path / "sample.csv")
    for r in rows:
        if r[8] == "1":
            continue
        gamma, vnorm, eta, err, bound = map(float, r[3:8])
        assert vnorm * eta / gamma == bound
        assert bound_holds(err, bound)


def test_sample_full_noiseless_recovery(tmp_path):
    assert _run(tmp_path, "sample", "--seed", "5", "--trials", "10", "--samples", "20", "--noise", "0") == 0
    _, rows = _read(tmp_path / "sample.csv")
    assert all(float(r[6]) <= 1e-8 and float(r[7]) == 0.0 for r in rows)


def test_sample_size_validated(tmp_path):
    assert _run(tmp_path, "sample", "--seed", "5", "--samples", "3") == 1


def test_expected_norm():
    # E||z|| for n = 1 is Gamma(3/2) = sqrt(pi)/2; large n approaches sqrt(n)
    assert expected_norm(1) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert expected_norm(400) == pytest.approx(20.0, rel=1e-3)


def test_bound_holds_slack():
    assert bound_holds(1.0, 1.0)
    assert bound_holds(5e-9, 0.0)
    assert not bound_holds(1.01, 1.0)
