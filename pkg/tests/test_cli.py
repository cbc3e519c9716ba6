import csv
import io
import os

import numpy as np
import pytest

from kawahara.cli import main


def call(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_run_writes_csv(tmp_path):
    code, text = call("run", "--scheme", "cn", "--n", "8", "--dt", "1e-3", "--t-final", "1",
                      "--initial", "sin", "--output-dir", str(tmp_path))
    assert code == 0 and "cn: N=8" in text
    header, data = read_csv(tmp_path / "run.csv")
    assert header == ["t", "i1", "i2", "i3", "l2", "cn_iters", "cn_residual"]
    assert np.max(np.abs(data[:, 2] - np.pi)) <= 1e-10
    assert (tmp_path / "run.svg").read_text().startswith("<svg")
    raw = (tmp_path / "run.csv").read_bytes()
    assert b"\r\n" not in raw


def test_csv_floats_round_trip(tmp_path):
    call("run", "--n", "4", "--dt", "1e-2", "--t-final", "0.1", "--output-dir", str(tmp_path), "--formats", "csv")
    with open(tmp_path / "run.csv") as fh:
        next(fh)
        for line in fh:
            for tok in line.strip().split(","):
                assert repr(float(tok)) == tok or float(repr(float(tok))) == float(tok)
    assert not (tmp_path / "run.svg").exists()


def test_run_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert call("run", "--scheme", "leapfrog", "--n", "6", "--t-final", "0.001",
                    "--initial", "gaussian-bump", "--output-dir", str(d))[0] == 0
    assert (a / "run.csv").read_bytes() == (b / "run.csv").read_bytes()


def test_converge_temporal(tmp_path):
    code, _ = call("converge", "--axis", "temporal", "--scheme", "cn", "--n", "16", "--dts", "4e-3,2e-3,1e-3",
                   "--t-final", "0.1", "--output-dir", str(tmp_path))
    assert code == 0
    header, data = read_csv(tmp_path / "converge.csv")
    assert header == ["param", "error", "observed_order"]
    assert np.isnan(data[0, 2])
    assert np.all((data[1:, 2] >= 1.8) & (data[1:, 2] <= 2.2))


def test_converge_spatial(tmp_path):
    code, text = call("converge", "--axis", "spatial", "--initial", "gaussian-bump", "--ns", "4,8",
                      "--n-ref", "16", "--dt", "1e-5", "--t-final", "0.001", "--output-dir", str(tmp_path))
    assert code == 0 and "ratio" in text
    _, data = read_csv(tmp_path / "converge.csv")
    assert list(data[:, 0]) == [4, 8]


def test_check_prints_each(capsys):
    code, text = call("check")
    lines = text.strip().splitlines()
    assert code == 0
    assert len(lines) == 5 and all(l.startswith("PASS ") for l in lines)
    assert any("convolution" in l for l in lines) and any("soliton" in l for l in lines)


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[scheme]\nscheme = cn\nn_modes = 4\ndt = 1e-2\nt_final = 0.05\n"
                   "[output]\nformats = csv\n")
    code, text = call("run", "--config", str(cfg), "--n", "6", "--output-dir", str(tmp_path))
    assert code == 0 and "N=6" in text and "steps=5" in text


@pytest.mark.parametrize("argv,key", [
    (["run", "--initial", "bogus"], "initial.profile"),
    (["run", "--scheme", "euler"], "scheme.scheme"),
    (["run", "--n", "4.5"], "scheme.n_modes"),
    (["run", "--dt", "fast"], "scheme.dt"),
    (["run", "--nonlinearity", "maybe"], "scheme.nonlinearity"),
    (["run", "--formats", "png"], "output.formats"),
    (["converge", "--axis", "sideways"], "converge.axis"),
    (["converge", "--axis", "spatial", "--ns", "4,8", "--n-ref", "10"], "converge.n_ref"),
])
def test_config_errors_name_key(argv, key, capsys, tmp_path):
    code, _ = call(*argv, "--output-dir", str(tmp_path))
    assert code == 1
    assert key in capsys.readouterr().err


def test_malformed_config(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("scheme = cn\n")
    assert call("run", "--config", str(bad))[0] == 1
    assert "malformed" in capsys.readouterr().err
    unknown = tmp_path / "unknown.ini"
    unknown.write_text("[scheme]\nsteps = 3\n")
    assert call("run", "--config", str(unknown))[0] == 1
    assert "scheme.steps" in capsys.readouterr().err


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _ = call("run", "--output-dir", str(blocker / "sub"))
    assert code == 1
    assert "output.dir" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert call()[0] == 1
    assert call("run", "--no-such-flag")[0] == 1
    assert "usage error" in capsys.readouterr().err


@pytest.mark.filterwarnings("ignore::kawahara.timestepping.CflWarning")
def test_numerical_failure_exit_code(tmp_path, capsys):
    code, _ = call("run", "--scheme", "leapfrog", "--n", "8", "--dt", "1e-3", "--t-final", "1",
                   "--output-dir", str(tmp_path))
    assert code == 2
    err = capsys.readouterr().err
    assert "at step" in err and "t=" in err
    assert not (tmp_path / "run.csv").exists()


def test_nonconvergence_exit_code(tmp_path, capsys):
    code, _ = call("run", "--scheme", "cn", "--n", "8", "--dt", "1e-2", "--cn-max-iter", "1",
                   "--cn-tol", "1e-15", "--output-dir", str(tmp_path))
    assert code == 2
    assert "did not converge" in capsys.readouterr().err


def test_soliton_cli(tmp_path):
    code, text = call("soliton-test", "--n", "256", "--t-final", "0.1", "--record-every", "50",
                      "--output-dir", str(tmp_path))
    assert code == 0 and "residual=" in text
    header, data = read_csv(tmp_path / "soliton.csv")
    assert header == ["t", "l2_error", "crest_position"]
    assert data.shape == (3, 3)


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "kawahara", "run", "--n", "4", "--dt", "1e-2",
                          "--t-final", "0.02", "--output-dir", str(tmp_path)],
                         capture_output=True, text=True)
    assert out.returncode == 0 and os.path.exists(tmp_path / "run.csv")
