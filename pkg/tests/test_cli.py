import json
import os
import subprocess
import sys

import numpy as np
import pytest

from choikit import cli, io
from choikit import maps as M
from choikit.linalg import swap_operator


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_transform_examples(tmp_path, capsys):
    ident = _write(tmp_path / "id.json", {"builtin": "id", "dim": 2})
    code, out, _ = _run(["transform", ident, "--sigma", "id", "--quiet"], capsys)
    assert code == 0
    c = io.matrix_from_json(json.loads(out))
    assert np.array_equal(c, M.choi(M.identity_map(2)).matrix)
    code, out, _ = _run(["transform", ident, "--sigma", "transpose", "--quiet"], capsys)
    assert np.array_equal(io.matrix_from_json(json.loads(out)), swap_operator(2))


def test_transform_ad_matches_library(tmp_path, capsys, rng):
    phi = M.LinearMapRep(3, 2, rng.standard_normal((4, 9)) + 1j * rng.standard_normal((4, 9)))
    s = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    mp = _write(tmp_path / "phi.json", io.map_to_json(phi))
    sp = _write(tmp_path / "s.json", io.matrix_to_json(s))
    out = tmp_path / "c.json"
    assert cli.main(["transform", mp, "--sigma", "ad", "--s", sp, "--out", str(out), "--quiet"]) == 0
    c = io.matrix_from_json(json.loads(out.read_text()))
    assert np.array_equal(c, M.choi_sigma(phi, M.ad_map(s)).matrix)


def test_transform_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = _run(["transform", str(bad)], capsys)
    assert code == 2
    ident = _write(tmp_path / "id.json", {"builtin": "id", "dim": 2})
    sig = _write(tmp_path / "sig.json", {"builtin": "id", "dim": 3})
    code, _, err = _run(["transform", ident, "--sigma-file", sig], capsys)
    assert code == 3 and "M_3" in err and "M_2" in err


@pytest.mark.parametrize("builtin,cone,k,code", [
    ("transpose", "cp", None, 1),
    ("id", "sp", 1, 1),
    ("id", "sp", 2, 0),
    ("transpose", "p", 1, 4),
    ("transpose", "p", 2, 1),
    ("id", "ppt", None, 1),
])
def test_check_exit_codes(tmp_path, capsys, builtin, cone, k, code):
    path = _write(tmp_path / "m.json", {"builtin": builtin, "dim": 2})
    argv = ["check", path, "--cone", cone, "--quiet"] + (["--k", str(k)] if k else [])
    got, out, _ = _run(argv, capsys)
    assert got == code
    report = json.loads(out)
    assert report["status"] == {0: "Member", 1: "NonMember", 4: "Unknown"}[code]
    if code == 1:
        assert report["witness"] is not None


def test_check_ad_is_member(tmp_path, capsys):
    assert cli.main(["gen", "--kind", "ad", "--seed", "1", "--out", str(tmp_path / "ad.json"), "--quiet"]) == 0
    ad = json.loads((tmp_path / "ad.json").read_text())
    assert "s" in ad["metadata"]["certificate"]
    code, _, _ = _run(["check", str(tmp_path / "ad.json"), "--cone", "cp", "--quiet"], capsys)
    assert code == 0


@pytest.mark.parametrize("kind", ["cp", "spk", "positive", "iso", "ad", "form"])
def test_gen_is_deterministic_and_roundtrips(capsys, kind):
    _, a, _ = _run(["gen", "--kind", kind, "--seed", "5", "--m", "2", "--quiet"], capsys)
    _, b, _ = _run(["gen", "--kind", kind, "--seed", "5", "--m", "2", "--quiet"], capsys)
    assert a == b
    obj = json.loads(a)
    assert "certificate" in obj["metadata"]
    if kind == "form":
        form = io.form_from_json(obj)
        assert np.array_equal(form.gram, form.gram.T)
    else:
        phi = io.map_from_json(obj)
        assert io.dumps(io.map_to_json(phi, obj["metadata"])) == a


def test_gen_spk_certificate(capsys):
    _, out, _ = _run(["gen", "--kind", "spk", "--k", "1", "--quiet"], capsys)
    cert = json.loads(out)["metadata"]["certificate"]
    assert cert["max_kraus_rank"] == 1


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["gen", "--kind", "nonsense"])
    assert exc.value.code == 2
    assert cli.main(["gen", "--kind", "cp", "--trials", "0"]) == 2


def test_verify_form_table_suite(capsys):
    code, out, err = _run(["verify", "--suite", "table1", "--seed", "7", "--trials", "100"], capsys)
    assert code == 0
    report = json.loads(out)["reports"]["table1"]
    assert all(v <= 1e-10 for v in report["rows"].values())
    assert "choi_adjoint_is_flip" in err


def test_verify_basis_invariance_negative_control(capsys):
    code, out, _ = _run(["verify", "--suite", "thm33", "--trials", "5", "--quiet"], capsys)
    assert code == 0
    control = json.loads(out)["reports"]["thm33"]["negative_control"]
    assert control["detected"] and control["gamma_f"] == [2.0, -1.0, -1.0, 1.0]


def test_verify_cone_transfer_transpose_k2(capsys):
    code, out, _ = _run(["verify", "--suite", "thm43", "--k", "2", "--trials", "3", "--quiet"], capsys)
    assert code == 0
    detail = json.loads(out)["reports"]["thm43"]["details"]["2"]
    assert detail["status"] == "predicted_failure_found"
    assert not detail["condition_holds"]


def test_verify_failure_writes_reproducer(tmp_path, capsys):
    repro = tmp_path / "repro.json"
    # a negative tolerance cannot be met, so every residual row fails
    code, _, err = _run(["verify", "--suite", "prop52", "--trials", "2", "--tol", "-1",
                         "--repro", str(repro)], capsys)
    assert code == 5
    dump = json.loads(repro.read_text())
    assert dump["command"].startswith("choikit verify --suite prop52")
    inst = dump["failures"]["prop52"][0]["instance"]
    assert io.map_from_json(inst["phi"]).dim_in >= 1


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("CHOIKIT_SEED", "11")
    _, a, _ = _run(["gen", "--kind", "cp", "--quiet"], capsys)
    monkeypatch.delenv("CHOIKIT_SEED")
    _, b, _ = _run(["gen", "--kind", "cp", "--seed", "11", "--quiet"], capsys)
    assert a == b


def test_console_script_and_numpy_fallback(tmp_path):
    env = dict(os.environ, CHOIKIT_NUMBA="0")
    code = "import choikit._kernels as k; print(k.USE_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "False"
    res = subprocess.run([sys.executable, "-m", "choikit.cli", "gen", "--kind", "iso", "--quiet"],
                         env=env, capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["dimIn"] == 2
