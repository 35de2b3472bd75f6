import json
import os

import pytest

from pvzeta import cli
from pvzeta.errors import ConfigError


def run(argv):
    return cli.main(argv)


def test_funceq_example_passes(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    status = run(["funceq", "--eq", "12", "--s", "0.5", "--testfn", "gaussian:a=3.14159,n=1", "--out", str(out)])
    assert status == 0
    rows = [json.loads(l) for l in out.read_text().splitlines()]
    assert len(rows) == 1 and rows[0]["status"] == "pass"


def test_heat_printed_semigroup_fails(tmp_path):
    out = tmp_path / "r.jsonl"
    status = run(["heat", "--check", "semigroup", "--variant", "printed", "--t", "0.5", "--s", "0.5", "--out", str(out)])
    assert status == 2
    row = json.loads(out.read_text().splitlines()[0])
    ratio = row["extra"]["measured_ratio"]["re"]
    assert abs(ratio - 1.4142136) < 1e-6


def test_empty_check_list_exits_zero(tmp_path):
    out = tmp_path / "r.jsonl"
    status = run(["funceq", "--eq", "12", "--s", "", "--out", str(out)])
    assert status == 0
    assert out.read_text() == ""


def test_unknown_suite_exits_one():
    assert run(["suite", "bogus"]) == 1


def test_seed_required_for_montecarlo():
    assert run(["probe", "--what", "scaling"]) == 1


def test_csv_projection(tmp_path):
    out = tmp_path / "r.csv"
    status = run(["funceq", "--eq", "12", "--s", "0.5", "--testfn", "gaussian:a=3.14159,n=1", "--format", "csv", "--out", str(out)])
    assert status == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("check,anchor,params")
    assert len(lines) == 2


def test_config_file_and_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("eq=12\ns=0.5\ntestfn=gaussian:a=3.14159,n=1\n")
    out = tmp_path / "r.jsonl"
    assert run(["funceq", "--config", str(cfg), "--out", str(out)]) == 0
    cfg.write_text("eq=12\ns=0.5\nbogus_key=1\n")
    assert run(["funceq", "--config", str(cfg)]) == 1


def test_cli_flag_overrides_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("eq=12\ns=0.5\ntestfn=gaussian:a=3.14159,n=1\n")
    out = tmp_path / "r.jsonl"
    assert run(["funceq", "--config", str(cfg), "--s", "0.6", "--out", str(out)]) == 0
    row = json.loads(out.read_text().splitlines()[0])
    assert row["params"]["s"]["re"] == 0.6


def test_tol_dir_env_override(tmp_path, monkeypatch):
    told = tmp_path / "tols"
    told.mkdir()
    # absurdly tight tolerance forces a failure on a correct identity
    (told / "funceq.tol").write_text("funceq-eq12=1e-30\n")
    monkeypatch.setenv(cli.TOL_DIR_ENV, str(told))
    out = tmp_path / "r.jsonl"
    status = run(["funceq", "--eq", "12", "--s", "0.5", "--testfn", "gaussian:a=3.14159,n=1", "--out", str(out)])
    assert status == 2


def test_runconfig_rejects_unknown_key():
    with pytest.raises(ConfigError):
        cli.RunConfig("funceq", {"nonsense": 1})
    with pytest.raises(ConfigError):
        cli.RunConfig("nonsense", {})


def test_byte_identical_reruns(tmp_path):
    args = ["zeta", "--check", "residue", "--s", "0", "--k", "1,2", "--testfn", "gaussian:a=3.14159,n=1"]
    o1, o2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(args + ["--out", str(o1)]) == 0
    assert run(args + ["--out", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()


def test_zeta_eval_report(tmp_path):
    out = tmp_path / "r.jsonl"
    status = run(["zeta", "--space", "scalar1d", "--s", "0.4", "--testfn", "gaussian:a=3.14159,n=1", "--out", str(out)])
    assert status == 0
    row = json.loads(out.read_text().splitlines()[0])
    assert row["check"] == "zeta-eval"


def test_heat_profile_dump(tmp_path):
    out = tmp_path / "r.jsonl"
    dump = tmp_path / "profile.csv"
    status = run(["heat", "--check", "kernel", "--t", "0.1", "--dump-profile", str(dump), "--out", str(out)])
    assert status == 0
    lines = dump.read_text().splitlines()
    assert lines[0] == "t,x,St_phi"
    assert len(lines) == 101
