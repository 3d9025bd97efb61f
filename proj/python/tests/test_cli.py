"""Exit codes and schema conformance of the command-line tool (skipped when it is not built)."""
import json
import os
import pathlib
import shutil
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
BIN = os.environ.get("BTQ_BIN") or shutil.which("btq") or str(ROOT / "build" / "btq")
pytestmark = pytest.mark.skipif(not os.path.exists(BIN), reason="btq binary not built")


def run(*args, **kw):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kw)


def test_exit_codes():
    assert run("pic", "--q", "3", "--punctures", "t,inf").returncode == 0
    assert run("pic", "--q", "6").returncode == 2
    assert run("bogus").returncode == 2
    assert run("e1-page", "--q", "4", "--format", "dot").returncode == 4
    assert run("quotient", "--q", "3", "--punctures", "t,inf", "--group", "sl2").returncode == 4
    assert run("model", "--q", "3", "--punctures", "t,inf", "--window", "0").returncode == 2


def test_resource_cap_exit_code():
    # the bar resolution cap applies to the order-120 group
    r = run("e1-page", "--source", "points", "--q", "5", "--qmax", "4")
    assert r.returncode == 3, r.stderr


def test_outputs_are_deterministic(tmp_path):
    a = run("quotient", "--q", "3", "--s", "2", "--radius", "2").stdout
    b = run("quotient", "--q", "3", "--s", "2", "--radius", "2", "--threads", "1").stdout
    assert a == b and a


def test_schemas(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    cfg_schema = json.loads((ROOT / "schema" / "config.schema.json").read_text())
    cc_schema = json.loads((ROOT / "schema" / "chain_complex.schema.json").read_text())
    cfg = {"q": 3, "punctures": ["t", "inf"], "coeff": "Z"}
    jsonschema.validate(cfg, cfg_schema)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out = json.loads(run("pic", "--config", str(path)).stdout)
    assert out["unit_rank"] == 1
    pc = json.loads(run("points-complex", "--q", "3", "--N", "2").stdout)
    jsonschema.validate(pc["chain_complex"], cc_schema)
    cc = tmp_path / "cc.json"
    cc.write_text(json.dumps(pc["chain_complex"]))
    h = json.loads(run("homology", "--input", str(cc)).stdout)
    assert [g["str"] for g in h["homology"]] == ["Z", "0", "Z"]


def test_verify_tap():
    r = run("verify", "apartment-spheres", "serre-ray")
    assert r.returncode == 0
    assert r.stdout.splitlines()[1] == "1..2"
    assert "ok 2 - serre-ray" in r.stdout
