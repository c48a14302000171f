import csv
import io
import json

import pytest

from thicksets.cli import dispatch
from thicksets.config import Config, ConfigError, load_config, parse_config
from thicksets.report import Report, check, report_thick, report_vdw


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_thick_exit_codes(capsys):
    code, doc = run_json(capsys, "thick", "--set", "2Z")
    assert code == 0 and doc["verdict"] == "thick" and doc["cert"]["payload"]["n"] == 3
    code, doc = run_json(capsys, "thick", "--set", "1+2Z | -1+2Z")
    assert code == 1 and doc["cert"]["payload"]["spacing"] == 2


def test_parse_error_is_usage(capsys):
    code, _, err = run(capsys, "parse", "--set", "Z + 3Z")
    assert code == 64 and "position 2" in err


def test_missing_command_is_usage(capsys):
    assert run(capsys)[0] == 64
    assert run(capsys, "thick")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64


def test_rotation_member(capsys):
    code, doc = run_json(capsys, "rotation", "--alpha", "sqrt2", "--t", "1/3", "--member", "1")
    assert code == 1
    code, doc = run_json(capsys, "rotation", "--t", "1/3", "--member", "-2")
    assert code == 0


def test_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "thick", "--set", "2Z")
    assert code == 0 and out.startswith("thick:")


@pytest.mark.parametrize("argv", [
    ["parse", "--set", "3Z & (5, inf) | -3Z & (-inf, -5) | 0"],
    ["thick", "--set", "2Z"],
    ["thick", "--set", "1+2Z | -1+2Z"],
    ["generic", "--set", "2Z & (0, inf)"],
    ["rotation", "--t", "1/3", "--member", "2"],
    ["rotation", "--t", "1/3", "--witnesses", "20"],
    ["rotation", "--t", "1/3", "--thickness", "--window", "200"],
    ["vdw", "--n", "2", "--variant", "2"],
    ["heis", "--n", "2", "--member", "0,0,1"],
    ["hom", "--torsion", "2,3,13,235", "--eps", "1/10", "--pairs", "500"],
], ids=lambda a: a[0] + "-" + a[-1].replace(" ", ""))
def test_check_cert_roundtrip(capsys, tmp_path, argv):
    code, doc = run_json(capsys, *argv)
    assert code in (0, 1)
    f = tmp_path / "cert.json"
    f.write_text(json.dumps(doc))
    code, res = run_json(capsys, "--check-cert", str(f))
    assert code == 0 and res["valid"], res


def test_tampered_cert_rejected(capsys, tmp_path):
    _, doc = run_json(capsys, "thick", "--set", "2Z")
    doc["cert"]["payload"]["witness"] = [0, 2]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, res = run_json(capsys, "--check-cert", str(f))
    assert code == 1 and not res["valid"]


def test_unreadable_cert(capsys, tmp_path):
    f = tmp_path / "junk.json"
    f.write_text("{not json")
    assert run(capsys, "--check-cert", str(f))[0] == 64


def test_sweep_bohr_membership(capsys):
    code, out, _ = run(capsys, "sweep", "--kind", "bohr_membership", "--range", "-100:100")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 201
    assert rows[100]["n"] == "0" and rows[100]["member"] == "True"


def test_sweep_empty_range(capsys):
    code, out, _ = run(capsys, "sweep", "--kind", "bohr_membership", "--range", "5:4")
    assert code == 0 and out.strip().splitlines() == ["n,value,distance,member,distance_approx"]


def test_sweep_other_kinds(capsys, tmp_path):
    f = tmp_path / "prof.csv"
    assert run(capsys, "sweep", "--kind", "generation_profile", "--n", "2", "--out", str(f))[0] == 0
    rows = list(csv.DictReader(f.open()))
    assert [int(r["count"]) for r in rows] == [1, 26, 32, 4]
    code, out, _ = run(capsys, "sweep", "--kind", "witness_table", "--M", "10")
    assert code == 0 and len(out.strip().splitlines()) == 11


def test_config_parsing(tmp_path, monkeypatch):
    c = parse_config("# comment\nwindow = 500\n\nseed = 7  # trailing\n")
    assert c.window == 500 and c.seed == 7 and c.cap == 64
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("colour = 3")
    with pytest.raises(ConfigError):
        parse_config("window = -3")
    with pytest.raises(ConfigError):
        parse_config("window = lots")
    f = tmp_path / "run.cfg"
    f.write_text("cap = 12\n")
    monkeypatch.setenv("THICKSETS_CONFIG", str(f))
    assert load_config().cap == 12
    monkeypatch.delenv("THICKSETS_CONFIG")
    assert load_config() == Config()


def test_bad_config_is_usage(capsys, tmp_path):
    f = tmp_path / "bad.cfg"
    f.write_text("nonsense = 1\n")
    assert run(capsys, "--config", str(f), "thick", "--set", "2Z")[0] == 64


def test_seed_recorded(capsys):
    _, doc = run_json(capsys, "--seed", "5", "thick", "--set", "2Z")
    assert doc["config"]["seed"] == 5


def test_cert_bytes_deterministic():
    a = report_vdw(2, 1, Config())
    b = report_vdw(2, 1, Config())
    a.timings, b.timings = {"seconds": 1.0}, {"seconds": 2.0}
    assert a.cert_bytes() == b.cert_bytes()
    assert report_thick("2Z", Config()).input_hash == report_thick("2Z", Config()).input_hash
    ok, _ = check(json.loads(a.render("json")))
    assert ok and isinstance(a, Report)
