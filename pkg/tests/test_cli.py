import io
import json

import pytest

from harmdiff.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_enumerate_csv():
    code, out, _ = run("enumerate", "--limit", "1000", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "value,a,b" and len(lines) == 41 and lines[-1] == "972,2,5"


def test_enumerate_json_strings():
    code, out, _ = run("enumerate", "--limit", "10", "--format", "json")
    assert code == 0 and json.loads(out)[-1] == {"value": "9", "a": "0", "b": "2"}


def test_represent():
    code, out, _ = run("represent", "5")
    assert code == 0
    assert "32 - 27" in out and out.strip().endswith("4 representation(s), proven")


def test_classify_and_verify(tmp_path):
    cert = tmp_path / "41.json"
    code, out, _ = run("classify", "41", "--emit-cert", str(cert))
    assert code == 0 and out.startswith("41: ndh")
    code, out, _ = run("verify", str(cert))
    assert code == 0 and "ok" in out


def test_classify_unknown_exit_2():
    code, out, _ = run("classify", "41", "--pool", "7")
    assert code == 2 and "unknown" in out


def test_verify_malformed_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("verify", str(bad))[0] == 1


def test_verify_tampered_exit_3(tmp_path):
    cert = tmp_path / "41.json"
    run("classify", "41", "--emit-cert", str(cert))
    data = json.loads(cert.read_text())
    data["cases"][0]["parameters"]["modulus"] = "7"
    cert.write_text(json.dumps(data))
    code, _, err = run("verify", str(cert))
    assert code == 3 and "rejected" in err


def test_usage_errors_exit_1():
    assert run()[0] == 1
    assert run("classify")[0] == 1
    assert run("scan", "1-100")[0] == 1
    assert run("classify", "0")[0] == 1
    assert run("represent", "5", "--bound", "5000")[0] == 1


def test_scan_deterministic_across_jobs():
    serial = run("scan", "1..120", "--jobs", "1")
    parallel = run("scan", "1..120", "--jobs", "4")
    assert serial[0] == parallel[0] == 0
    assert serial[1] == parallel[1]
    rows = serial[1].splitlines()[1:101]
    assert sum(1 for r in rows if r.split(",")[1] == "ndh") == 11


def test_scan_json_and_out(tmp_path):
    target = tmp_path / "scan.json"
    code, out, _ = run("scan", "--lo", "40", "--hi", "45", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert [r["status"] for r in json.loads(target.read_text())][1:4] == ["ndh", "representable-proven", "ndh"]


def test_cache_round_trip(tmp_path):
    cache = tmp_path / "cache.json"
    first = run("classify", "97", "--json", "--cache", str(cache))
    assert cache.exists()
    second = run("classify", "97", "--json", "--cache", str(cache))
    assert first == second


def test_cache_from_environment(tmp_path, monkeypatch):
    cache = tmp_path / "env-cache.json"
    monkeypatch.setenv("HARMDIFF_CACHE", str(cache))
    assert run("classify", "43")[0] == 0
    assert cache.exists()


def test_config_file(tmp_path):
    cfg = tmp_path / "h.cfg"
    cfg.write_text("pool = 7\nexponent_bound = 40\n")
    assert run("classify", "41", "--config", str(cfg))[0] == 2
    cfg.write_text("pool = seven\n")
    assert run("classify", "41", "--config", str(cfg))[0] == 1


@pytest.mark.parametrize(
    "argv,needle",
    [
        (("families", "fermat"), '"n": "65537"'),
        (("families", "mersenne", "--exponents", "2,3,5"), '"reps": [\n      "32-1"'),
        (("families", "x41", "--kind", "pow3", "--max-exp", "2"), '"n": "369"'),
        (("families", "p48k41", "--count", "3"), '"n": "137"'),
        (("families", "sums", "--sum-family", "fermat"), "3,5,8,1,1"),
    ],
)
def test_families(argv, needle):
    code, out, _ = run(*argv)
    assert code == 0 and needle in out


def test_bad_mersenne_exponent():
    assert run("families", "mersenne", "--exponents", "11")[0] == 1


def test_abc():
    code, out, _ = run("abc", "--value-bound", "1000", "--exceptional-only")
    assert code == 0
    assert out.splitlines()[1:] == ["1,8,9,6,1.226294,1"]


def test_chain_verify():
    code, out, _ = run("chain-verify")
    assert code == 0 and "valid" in out and "order" in out


def test_chain_verify_bad_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"form": "A"}))
    assert run("chain-verify", str(p))[0] == 1
