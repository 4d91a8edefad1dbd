import json

import pytest

from main import run
from reports import dumps


@pytest.fixture
def files(tmp_path):
    paths = {
        "c4": tmp_path / "c4.edges",
        "fan6": tmp_path / "fan6.edges",
        "good": tmp_path / "good.col",
        "bad": tmp_path / "bad.col",
        "broken": tmp_path / "broken.edges",
    }
    paths["c4"].write_text("4; 0-1 1-2 2-3 3-0\n")
    paths["fan6"].write_text("6; 1-2 2-3 3-4 4-5 0-1 0-2 0-3 0-4 0-5\n")
    paths["good"].write_text("3; 0:1 1:2 2:3 3:2\n")
    paths["bad"].write_text("2; 0:1 1:1 2:2 3:2\n")
    paths["broken"].write_text("4; 0-1 1-1\n")
    return {k: str(v) for k, v in paths.items()}


def output(capsys):
    return json.loads(capsys.readouterr().out)


def test_spectrum_reports_json(files, capsys):
    assert run(["spectrum", "--graph", files["c4"]]) == 0
    payload = output(capsys)
    assert payload["feasible_t"] == [2, 3]
    assert payload["w"] == 2 and payload["W"] == 3
    assert payload["unknowns"] == []


def test_bounds_for_fan(files, capsys):
    assert run(["bounds", "--graph", files["fan6"], "--explain"]) == 0
    payload = output(capsys)
    assert payload["ceiling"] == 5
    assert payload["ceiling_source"] == "outerplanar"
    assert any("outerplanar" in line for line in payload["explain"])


def test_verify_exit_codes(files, capsys):
    assert run(["verify", "--graph", files["c4"], "--coloring", files["good"]]) == 0
    assert output(capsys)["interval"] is True
    assert run(["verify", "--graph", files["c4"], "--coloring", files["bad"]]) == 0
    assert output(capsys)["violations"]
    assert run(["verify", "--graph", files["c4"], "--coloring", files["bad"], "--strict"]) == 2


def test_usage_and_input_errors_exit_one(files, tmp_path):
    assert run(["spectrum", "--graph", files["c4"], "--bogus"]) == 1
    assert run(["frobnicate"]) == 1
    assert run(["spectrum", "--graph", str(tmp_path / "missing.edges")]) == 1
    assert run(["spectrum", "--graph", files["broken"]]) == 1
    assert run(["solve", "--graph", files["c4"]]) == 1
    assert run(["solve", "--graph", files["c4"], "--t", "0"]) == 1
    assert run(["spectrum", "--graph", files["c4"], "--node-limit", "0"]) == 1


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0


def test_solve(files, capsys):
    assert run(["solve", "--graph", files["c4"], "--t", "3"]) == 0
    payload = output(capsys)
    assert payload["status"] == "feasible"
    assert len(payload["witness"]) == 4
    assert run(["solve", "--graph", files["fan6"], "--max"]) == 0
    payload = output(capsys)
    assert payload["W"] == 5 and payload["exact"] is True
    assert run(["solve", "--graph", files["c4"], "--t", "4", "--strict"]) == 2


def test_certify(files, capsys):
    assert run(["certify", "--graph", files["c4"], "--coloring", files["good"]]) == 0
    payload = output(capsys)
    assert payload["passed"] is True
    assert payload["theorem"] == "outerplanar_chain"
    assert payload["derived_bound"] == "3"
    assert run(["certify", "--graph", files["c4"], "--coloring", files["bad"]]) == 1


def test_generate_writes_graph(tmp_path, capsys):
    out = tmp_path / "fan6.edges"
    assert run(["generate", "--family", "fan", "--n", "6", "--out", str(out)]) == 0
    payload = output(capsys)
    assert (payload["n"], payload["m"]) == (6, 9)
    assert out.read_text().strip() == payload["graph"]
    assert run(["generate", "--family", "complete_bipartite", "--params", "2", "3", "--out-format", "graph6"]) == 0
    assert output(capsys)["m"] == 6
    assert run(["generate", "--family", "random_planar", "--n", "8", "--m", "18", "--seed", "4"]) == 0
    first = output(capsys)["graph"]
    assert run(["generate", "--family", "random_planar", "--n", "8", "--m", "18", "--seed", "4"]) == 0
    assert output(capsys)["graph"] == first
    assert run(["generate", "--family", "fan", "--n", "1"]) == 1


def test_oracle(capsys):
    assert run(["oracle", "--family", "hypercube", "--n", "2"]) == 0
    payload = output(capsys)
    assert payload["match"] is True
    assert payload["spectrum"]["feasible_t"] == [2, 3]


def test_json_report_round_trips(files, capsys):
    assert run(["bounds", "--graph", files["c4"]]) == 0
    text = capsys.readouterr().out
    assert dumps(json.loads(text)) + "\n" == text


def test_pretty_output(files, capsys):
    assert run(["spectrum", "--graph", files["c4"], "--pretty"]) == 0
    text = capsys.readouterr().out
    assert "SPECTRUM REPORT" in text
    assert "feasible_t: [2, 3]" in text


def test_manifest_is_reproducible(files, tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["spectrum", "--graph", files["c4"], "--manifest", str(first)]) == 0
    assert run(["spectrum", "--graph", files["c4"], "--manifest", str(second)]) == 0
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert a["results"] == b["results"]
    assert a["input_digests"] == b["input_digests"]
    assert "millis" not in json.dumps(a["results"])
    assert a["seed"] == b["seed"]


def test_audit_exit_codes(tmp_path, capsys):
    config = {"corpus": [{"family": "cycle", "params": [[4], [5]]}, {"family": "star", "params": [[2]]}]}
    path = tmp_path / "audit.json"
    path.write_text(json.dumps(config))
    assert run(["audit", "--config", str(path)]) == 0
    assert output(capsys)["status"] == "pass"
    config["limits"] = {"node_limit": 1}
    path.write_text(json.dumps(config))
    assert run(["audit", "--config", str(path)]) == 3
    assert output(capsys)["status"] == "unknown"
    path.write_text(json.dumps({"corpus": []}))
    assert run(["audit", "--config", str(path)]) == 0
    assert run(["audit", "--config", str(tmp_path / "missing.json")]) == 1


def test_audit_failure_exits_two(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr("agents.auditor.matches_expected", lambda expected, result: False)
    path = tmp_path / "audit.json"
    path.write_text(json.dumps({"corpus": [{"family": "path", "params": [[3]]}]}))
    assert run(["audit", "--config", str(path)]) == 2
    assert output(capsys)["status"] == "fail"


def test_cache_is_used_when_configured(files, tmp_path, capsys):
    cache = tmp_path / "cache.json"
    assert run(["spectrum", "--graph", files["c4"], "--cache", str(cache)]) == 0
    first = output(capsys)
    assert cache.exists()
    assert run(["spectrum", "--graph", files["c4"], "--cache", str(cache)]) == 0
    assert output(capsys)["feasible_t"] == first["feasible_t"]


def test_hunt_finds_sharp_planar_instance(capsys):
    assert run(["hunt", "--n", "8", "--count", "0"]) == 0
    payload = output(capsys)
    assert payload["target"] == 10
    assert payload["reproduced"] is True
    assert payload["candidate"] == "k4_chain(3)"
    assert payload["certificate_passed"] is True


def test_input_errors_are_reported_once(files, capsys):
    assert run(["spectrum", "--graph", files["broken"]]) == 1
    assert capsys.readouterr().err.count("loop at vertex 1") == 1


def test_unexpected_errors_are_logged_with_traceback(files, tmp_path, capsys):
    out = tmp_path / "missing-dir" / "fan.edges"
    assert run(["generate", "--family", "fan", "--n", "5", "--out", str(out)]) == 1
    assert "Traceback" in capsys.readouterr().err
    manifest = tmp_path / "missing-dir" / "manifest.json"
    assert run(["spectrum", "--graph", files["c4"], "--manifest", str(manifest)]) == 1
    assert "Traceback" in capsys.readouterr().err


def test_parallel_flag_reaches_audit(tmp_path, capsys):
    path = tmp_path / "audit.json"
    path.write_text(json.dumps({"corpus": [{"family": "cycle", "params": [[4], [6]]}]}))
    assert run(["audit", "--config", str(path), "--parallel"]) == 0
    assert output(capsys)["status"] == "pass"
