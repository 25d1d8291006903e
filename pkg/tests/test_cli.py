import json

import pytest

import main as entry
from modules import cli
from modules.fixtures import fixture_path


def run(capsys, no_config, *argv):
    code = cli.main([*argv, "--config", no_config])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, no_config, *argv):
    code, out = run(capsys, no_config, *argv)
    return code, json.loads(out)


def fixture_text(name):
    with open(fixture_path(name), encoding="utf-8") as f:
        return f.read()


@pytest.fixture
def identity_map(tmp_path):
    path = tmp_path / "identity.json"
    path.write_text(json.dumps({"field": {"kind": "Q"}, "rows": 2, "cols": 2,
                                "entries": [["1", "0"], ["0", "1"]]}), encoding="utf-8")
    return str(path)


# ----------------------------------------------------------------------
# check / check-op
# ----------------------------------------------------------------------
def test_check_anti_flexible(capsys, no_config):
    code, report = run_json(capsys, no_config, "check", fixture_path("E"), "--identity", "anti-flexible")
    assert code == cli.EXIT_PASS
    assert report["result"] == "pass"


def test_check_reports_witness(capsys, no_config):
    code, report = run_json(capsys, no_config, "check", fixture_path("E"), "--identity", "associative")
    assert code == cli.EXIT_FAIL
    assert report["witness"]["indices"] == [0, 1, 0]
    assert report["witness"]["discrepancy"] == ["-1", "0"]


def test_check_pair_and_bimodule(capsys, no_config):
    code, _ = run(capsys, no_config, "check", fixture_path("P_D"), "--identity", "pre-anti-flexible")
    assert code == cli.EXIT_PASS
    code, _ = run(capsys, no_config, "check", fixture_path("E_dual"), "--identity", "bimodule")
    assert code == cli.EXIT_PASS


def test_cyclic_form_needs_form(capsys, no_config):
    code, error = run_json(capsys, no_config, "check", fixture_path("D"), "--identity", "cyclic-form")
    assert code == cli.EXIT_USAGE
    assert error["error"] == "UsageError"


def test_check_rota_baxter(capsys, no_config):
    code, report = run_json(capsys, no_config, "check-op", fixture_path("D"),
                            "--kind", "rb", "--operator", fixture_path("D_rb"), "--graph")
    assert code == cli.EXIT_PASS
    assert report["result"] == "pass"


def test_check_rota_baxter_failure(capsys, no_config, identity_map):
    code, _ = run(capsys, no_config, "check-op", fixture_path("Z"),
                  "--kind", "rb", "--operator", identity_map)
    assert code == cli.EXIT_FAIL


def test_weight_override(capsys, no_config, identity_map):
    code, _ = run(capsys, no_config, "check-op", fixture_path("E"),
                  "--kind", "rb", "--operator", identity_map, "--weight", "-1")
    assert code == cli.EXIT_PASS


def test_converse_disagreement(capsys, no_config, identity_map):
    code, report = run_json(capsys, no_config, "check-op", fixture_path("Z"),
                            "--kind", "rb-converse", "--operator", identity_map)
    assert code == cli.EXIT_FAIL
    assert report["agrees"] is False


def test_o_operator(capsys, no_config):
    code, _ = run(capsys, no_config, "check-op", "--kind", "o-operator",
                  "--bimodule", fixture_path("D_adjoint"), "--operator", fixture_path("D_rb"))
    assert code == cli.EXIT_PASS


def test_operator_required(capsys, no_config):
    code, error = run_json(capsys, no_config, "check-op", fixture_path("D"), "--kind", "nijenhuis")
    assert code == cli.EXIT_USAGE
    assert "--operator" in error["message"]


# ----------------------------------------------------------------------
# derive
# ----------------------------------------------------------------------
def test_derive_matches_fixtures(capsys, no_config):
    code, out = run(capsys, no_config, "derive", fixture_path("D"),
                    "--construction", "rb-pre", "--operator", fixture_path("D_rb"))
    assert code == cli.EXIT_PASS
    assert out == fixture_text("P_D")
    _, out = run(capsys, no_config, "derive", fixture_path("E"), "--construction", "opposite")
    assert out == fixture_text("E_op")
    _, out = run(capsys, no_config, "derive", fixture_path("E"), "--construction", "dual-bimodule")
    assert out == fixture_text("E_dual")


def test_derive_to_file(capsys, no_config, tmp_path):
    target = tmp_path / "adjoint.json"
    code, out = run(capsys, no_config, "derive", fixture_path("D"),
                    "--construction", "adjoint-bimodule", "-o", str(target))
    assert code == cli.EXIT_PASS
    assert out == ""
    assert target.read_text(encoding="utf-8") == fixture_text("D_adjoint")


def test_derive_power_suite(capsys, no_config):
    code, suite = run_json(capsys, no_config, "derive", fixture_path("D"), "--construction", "nj-powers",
                           "--operator", fixture_path("D_rb"), "--maxpq", "2")
    assert code == cli.EXIT_PASS
    assert suite["kind"] == "nijenhuis"


def test_derive_from_pair(capsys, no_config):
    code, algebra = run_json(capsys, no_config, "derive", "--pair", fixture_path("P_D"),
                             "--construction", "pre-sum")
    assert code == cli.EXIT_PASS
    assert algebra["product"][0][0] == ["0", "2"]


def test_unknown_construction(capsys, no_config):
    code, _ = run(capsys, no_config, "derive", fixture_path("D"), "--construction", "inverse")
    assert code == cli.EXIT_USAGE


# ----------------------------------------------------------------------
# search
# ----------------------------------------------------------------------
def test_search_writes_json_lines(capsys, no_config):
    code, out = run(capsys, no_config, "search", "--kind", "algebras", "--p", "2", "--dim", "1",
                    "--filter", "anti-flexible", "--allow-small-char", "--workers", "1")
    assert code == cli.EXIT_PASS
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 3
    assert lines[0]["product"] == [[["0"]]]
    assert lines[-1] == {"summary": True, "count": 2, "scanned": 2}


def test_search_operators(capsys, no_config, tmp_path):
    algebra = tmp_path / "D5.json"
    data = json.loads(fixture_text("D"))
    data["field"] = {"kind": "Fp", "p": 5}
    algebra.write_text(json.dumps(data), encoding="utf-8")
    code, out = run(capsys, no_config, "search", "--kind", "rb", "--algebra", str(algebra),
                    "--timing")
    assert code == cli.EXIT_PASS
    lines = [json.loads(line) for line in out.splitlines()]
    assert lines[0]["entries"] == [["0", "0"], ["0", "0"]]
    assert lines[0]["weight"] == "0"
    assert lines[-1]["count"] == len(lines) - 1
    assert "elapsed" in lines[-1]


def test_search_budget_exceeded(capsys, no_config):
    code, error = run_json(capsys, no_config, "search", "--kind", "algebras", "--p", "5", "--dim", "2",
                           "--budget", "100")
    assert code == cli.EXIT_BUDGET
    assert error["error"] == "SearchSpaceTooLarge"
    assert error["size"] == 5 ** 8


def test_search_small_characteristic_needs_flag(capsys, no_config):
    code, _ = run(capsys, no_config, "search", "--kind", "algebras", "--p", "3", "--dim", "1")
    assert code == cli.EXIT_USAGE


def test_missing_file(capsys, no_config, tmp_path):
    code, error = run_json(capsys, no_config, "check", str(tmp_path / "nothing.json"))
    assert code == cli.EXIT_USAGE
    assert error["error"] == "InputFormatError"


def test_config_budget(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("ANTIFLEX_BUDGET", raising=False)
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"search_budget": 10}), encoding="utf-8")
    code = cli.main(["search", "--kind", "algebras", "--p", "5", "--dim", "1",
                     "--config", str(config)])
    assert code == cli.EXIT_PASS
    code = cli.main(["search", "--kind", "algebras", "--p", "5", "--dim", "2",
                     "--config", str(config), "--budget", "10"])
    assert code == cli.EXIT_BUDGET


# ----------------------------------------------------------------------
# demo
# ----------------------------------------------------------------------
def test_walkthrough_all_ok():
    steps = cli.walkthrough()
    assert [s["name"] for s in steps if not s["ok"]] == []
    assert {"E_associative", "Z_rb_converse_identity", "D_adjoint_extended_bimodule"} <= {s["name"] for s in steps}


@pytest.mark.slow
def test_demo_is_deterministic(capsys, no_config):
    argv = ("demo", "--stride", "50", "--limit", "1", "--workers", "2")
    code, first = run(capsys, no_config, *argv)
    _, second = run(capsys, no_config, *argv)
    report = json.loads(first)
    assert code == cli.EXIT_PASS
    assert report["result"] == "pass"
    assert "elapsed" not in report
    assert first == second


@pytest.mark.slow
def test_demo_writes_findings(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"findings_dir": str(tmp_path / "out")}), encoding="utf-8")
    code = cli.main(["demo", "--stride", "50", "--limit", "1", "--findings", "--maxpq", "2",
                     "--config", str(config), "--timing"])
    report = json.loads(capsys.readouterr().out)
    assert code == cli.EXIT_PASS
    assert "elapsed" in report
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == [
        "nijenhuis_powers.json", "rota_baxter_powers.json"]


# ----------------------------------------------------------------------
# main.py
# ----------------------------------------------------------------------
def test_entry_point_returns_exit_code(capsys, no_config):
    assert entry.main(["check", fixture_path("E"), "--config", no_config]) == cli.EXIT_PASS


def test_entry_point_handles_unexpected_errors(monkeypatch):
    def boom(argv):
        raise RuntimeError("boom")
    monkeypatch.setattr(entry, "cli_main", boom)
    assert entry.main([]) == cli.EXIT_USAGE


def test_entry_point_handles_interrupt(monkeypatch):
    def interrupted(argv):
        raise KeyboardInterrupt
    monkeypatch.setattr(entry, "cli_main", interrupted)
    assert entry.main([]) == 130
