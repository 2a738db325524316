"""End-to-end runs of the tropex command line."""

import json

from tropex.cli import EXIT_INVALID, EXIT_OK, EXIT_USAGE, main
from tropex.core.codec import complex1_to_json
from tropex.tropical.graphs import embedded_complex

from conftest import P2_D1


def read(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert "tropex" in capsys.readouterr().out


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(["secondary"]) == EXIT_USAGE
    assert main(["no-such-command"]) == EXIT_USAGE


def test_secondary_report_and_summary(tmp_path):
    out = tmp_path / "secondary.json"
    assert main(["secondary", "--d", "1", "--out", str(out), "-q"]) == EXIT_OK
    report = read(out)
    assert report["tool"] == "tropex"
    assert report["command"] == "secondary"
    assert report["status"] == "ok"
    assert report["result"]["maximal_cones"] == 1
    summary = (tmp_path / "secondary.json.txt").read_text(encoding="utf-8")
    assert summary.splitlines()[1] == "status: ok"
    assert "  covers: yes" in summary


def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["secondary", "--d", "1", "--report", str(a), "-q"])
    main(["secondary", "--d", "1", "--report", str(b), "-q"])
    assert a.read_bytes() == b.read_bytes()


def test_limit_of_half_line(tmp_path, write_json, line_half):
    graph = write_json("line_half.json", complex1_to_json(line_half))
    out = tmp_path / "limit.json"
    assert main(["limit", "--graph", str(graph), "--out", str(out), "-q"]) == EXIT_OK
    result = read(out)["result"]
    assert result["base_change_order"] == 2
    assert len(result["expansion"]["components"]) == 2


def test_tropicalize_then_balance(tmp_path, write_json):
    poly = write_json("line.json", {"dim": 2, "terms": [
        {"exp": [0, 0], "val": 0}, {"exp": [1, 0], "val": "-1"}, {"exp": [0, 1], "val": "-1"},
    ]})
    curve = tmp_path / "curve.json"
    assert main(["tropicalize", "--poly", str(poly), "--out", str(curve), "-q"]) == EXIT_OK
    assert read(curve)["summary"]["balanced"] is True
    assert read(curve)["result"]["polynomial"]["terms"][0] == {"exp": [0, 0], "val": "0"}

    balance = tmp_path / "balance.json"
    args = ["balance", "--graph", str(curve), "--degree", "1", "--strict", "--out", str(balance), "-q"]
    assert main(args) == EXIT_OK
    result = read(balance)["result"]
    assert result["balancing"]["balanced"] is True
    assert result["degree_matches"] is True


def test_invalid_graph_exits_with_two(tmp_path, write_json):
    e = embedded_complex([(P2_D1, (0, 1))])
    graph = write_json("bad.json", complex1_to_json(e))
    out = tmp_path / "validate.json"
    assert main(["validate", "--graph", str(graph), "--out", str(out), "-q"]) == EXIT_INVALID
    report = read(out)
    assert report["status"] == "invalid"
    assert report["summary"]["valid"] is False


def test_malformed_input_writes_an_invalid_report(tmp_path, write_json):
    graph = write_json("broken.json", {"vertices": [{"cone": "x", "pos": [0, 0]}]})
    out = tmp_path / "broken.report.json"
    assert main(["validate", "--graph", str(graph), "--out", str(out), "-q"]) == EXIT_INVALID
    report = read(out)
    assert report["status"] == "invalid"
    assert report["result"]["error"] == "InputError"


def test_star_to_stdout(capsys):
    assert main(["star", "--ray", "D1", "-q"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["star"]["ambient_dim"] == 1


def test_bad_configuration(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("computation:\n  threads: 0\n", encoding="utf-8")
    assert main(["secondary", "--d", "1", "--config", str(config), "-q"]) == EXIT_INVALID


def test_secondary_summary_ties_unimodular_to_fine(tmp_path):
    out = tmp_path / "conic.json"
    assert main(["secondary", "--d", "2", "--out", str(out), "-q"]) == EXIT_OK
    result = read(out)["result"]
    assert (result["maximal_cones"], result["unimodular"], result["fine"]) == (14, 4, 4)
    assert result["unimodular_are_fine"] is True
    summary = (tmp_path / "conic.json.txt").read_text(encoding="utf-8")
    assert "  unimodular (fine cones only): 4" in summary
    assert "  unimodular are fine: yes" in summary
