"""
Command-line smoke tests.
"""

import json
import logging

import pytest

from src.app import EXIT_BAD_INPUT, EXIT_OK, EXIT_TASKS_FAILED, build_parser, main


@pytest.fixture(autouse=True)
def _reset_logging():
    yield
    logging.getLogger().handlers.clear()


@pytest.fixture
def net_file(tmp_path):
    path = tmp_path / "net.txt"
    path.write_text(
        "edge l1 a b\nedge l1 b c\nedge l1 c d\nedge l1 d e\nedge l2 a c\nnode l2 e\n",
        encoding="utf-8",
    )
    return str(path)


def _json_out(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_mds_command(net_file, capsys):
    assert main(["mds", net_file, "--seed", "3", "--bruteforce-cap", "5"]) == EXIT_OK
    payload = _json_out(capsys)
    assert "e" in payload["members"]
    assert payload["size"] <= payload["greedy_size"]
    assert len(payload["minimum"]) <= payload["size"]
    assert payload["n_actors"] == 5


def test_seed_and_simulate_commands(net_file, capsys):
    assert main(["seed", net_file, "--method", "deg-c", "--budget", "0.4"]) == EXIT_OK
    payload = _json_out(capsys)
    assert payload["count"] == 2
    assert payload["origin"] == "baseline"

    assert main(["simulate", net_file, "--seeds", "b", "--mu", "0.5", "--protocol", "OR"]) == EXIT_OK
    payload = _json_out(capsys)
    assert payload["active_per_step"][0] == 1
    assert 0.0 <= payload["gamma"] <= 1.0


def test_seed_command_with_small_mds(net_file, tmp_path, capsys):
    mds = tmp_path / "mds.json"
    mds.write_text(json.dumps(["b", "e", "c"]), encoding="utf-8")
    code = main(["seed", net_file, "--method", "deg-c", "--budget", "0.8", "--mds", str(mds)])
    assert code == EXIT_OK
    assert _json_out(capsys) == {"status": "mds_too_small"}


def test_bad_input_exit_code(tmp_path, net_file):
    assert main(["mds", str(tmp_path / "missing.txt")]) == EXIT_BAD_INPUT
    assert main(["simulate", net_file, "--seeds", "zz", "--mu", "0.5", "--protocol", "OR"]) == EXIT_BAD_INPUT
    assert main(["seed", net_file, "--method", "deg-c", "--budget", "0.1"]) == EXIT_BAD_INPUT


def test_generate_command(tmp_path):
    out = tmp_path / "er.txt"
    assert main(["generate", "er", "--out", str(out), "--actors", "50", "--edges", "60,40"]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert sum(1 for line in lines if line.startswith("edge ")) == 100
    pa = tmp_path / "pa.txt"
    assert main(["generate", "pa", "--out", str(pa), "--actors", "40", "--layers", "2", "--m0", "3"]) == EXIT_OK
    assert "edge l2 " in pa.read_text(encoding="utf-8")
    sf = tmp_path / "sf.txt"
    assert main(["generate", "pa", "--cohort", "sf-3", "--out", str(sf), "--actors", "60"]) == EXIT_OK
    assert "edge l3 " in sf.read_text(encoding="utf-8")
    assert main(["generate", "er", "--cohort", "sf-3", "--out", str(sf)]) == EXIT_BAD_INPUT


def _write_plan(tmp_path, net_file):
    plan = {
        "networks": [
            {"name": "toy", "type": "real", "source": {"file": net_file}},
            {
                "name": "tiny-er",
                "type": "ER",
                "source": {
                    "generator": "er",
                    "n_actors": 20,
                    "n_layers": 2,
                    "edges_per_layer": [30, 25],
                    "rng_seed": 2,
                },
            },
        ],
        "protocols": ["AND", "OR"],
        "budgets": [0.2, 0.4],
        "thresholds": [0.2, 0.5],
        "methods": ["deg-c", "nghb-sd", "random"],
        "repetitions": 2,
        "base_rng_seed": 5,
    }
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(plan), encoding="utf-8")
    return str(path)


def test_experiment_and_reports(tmp_path, net_file, capsys):
    plan = _write_plan(tmp_path, net_file)
    out = tmp_path / "run"
    assert main(["experiment", "--plan", plan, "--out", str(out), "--workers", "1"]) == EXIT_OK
    records = (out / "records.csv").read_text(encoding="utf-8")
    # 2 networks x 2 repetitions x 3 methods x 2 protocols x 2 budgets x 2 thresholds x 2 variants
    assert len(records.splitlines()) == 1 + 2 * 2 * 3 * 2 * 2 * 2 * 2
    assert (out / "seeds.jsonl").exists() and (out / "mds.jsonl").exists()
    # one MDS draw per network, repetition, method and protocol
    assert len((out / "mds.jsonl").read_text(encoding="utf-8").splitlines()) == 2 * 2 * 3 * 2

    heatmap = tmp_path / "and"
    code = main(
        ["report", "heatmap", "--records", str(out / "records.csv"), "--protocol", "AND",
         "--out", str(heatmap), "--png"]
    )
    assert code == EXIT_OK
    assert (tmp_path / "and.svg").read_text(encoding="utf-8").count("<rect") == 4
    assert (tmp_path / "and.png").read_bytes()[:4] == b"\x89PNG"

    capsys.readouterr()
    assert main(["report", "mds-stats", "--mds", str(out / "mds.jsonl")]) == EXIT_OK
    assert "tiny-er" in capsys.readouterr().out
    assert main(["report", "similarity", "--seeds", str(out / "seeds.jsonl")]) == EXIT_OK
    assert "nghb-sd" in capsys.readouterr().out
    assert main(["report", "deltas", "--records", str(out / "records.csv"), "--methods", "deg-c"]) == EXIT_OK
    assert "toy" in capsys.readouterr().out

    # A plan significance of 1 leaves no difference significant
    strict_plan = tmp_path / "strict.json"
    raw = json.loads((tmp_path / "plan.json").read_text(encoding="utf-8"))
    raw["significance"] = 1.0
    strict_plan.write_text(json.dumps(raw), encoding="utf-8")
    code = main(
        ["report", "heatmap", "--records", str(out / "records.csv"), "--protocol", "OR",
         "--plan", str(strict_plan), "--out", str(tmp_path / "or")]
    )
    assert code == EXIT_OK
    rows = (tmp_path / "or.csv").read_text(encoding="utf-8").splitlines()
    header = rows[0].split(",")
    assert all(r.split(",")[header.index("significant")] == "0" for r in rows[1:])
    assert all(r.split(",")[header.index("pct_mds_better")] == "" for r in rows[1:])


def test_experiment_reports_failed_tasks(tmp_path):
    plan = {
        "networks": [{"name": "gone", "type": "real", "source": {"file": "missing.txt"}}],
        "protocols": ["OR"],
        "budgets": [0.2],
        "thresholds": [0.5],
        "methods": ["deg-c"],
        "repetitions": 1,
    }
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(plan), encoding="utf-8")
    out = tmp_path / "run"
    assert main(["experiment", "--plan", str(path), "--out", str(out), "--workers", "1"]) == EXIT_TASKS_FAILED
    assert (out / "records.csv").read_text(encoding="utf-8").count("\n") == 1
