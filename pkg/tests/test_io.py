"""
Tests for network files, experiment plans and run records.
"""

import json

import numpy as np
import pytest

from src.infmax.errors import NetworkFormatError, PlanError, RecordsFormatError
from src.infmax.io.multiplex import dump_multiplex, load_mpx, load_multiplex, read_network
from src.infmax.io.plan import (
    PRESETS,
    dump_plan,
    load_plan,
    main_study_plan,
    read_plan,
    sf_actors_followup_plan,
    sf_hubs_followup_plan,
)
from src.infmax.io.records import (
    COLUMNS,
    STATUS_MDS_TOO_SMALL,
    MdsDrawRecord,
    RunRecord,
    SeedSetRecord,
    dump_mds_draws,
    dump_seed_sets,
    load_mds_draws,
    load_seed_sets,
    read_records_csv,
    write_records_csv,
)

from .conftest import random_net


def test_load_multiplex_counts_actors_and_edges():
    net = load_multiplex("edge l1 a b\nedge l1 b c")
    assert net.n_actors == 3
    assert net.layers == ("l1",)
    assert net.n_edges() == 2


def test_node_lines_declare_isolated_presence():
    net = load_multiplex("node l2 c\nedge l1 a c")
    assert set(net.layers_of("c")) == {"l1", "l2"}
    assert net.degree("l2", "c") == 0


def test_comments_blank_lines_and_duplicates():
    net = load_multiplex("# header\n\nedge l1 a b  # trailing\nedge l1 b a\n")
    assert net.n_edges("l1") == 1


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("edge l1 a a", 1),
        ("edge l1 a b\nedge l1 a", 2),
        ("node l1", 1),
        ("link l1 a b", 1),
    ],
)
def test_malformed_lines_report_line_numbers(text, line_no):
    with pytest.raises(NetworkFormatError) as excinfo:
        load_multiplex(text)
    assert excinfo.value.line_no == line_no


def test_parsing_ignores_line_order():
    lines = ["edge l1 a b", "edge l2 b c", "node l3 d", "edge l1 c d"]
    a = load_multiplex("\n".join(lines))
    b = load_multiplex("\n".join(reversed(lines)))
    assert a.actors == b.actors
    assert all(a.edges(l) == b.edges(l) and a.presence(l) == b.presence(l) for l in a.layers)


def test_dump_multiplex_keeps_isolated_presence():
    net = load_multiplex("node l2 c\nedge l1 a c\nedge l2 a b")
    text = dump_multiplex(net)
    assert "node l2 c" in text
    again = load_multiplex(text)
    assert again.presence("l2") == {"a", "b", "c"}
    assert again.edges("l1") == net.edges("l1")


def test_dump_multiplex_is_stable_on_random_network():
    net = random_net(np.random.default_rng(3), 25, 3, 0.15)
    text = dump_multiplex(load_multiplex(dump_multiplex(net)))
    assert dump_multiplex(load_multiplex(text)) == text


def test_load_mpx_sections():
    text = """#TYPE multiplex
#LAYERS
work,UNDIRECTED
lunch,UNDIRECTED
#ACTORS
u1
#VERTICES
u9,lunch
#EDGES
u1,u2,work
u2,u3,lunch,0.5
"""
    net = load_mpx(text)
    assert net.layers == ("lunch", "work")
    assert net.degree("lunch", "u9") == 0
    assert net.neighbours("lunch", "u2") == {"u3"}


def test_load_mpx_rejects_directed_layers():
    with pytest.raises(NetworkFormatError):
        load_mpx("#LAYERS\nfollows,DIRECTED\n#EDGES\na,b,follows\n")


def test_read_network_picks_format_by_extension(tmp_path):
    path = tmp_path / "tiny.mpx"
    path.write_text("#EDGES\na,b,l1\n", encoding="utf-8")
    assert read_network(str(path)).n_actors == 2


# -- plans -----------------------------------------------------------------------


def _plan_dict(**overrides):
    raw = {
        "networks": [
            {
                "name": "tiny-er",
                "type": "ER",
                "instances": 2,
                "source": {
                    "generator": "er",
                    "n_actors": 30,
                    "n_layers": 2,
                    "edges_per_layer": [40, 35],
                    "rng_seed": 5,
                },
            }
        ],
        "protocols": ["AND", "or"],
        "budgets": [0.2],
        "thresholds": [0.3, 0.5],
        "methods": ["deg-c", "random"],
        "repetitions": 2,
        "base_rng_seed": 9,
    }
    raw.update(overrides)
    return raw


def test_load_plan_fills_defaults():
    plan = load_plan(json.dumps(_plan_dict()))
    assert plan.protocols == ("AND", "OR")
    assert plan.significance == pytest.approx(0.01)
    assert plan.mds_timeout_minutes_per_1000_actors == pytest.approx(5.0)
    assert plan.network_types() == {"tiny-er": "ER"}
    assert plan.mds_greedy == "degree"


def test_protocol_budgets_override_shared_list():
    plan = load_plan(json.dumps(_plan_dict(protocol_budgets={"OR": [0.05, 0.1]})))
    assert plan.budgets_for("AND") == (0.2,)
    assert plan.budgets_for("OR") == (0.05, 0.1)


@pytest.mark.parametrize(
    "overrides",
    [
        {"budgets": [1.0]},
        {"thresholds": [0.0]},
        {"methods": ["pagerank"]},
        {"protocols": ["XOR"]},
        {"networks": []},
        {"repetitions": 0},
        {"protocol_budgets": {"OR": []}},
        {"mds_greedy": "random"},
    ],
)
def test_invalid_plans_are_rejected(overrides):
    with pytest.raises(PlanError):
        load_plan(json.dumps(_plan_dict(**overrides)))


def test_plan_errors_on_missing_fields_and_bad_json():
    raw = _plan_dict()
    del raw["thresholds"]
    with pytest.raises(PlanError):
        load_plan(json.dumps(raw))
    with pytest.raises(PlanError):
        load_plan("{not json")
    bad_source = _plan_dict()
    del bad_source["networks"][0]["source"]["edges_per_layer"]
    with pytest.raises(PlanError):
        load_plan(json.dumps(bad_source))


def test_generated_instances_use_offset_seeds():
    plan = load_plan(json.dumps(_plan_dict()))
    spec = plan.networks[0]
    first, second = spec.materialize(0), spec.materialize(1)
    assert first.n_edges() == second.n_edges() == 75
    assert any(first.edges(l) != second.edges(l) for l in first.layers)
    assert all(first.edges(l) == spec.materialize(0).edges(l) for l in first.layers)


def test_file_sources_resolve_against_plan_folder(tmp_path):
    (tmp_path / "nets").mkdir()
    (tmp_path / "nets" / "toy.txt").write_text("edge l1 a b\nedge l1 b c\n", encoding="utf-8")
    raw = _plan_dict(
        networks=[{"name": "toy", "type": "real", "source": {"file": "nets/toy.txt"}}]
    )
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    plan = read_plan(str(path))
    assert plan.networks[0].materialize(0, plan.base_dir).n_actors == 3


def test_dump_plan_reloads_to_the_same_plan():
    plan = load_plan(json.dumps(_plan_dict(protocol_budgets={"OR": [0.1]})))
    assert load_plan(dump_plan(plan)) == plan


def test_main_study_preset_grid():
    plan = main_study_plan()
    assert [n.name for n in plan.networks] == ["er-2", "er-3", "er-5", "sf-2", "sf-3", "sf-5"]
    assert plan.budgets_for("AND") == (0.15, 0.20, 0.25, 0.30, 0.35)
    assert plan.budgets_for("OR") == (0.05, 0.10, 0.15, 0.20, 0.25)
    assert len(plan.thresholds) == 9
    assert len(plan.methods) == 5
    assert plan.repetitions == 30
    sf = {n.name: n.source for n in plan.networks if n.type == "SF"}
    assert sf["sf-3"]["n_layers"] == 3
    assert sf["sf-3"]["pr_none"] == pytest.approx(0.31)
    assert len({s["rng_seed"] for s in sf.values()}) == 3


def test_followup_presets():
    actors = sf_actors_followup_plan()
    assert [n.source["n_actors"] for n in actors.networks] == [500, 750, 1000, 1250, 1500]
    hubs = sf_hubs_followup_plan()
    assert [n.source["m0"] for n in hubs.networks] == [2, 4, 6, 8, 10]
    for plan in (actors, hubs):
        assert plan.protocols == ("AND",)
        assert plan.budgets == (0.30,)
        assert plan.thresholds == (0.2,)
        assert all(n.instances == 20 for n in plan.networks)
    assert set(PRESETS) == {"main_study", "sf_actors_followup", "sf_hubs_followup"}


# -- records ---------------------------------------------------------------------


def _record(**overrides) -> RunRecord:
    values = dict(
        network="er-2",
        network_type="ER",
        instance=0,
        method="deg-c",
        mds_filtered=False,
        protocol="AND",
        mu=0.2,
        budget=0.3,
        repetition=1,
        seed_count=300,
        mds_size=None,
        gamma=0.123456789,
        lambda_=0.05,
        steps=7,
    )
    values.update(overrides)
    return RunRecord(**values)


def test_empty_record_list_is_header_only():
    assert write_records_csv([]) == ",".join(COLUMNS) + "\n"
    assert read_records_csv(write_records_csv([])) == []


def test_mds_too_small_rows_have_empty_metrics():
    record = _record(
        mds_filtered=True,
        seed_count=None,
        mds_size=120,
        gamma=None,
        lambda_=None,
        steps=None,
        status=STATUS_MDS_TOO_SMALL,
    )
    text = write_records_csv([record])
    row = text.splitlines()[1].split(",")
    assert row[COLUMNS.index("gamma")] == ""
    assert row[COLUMNS.index("lambda")] == ""
    assert row[COLUMNS.index("mds_filtered")] == "true"
    assert read_records_csv(text) == [record]


def test_records_round_trip():
    records = [
        _record(),
        _record(mds_filtered=True, mds_size=250, gamma=0.0, lambda_=0.0, steps=0),
        _record(method="random", mu=0.1, gamma=1.0 / 3.0, lambda_=2.0 / 7.0),
    ]
    assert read_records_csv(write_records_csv(records)) == records


def test_records_reject_bad_header_and_values():
    with pytest.raises(RecordsFormatError):
        read_records_csv("network,instance\nx,1\n")
    text = write_records_csv([_record()])
    broken = text.replace(",7,ok", ",seven,ok")
    with pytest.raises(RecordsFormatError):
        read_records_csv(broken)


def test_sidecars_round_trip():
    seeds = [
        SeedSetRecord("er-2", "ER", 0, "deg-c", "AND", 0.3, 1, False, (1, 5, 9)),
        SeedSetRecord("er-2", "ER", 0, "deg-c", "AND", 0.3, 1, True, (1, 9, 12)),
    ]
    assert load_seed_sets(dump_seed_sets(seeds)) == seeds
    draws = [MdsDrawRecord("toy", "real", 0, "deg-c", "AND", 3, 5, 3, ("a", "c"), False)]
    assert load_mds_draws(dump_mds_draws(draws)) == draws
    with pytest.raises(RecordsFormatError):
        load_mds_draws('{"network": "toy"}\n')
