import json

import pytest

from nashtoric import catalog
from nashtoric.driver import (
    CYCLE,
    EXPANDED,
    SMOOTH,
    IterationOptions,
    check_against,
    iterate,
    log_lines,
    read_log,
    write_log,
)
from nashtoric.errors import LogParseError, NotPointedError
from nashtoric.semigroup import is_smooth

E3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


@pytest.fixture(scope="module")
def report_b():
    return iterate(catalog.cols(catalog.B), 2)


def test_depth_two_cycle_to_root(report_b):
    cycles = report_b.cycles
    assert cycles
    node_id, anc, w = cycles[0]
    node = report_b.node(node_id)
    assert node.depth == 2 and anc == 0
    assert w.verify(node.semigroup, report_b.node(0).semigroup)
    assert not report_b.terminated


def test_report_invariants(report_b):
    nodes = report_b.nodes
    assert nodes[0].parent is None and nodes[0].depth == 0
    for n in nodes[1:]:
        assert n.depth == nodes[n.parent].depth + 1
        if n.status == SMOOTH:
            assert is_smooth(n.semigroup)
        if n.status == EXPANDED:
            assert not is_smooth(n.semigroup)
        if n.status == CYCLE:
            assert n.ref in report_b.ancestors(n.id)
            assert n.witness.verify(n.semigroup, nodes[n.ref].semigroup)
    # each depth holds exactly the children of the previous depth's expanded nodes
    for depth in range(1, 3):
        expanded = {n.id for n in nodes if n.depth == depth - 1 and n.status == EXPANDED}
        assert {n.id for n in nodes if n.depth == depth} == {n.id for n in nodes if n.parent in expanded}


def test_smooth_seed_terminates():
    r = iterate(E3, 5)
    assert len(r.nodes) == 1
    assert r.nodes[0].status == SMOOTH
    assert r.terminated


def test_non_pointed_seed():
    with pytest.raises(NotPointedError):
        iterate([(1, 0), (-1, 0), (0, 1)], 2)


def test_deterministic(report_b):
    again = iterate(catalog.cols(catalog.B), 2)
    assert log_lines(again) == log_lines(report_b)


def test_parallel_matches_serial(report_b):
    parallel = iterate(catalog.cols(catalog.B), 2, workers=2)
    assert log_lines(parallel) == log_lines(report_b)


def test_without_global_dedup_still_cycles():
    r = iterate(catalog.cols(catalog.B), 2, IterationOptions(global_dedup=False))
    assert any(r.node(i).depth == 2 and a == 0 for i, a, _ in r.cycles)
    assert not any(n.status == "pruned-duplicate" for n in r.nodes)


def test_max_charts_truncates():
    r = iterate(catalog.cols(catalog.B), 2, IterationOptions(max_charts=3))
    assert r.truncated
    assert not r.terminated
    assert r.truncations[0][0] == 0


def test_time_budget_truncates():
    r = iterate(catalog.cols(catalog.B), 2, IterationOptions(time_budget=0.0))
    assert r.truncated == any(n.status == "truncated" for n in r.nodes)
    assert not r.terminated


def test_check_against(report_b, S):
    hits = check_against(report_b, [S])
    assert any(i == 0 for i, _, _ in hits)
    assert any(report_b.node(i).depth == 2 for i, _, _ in hits)
    for i, j, w in hits:
        assert w.verify(report_b.node(i).semigroup, S)
    assert check_against(report_b, []) == []


def test_log_round_trip(report_b, tmp_path):
    path = tmp_path / "run.jsonl"
    write_log(report_b, path)
    back = read_log(path)
    assert back == report_b
    assert back.cycles == report_b.cycles
    assert back.statistics == report_b.statistics


def test_log_integers_are_strings(report_b, tmp_path):
    path = tmp_path / "run.jsonl"
    write_log(report_b, path)
    head, first = [json.loads(x) for x in path.read_text().splitlines()[:2]]
    assert head["rank"] == "3" and head["version"] == 1
    assert all(isinstance(x, str) for col in first["hb"] for x in col)
    assert set(first) >= {"id", "parent", "depth", "base", "hb", "cert", "status", "witness"}


def test_log_big_integers(tmp_path):
    big = 10**30
    r = iterate([(1, 0), (big, 1)], 1)
    write_log(r, tmp_path / "big.jsonl")
    assert read_log(tmp_path / "big.jsonl") == r


def test_truncated_log(report_b, tmp_path):
    lines = (log_lines(report_b))
    path = tmp_path / "cut.jsonl"
    path.write_text("\n".join(lines[:5]) + "\n" + lines[5][:20])
    with pytest.raises(LogParseError) as err:
        read_log(path)
    assert err.value.line == 6
    path.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(LogParseError) as err:
        read_log(path)
    assert err.value.line == len(lines)


def test_malformed_field(report_b, tmp_path):
    lines = log_lines(report_b)
    rec = json.loads(lines[3])
    rec["depth"] = 1
    lines[3] = json.dumps(rec)
    path = tmp_path / "bad.jsonl"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(LogParseError) as err:
        read_log(path)
    assert err.value.line == 4 and err.value.field == "depth"
