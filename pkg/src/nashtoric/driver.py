"""Iterated Nash blowups: breadth-first exploration of the chart tree.

Each non-smooth pointed chart is expanded in turn.  A chart isomorphic to
one of its own ancestors closes a cycle and is frozen; with global dedup a
chart isomorphic to any earlier representative is pruned.  Node ids are
assigned breadth-first in base-enumeration order, so the report does not
depend on how many worker processes computed the charts.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import lattice
from .blowup import REJECTED, TIMED_OUT, enumerate_bases, nash_blowup
from .errors import LogParseError
from .iso import IsomorphismWitness, find_isomorphism, fingerprint
from .lattice import Vector
from .semigroup import DEFAULT_SIEVE_DEPTH, AffineSemigroup, hilbert_basis, is_smooth

log = logging.getLogger(__name__)

LOG_VERSION = 1

SMOOTH = "smooth"
EXPANDED = "expanded"
CYCLE = "cycle"
FRONTIER = "frontier"
REJECTED_NONPOINTED = "rejected-nonpointed"
PRUNED_DUPLICATE = "pruned-duplicate"
TRUNCATED = "truncated"
STATUSES = (SMOOTH, EXPANDED, CYCLE, FRONTIER, REJECTED_NONPOINTED, PRUNED_DUPLICATE, TRUNCATED)


@dataclass(frozen=True)
class IterationOptions:
    sieve_depth: int = DEFAULT_SIEVE_DEPTH
    global_dedup: bool = True
    max_charts: Optional[int] = None
    time_budget: Optional[float] = None


@dataclass
class ExplorationNode:
    id: int
    parent: Optional[int]
    depth: int
    base: Optional[tuple[int, ...]]
    semigroup: Optional[AffineSemigroup]
    status: str
    ref: Optional[int] = None
    witness: Optional[IsomorphismWitness] = None


@dataclass
class ExplorationReport:
    rank: int
    seed: tuple[Vector, ...]
    max_depth: int
    options: IterationOptions
    nodes: list[ExplorationNode] = field(default_factory=list)
    truncations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def truncated(self) -> bool:
        return bool(self.truncations)

    @property
    def cycles(self) -> list[tuple[int, int, IsomorphismWitness]]:
        return [(n.id, n.ref, n.witness) for n in self.nodes if n.status == CYCLE]

    @property
    def terminated(self) -> bool:
        """Every branch ended in a smooth chart: nothing left open or cycling."""
        return not self.truncated and not any(n.status in (FRONTIER, CYCLE) for n in self.nodes)

    @property
    def statistics(self) -> dict[int, Counter]:
        stats: dict[int, Counter] = defaultdict(Counter)
        for n in self.nodes:
            stats[n.depth][n.status] += 1
        return dict(stats)

    def node(self, node_id: int) -> ExplorationNode:
        return self.nodes[node_id]

    def ancestors(self, node_id: int) -> list[int]:
        """Ancestor ids from the root down to the parent."""
        chain = []
        p = self.nodes[node_id].parent
        while p is not None:
            chain.append(p)
            p = self.nodes[p].parent
        return chain[::-1]


def _expand(job):
    semigroup, options = job
    total = len(enumerate_bases(semigroup.hilbert_basis, semigroup.rank))
    charts = nash_blowup(semigroup, sieve_depth=options.sieve_depth,
                         max_charts=options.max_charts, time_budget=options.time_budget)
    return charts, total


def iterate(seed: Sequence[Sequence[int]], max_depth: int,
            options: Optional[IterationOptions] = None, workers: int = 1) -> ExplorationReport:
    """Expand the chart tree of `seed` breadth-first down to `max_depth`."""
    options = options or IterationOptions()
    seed = tuple(lattice.vec(v) for v in seed)
    root_sg = hilbert_basis(seed, sieve_depth=options.sieve_depth)
    report = ExplorationReport(root_sg.rank, seed, max_depth, options)
    root = ExplorationNode(0, None, 0, None, root_sg, SMOOTH if is_smooth(root_sg) else FRONTIER)
    report.nodes.append(root)

    fps: dict[int, tuple] = {}
    buckets: dict[tuple, list[int]] = defaultdict(list)

    def fp(node_id):
        if node_id not in fps:
            fps[node_id] = fingerprint(report.nodes[node_id].semigroup)
        return fps[node_id]

    if root.status == FRONTIER:
        buckets[fp(0)].append(0)

    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for depth in range(max_depth):
            frontier = [n for n in report.nodes if n.depth == depth and n.status == FRONTIER]
            if not frontier:
                break
            jobs = [(n.semigroup, options) for n in frontier]
            results = pool.map(_expand, jobs) if pool else map(_expand, jobs)
            for parent, (charts, total) in zip(frontier, results):
                parent.status = EXPANDED
                if len(charts) < total:
                    report.truncations.append(
                        (parent.id, f"max-charts: kept {len(charts)} of {total} bases"))
                chain = report.ancestors(parent.id) + [parent.id]
                for chart in charts:
                    node = ExplorationNode(len(report.nodes), parent.id, depth + 1,
                                           chart.base_indices, None, FRONTIER)
                    report.nodes.append(node)
                    if chart.result == REJECTED:
                        node.status = REJECTED_NONPOINTED
                        continue
                    if chart.result == TIMED_OUT:
                        node.status = TRUNCATED
                        report.truncations.append((node.id, "time budget exhausted"))
                        continue
                    node.semigroup = chart.result
                    if is_smooth(node.semigroup):
                        node.status = SMOOTH
                        continue
                    key = fp(node.id)
                    for anc in chain:
                        if fp(anc) != key:
                            continue
                        w = find_isomorphism(node.semigroup, report.nodes[anc].semigroup)
                        if w is not None:
                            node.status, node.ref, node.witness = CYCLE, anc, w
                            break
                    if node.status == CYCLE:
                        log.info("node %d (depth %d) repeats ancestor %d", node.id, node.depth, node.ref)
                        continue
                    if options.global_dedup:
                        for other in buckets[key]:
                            w = find_isomorphism(node.semigroup, report.nodes[other].semigroup)
                            if w is not None:
                                node.status, node.ref, node.witness = PRUNED_DUPLICATE, other, w
                                break
                        if node.status == PRUNED_DUPLICATE:
                            continue
                    buckets[key].append(node.id)
            log.info("depth %d expanded: %d nodes total", depth, len(report.nodes))
    finally:
        if pool:
            pool.shutdown()
    return report


def check_against(report: ExplorationReport, targets: Sequence[AffineSemigroup]):
    """Every (node id, target index, witness) with the node isomorphic to the target."""
    hits = []
    target_fps = [fingerprint(t) for t in targets]
    for node in report.nodes:
        if node.semigroup is None:
            continue
        for j, target in enumerate(targets):
            if target.rank != node.semigroup.rank:
                continue
            if fingerprint(node.semigroup) != target_fps[j]:
                continue
            w = find_isomorphism(node.semigroup, target)
            if w is not None:
                hits.append((node.id, j, w))
    return hits


# -- log file -----------------------------------------------------------------

def _ints(values) -> list[str]:
    return [str(v) for v in values]


def _node_record(n: ExplorationNode) -> dict:
    sg = n.semigroup
    return {
        "type": "node",
        "id": str(n.id),
        "parent": None if n.parent is None else str(n.parent),
        "depth": str(n.depth),
        "base": None if n.base is None else _ints(n.base),
        "hb": None if sg is None else [_ints(h) for h in sg.hilbert_basis],
        "cert": None if sg is None else _ints(sg.certificate),
        "status": n.status,
        "ref": None if n.ref is None else str(n.ref),
        "witness": None if n.witness is None else {
            "map": [_ints(row) for row in n.witness.matrix],
            "perm": _ints(n.witness.permutation),
        },
    }


def log_lines(report: ExplorationReport) -> list[str]:
    header = {
        "type": "header",
        "version": LOG_VERSION,
        "rank": str(report.rank),
        "seed": [_ints(v) for v in report.seed],
        "max_depth": str(report.max_depth),
        "options": asdict(report.options),
    }
    lines = [header] + [_node_record(n) for n in report.nodes]
    lines.append({
        "type": "summary",
        "nodes": str(len(report.nodes)),
        "truncations": [[str(i), why] for i, why in report.truncations],
        "terminated": report.terminated,
    })
    return [json.dumps(rec, separators=(",", ":")) for rec in lines]


def write_log(report: ExplorationReport, path) -> None:
    Path(path).write_text("\n".join(log_lines(report)) + "\n")


class _Reader:
    def __init__(self, line: int, rec):
        self.line = line
        if not isinstance(rec, dict):
            raise LogParseError(line, "<record>", "expected a JSON object")
        self.rec = rec

    def get(self, key, optional=False):
        if key not in self.rec:
            raise LogParseError(self.line, key, "missing")
        v = self.rec[key]
        if v is None and not optional:
            raise LogParseError(self.line, key, "must not be null")
        return v

    def int(self, key, optional=False):
        v = self.get(key, optional)
        if v is None:
            return None
        try:
            if not isinstance(v, str):
                raise ValueError
            return int(v)
        except ValueError:
            raise LogParseError(self.line, key, f"expected a decimal string, got {v!r}") from None

    def ints(self, key, optional=False):
        v = self.get(key, optional)
        if v is None:
            return None
        return tuple(self._int_list(key, v))

    def matrix(self, key, optional=False, value=None):
        v = self.get(key, optional) if value is None else value
        if v is None:
            return None
        if not isinstance(v, list):
            raise LogParseError(self.line, key, "expected a list of integer lists")
        return tuple(tuple(self._int_list(key, row)) for row in v)

    def _int_list(self, key, v):
        if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
            raise LogParseError(self.line, key, "expected a list of decimal strings")
        try:
            return [int(x) for x in v]
        except ValueError:
            raise LogParseError(self.line, key, "expected decimal strings") from None


def read_log(path) -> ExplorationReport:
    """Parse a log written by `write_log`; raises LogParseError on bad input."""
    text = Path(path).read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    records = []
    for i, raw in enumerate(lines, start=1):
        try:
            records.append(_Reader(i, json.loads(raw)))
        except json.JSONDecodeError as exc:
            raise LogParseError(i, "<json>", str(exc)) from None
    if not records:
        raise LogParseError(1, "type", "empty log")
    head = records[0]
    if head.get("type") != "header":
        raise LogParseError(1, "type", "first record must be the header")
    if head.get("version") != LOG_VERSION:
        raise LogParseError(1, "version", f"unsupported version {head.rec.get('version')!r}")
    opts = head.get("options")
    try:
        options = IterationOptions(**opts)
    except TypeError as exc:
        raise LogParseError(1, "options", str(exc)) from None
    report = ExplorationReport(head.int("rank"), head.matrix("seed"), head.int("max_depth"), options)

    summary = None
    for r in records[1:]:
        kind = r.get("type")
        if summary is not None:
            raise LogParseError(r.line, "type", "record after summary")
        if kind == "summary":
            summary = r
            continue
        if kind != "node":
            raise LogParseError(r.line, "type", f"unknown record type {kind!r}")
        nid = r.int("id")
        if nid != len(report.nodes):
            raise LogParseError(r.line, "id", f"expected id {len(report.nodes)}, got {nid}")
        status = r.get("status")
        if status not in STATUSES:
            raise LogParseError(r.line, "status", f"unknown status {status!r}")
        hb = r.matrix("hb", optional=True)
        sg = None
        if hb is not None:
            cert = r.ints("cert")
            try:
                sg = AffineSemigroup(report.rank, hb, cert)
            except ValueError as exc:
                raise LogParseError(r.line, "cert", str(exc)) from None
        w = r.get("witness", optional=True)
        witness = None
        if w is not None:
            if not isinstance(w, dict) or "map" not in w or "perm" not in w:
                raise LogParseError(r.line, "witness", "expected {map, perm}")
            witness = IsomorphismWitness(r.matrix("witness", value=w["map"]),
                                         tuple(r._int_list("witness", w["perm"])))
        base = r.ints("base", optional=True)
        report.nodes.append(ExplorationNode(
            nid, r.int("parent", optional=True), r.int("depth"), base, sg, status,
            r.int("ref", optional=True), witness))
    if summary is None:
        raise LogParseError(len(lines) + 1, "type", "log ends without a summary record (truncated file?)")
    if summary.int("nodes") != len(report.nodes):
        raise LogParseError(summary.line, "nodes", "node count does not match the records")
    trunc = summary.get("truncations")
    if not isinstance(trunc, list):
        raise LogParseError(summary.line, "truncations", "expected a list")
    for item in trunc:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], str)):
            raise LogParseError(summary.line, "truncations", "expected [id, reason] pairs")
        report.truncations.append((int(item[0]), item[1]))
    return report
