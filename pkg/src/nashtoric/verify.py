"""End-to-end checklist for the dimension-3 counterexample."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import catalog, lattice
from .blowup import chart_generators, chart_with_explicit_generators
from .iso import find_isomorphism
from .jacobian import all_minors, chart_via_minors, cross_check
from .semigroup import hilbert_basis, is_member, pointedness_certificate, relation_holds, semigroup_equals


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _grading_ok(grading, gens) -> bool:
    return all(lattice.dot(grading, g) >= 1 for g in gens)


def build_checks(b=catalog.B) -> list[tuple[str, Callable[[], object]]]:
    """(name, thunk) pairs; a thunk returns a truthy value or a (bool, detail) pair."""
    h = catalog.cols(b)
    g = catalog.cols(catalog.B1)
    h2 = catalog.cols(catalog.B2)
    base1 = catalog.zero_based(catalog.FIRST_BASE)
    base2 = catalog.zero_based(catalog.SECOND_BASE)
    u = catalog.NONSATURATED_POINT
    checks: list[tuple[str, Callable[[], object]]] = []
    add = lambda name, fn: checks.append((name, fn))

    add("grading (1,2,3) is 1 on h1,h6 and >= 2 on h2..h5",
        lambda: [lattice.dot(catalog.GRADING_S, v) for v in h] == [1, 2, 3, 2, 2, 1])
    add("S is pointed", lambda: pointedness_certificate(h) is not None)
    add("u = (0,-1,1) is not in S", lambda: is_member(u, h, catalog.GRADING_S) is None)
    add("3u = h4 + h6 is in S",
        lambda: lattice.scale(3, u) == lattice.add(h[3], h[5])
        and is_member(lattice.scale(3, u), h, catalog.GRADING_S) is not None)
    add("det(h1 h4 h6) = 3", lambda: lattice.det_columns([h[i] for i in base1]) == 3)
    for idx, want in catalog.SWAP_DETERMINANTS:
        name = "det(%s) = %d" % (" ".join(f"h{i}" for i in idx), want)
        add(name, lambda idx=idx, want=want: lattice.det_columns([h[i - 1] for i in idx]) == want)
    ga = lambda: chart_generators(h, base1)
    # the displays list 12 and 17 terms; as sets of vectors some terms coincide
    add("G_A equals the displayed set", lambda: set(ga()) == set(catalog.resolve(catalog.FIRST_CHART_SET, h)))
    for k in range(0, len(catalog.REDUCTION_IDENTITIES), 2):
        lhs, rhs = catalog.REDUCTION_IDENTITIES[k], catalog.REDUCTION_IDENTITIES[k + 1]
        add("reduction identity %d" % (k // 2 + 1),
            lambda lhs=lhs, rhs=rhs: _combine(lhs, h) == _combine(rhs, h))
    add("H_1 lists the columns of B_1", lambda: catalog.resolve(catalog.H1_TERMS, h) == g)
    add("G_A and H_1 generate the same semigroup", lambda: semigroup_equals(ga(), g))
    add("grading (5,8,10) is positive on g1..g8", lambda: _grading_ok(catalog.GRADING_SA, g))
    add("S_A is pointed", lambda: pointedness_certificate(g) is not None)
    add("det(g1 g5 g7) = -2", lambda: lattice.det_columns([g[i] for i in base2]) == -2)
    ga1 = lambda: chart_generators(g, base2)
    add("G_A1 equals the displayed set", lambda: set(ga1()) == set(catalog.resolve(catalog.SECOND_CHART_SET, g)))
    add("H_2 lists the columns of B_2", lambda: catalog.resolve(catalog.H2_TERMS, g) == h2)
    add("G_A1 and H_2 generate the same semigroup", lambda: semigroup_equals(ga1(), h2))
    add("U B = B_2", lambda: lattice.matmul(catalog.U, b) == [list(r) for r in catalog.B2])
    add("U is unimodular", lambda: lattice.is_unimodular(catalog.U))
    add("S and T are isomorphic (witness verified)", lambda: _iso(h, base1, base2))
    for k, rel in enumerate(catalog.RELATIONS, start=1):
        add(f"binomial relation {k} holds on B", lambda rel=rel: relation_holds(rel, h))
    add("20 Jacobian minors of S; quotient chart at (1,4,6) generates H_1",
        lambda: len(all_minors(h)) == 20 and cross_check(h, base1)
        and semigroup_equals(chart_via_minors(h, base1), g))
    add("56 Jacobian minors of S_A; quotient chart at (1,5,7) generates H_2",
        lambda: len(all_minors(g)) == 56 and cross_check(g, base2)
        and semigroup_equals(chart_via_minors(g, base2), h2))
    return checks


def _combine(terms, h):
    total = (0, 0, 0)
    for (gi, hi), k in terms:
        v = catalog.resolve([(gi, hi)], h)[0]
        total = lattice.add(total, lattice.scale(k, v))
    return total


def _iso(h, base1, base2):
    s = hilbert_basis(h)
    first = chart_with_explicit_generators(h, base1)
    second = chart_with_explicit_generators(catalog.resolve(catalog.H1_TERMS, h), base2)
    if not (first.pointed and second.pointed):
        return False, "a chart is not pointed"
    w = find_isomorphism(s, second.result)
    if w is None:
        return False, "no unimodular map found"
    return w.verify(s, second.result), f"map rows {list(w.matrix)}"


def run_checks(b=catalog.B) -> list[CheckResult]:
    results = []
    for name, fn in build_checks(b):
        try:
            out = fn()
        except Exception as exc:  # a crash is a failed check, not an abort
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
            continue
        if isinstance(out, tuple):
            results.append(CheckResult(name, bool(out[0]), out[1]))
        else:
            results.append(CheckResult(name, bool(out)))
    return results


def perturbed_b():
    """B with the last entry of h6 changed; used to exercise the failure path."""
    rows = [list(r) for r in catalog.B]
    rows[2][5] += 1
    return tuple(tuple(r) for r in rows)
