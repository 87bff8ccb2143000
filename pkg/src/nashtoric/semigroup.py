"""Pointed affine semigroups in Z^d, represented by their Hilbert basis."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import lattice
from .errors import (
    BudgetExceeded,
    DegenerateInputError,
    InvalidCertificateError,
    LatticeSpanError,
    NotPointedError,
)
from .lattice import Vector, dot
from .simplex import maximize

DEFAULT_SIEVE_DEPTH = 6


def normalize_generators(gens: Iterable[Sequence[int]]) -> list[Vector]:
    """Drop zero vectors and repeats, keeping first occurrences in order."""
    vecs = [lattice.vec(g) for g in gens]
    lattice.common_dimension(vecs)
    out: list[Vector] = []
    seen: set[Vector] = set()
    for v in vecs:
        if lattice.is_zero(v) or v in seen:
            continue
        seen.add(v)
        out.append(v)
    if not out:
        raise DegenerateInputError("generating set contains only zero vectors")
    return out


def _integral_direction(values: Sequence[Fraction]) -> Vector:
    den = math.lcm(*(v.denominator for v in values))
    ints = [int(v * den) for v in values]
    g = math.gcd(*ints) or 1
    return tuple(x // g for x in ints)


def pointedness_certificate(gens: Sequence[Vector]) -> Optional[Vector]:
    """Integer functional that is >= 1 on every generator, or None.

    The functional is a dual optimum of ``max sum(c) s.t. sum c_i g_i =
    sum g_i, c >= 0``; that program is unbounded exactly when some nonzero
    nonnegative combination of the generators vanishes, i.e. when the
    generated cone contains a line.
    """
    vecs = [lattice.vec(g) for g in gens]
    d = lattice.common_dimension(vecs)
    if any(lattice.is_zero(v) for v in vecs):
        raise DegenerateInputError("zero vector among generators")
    rows = [[v[i] for v in vecs] for i in range(d)]
    total = [sum(r) for r in rows]
    res = maximize([1] * len(vecs), rows, total)
    if res.status != "optimal":
        return None
    cert = _integral_direction(res.y)
    assert all(dot(cert, v) >= 1 for v in vecs)
    return cert


def check_certificate(cert: Sequence[int], gens: Sequence[Vector]) -> None:
    for i, g in enumerate(gens):
        if dot(cert, g) < 1:
            raise InvalidCertificateError(
                f"certificate {tuple(cert)} takes value {dot(cert, g)} on generator {i}"
            )


def _cofactor_normal(vectors: Sequence[Vector], d: int) -> Vector:
    # generalized cross product of d-1 vectors in Z^d
    normal = []
    for k in range(d):
        minor = [[v[i] for i in range(d) if i != k] for v in vectors]
        normal.append((-1) ** k * lattice.det(minor) if minor else (-1) ** k)
    return tuple(normal)


def cone_facets(gens: Sequence[Vector]) -> list[Vector]:
    """Primitive inner normals of the facets of the cone spanned by `gens`.

    Only meaningful for full-dimensional cones; for lower-dimensional ones
    the list still consists of valid inequalities, just not a complete set.
    """
    d = lattice.common_dimension(gens)
    facets: list[Vector] = []
    seen = set()
    for sub in itertools.combinations(gens, d - 1):
        n = _cofactor_normal(sub, d)
        if not any(n):
            continue
        g = math.gcd(*n)
        n = tuple(x // g for x in n)
        vals = [dot(n, v) for v in gens]
        if all(x >= 0 for x in vals):
            pass
        elif all(x <= 0 for x in vals):
            n = tuple(-x for x in n)
        else:
            continue
        if n not in seen:
            seen.add(n)
            facets.append(n)
    return facets


@dataclass(frozen=True)
class Representation:
    """Nonnegative integer combination: (generator index, multiplicity) pairs."""

    terms: tuple[tuple[int, int], ...]

    def evaluate(self, gens: Sequence[Vector]) -> Vector:
        d = len(gens[0])
        total = (0,) * d
        for i, m in self.terms:
            total = lattice.add(total, lattice.scale(m, gens[i]))
        return total

    @property
    def length(self) -> int:
        return sum(m for _, m in self.terms)


class _Deadline:
    __slots__ = ("at", "ticks")

    def __init__(self, seconds: Optional[float]):
        self.at = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0

    def check(self) -> None:
        if self.at is None:
            return
        self.ticks += 1
        if self.ticks & 1023 == 0 and time.monotonic() > self.at:
            raise BudgetExceeded("time budget exhausted")


class MembershipOracle:
    """Decides membership in the semigroup generated by `gens`.

    Depth-first search over multiplicities, one generator at a time in order
    of decreasing certificate value.  The certificate value of the residual
    is a strictly decreasing budget, which makes the search finite; cone
    facets and a cache of failed (residual, position) states prune it.
    """

    def __init__(self, gens: Sequence[Vector], cert: Sequence[int],
                 facets: Optional[Sequence[Vector]] = None, deadline=None):
        self.gens = [lattice.vec(g) for g in gens]
        self.cert = tuple(cert)
        check_certificate(self.cert, self.gens)
        self.order = sorted(range(len(self.gens)), key=lambda i: (-dot(self.cert, self.gens[i]), i))
        self.values = [dot(self.cert, self.gens[i]) for i in self.order]
        self.facets = list(facets) if facets is not None else (
            cone_facets(self.gens) if self.gens else []
        )
        self.deadline = deadline if deadline is not None else _Deadline(None)
        self._failed: set[tuple[Vector, int]] = set()

    def _admissible(self, r: Vector) -> bool:
        return all(dot(f, r) >= 0 for f in self.facets)

    def _search(self, r: Vector, budget: int, k: int, picks: list[int]) -> bool:
        if budget == 0:
            return not any(r)
        if k == len(self.order) or (r, k) in self._failed:
            return False
        self.deadline.check()
        g = self.gens[self.order[k]]
        c = self.values[k]
        top = budget // c
        for m in range(top, -1, -1):
            rr = tuple(a - m * b for a, b in zip(r, g)) if m else r
            if m and not self._admissible(rr):
                continue
            picks[k] = m
            if self._search(rr, budget - m * c, k + 1, picks):
                return True
        picks[k] = 0
        self._failed.add((r, k))
        return False

    def find(self, target: Sequence[int]) -> Optional[Representation]:
        t = lattice.vec(target)
        if not any(t):
            return Representation(())
        budget = dot(self.cert, t)
        if budget < 1 or not self.gens or not self._admissible(t):
            return None
        picks = [0] * len(self.order)
        if not self._search(t, budget, 0, picks):
            return None
        terms = sorted((self.order[k], m) for k, m in enumerate(picks) if m)
        return Representation(tuple(terms))

    def __contains__(self, target) -> bool:
        return self.find(target) is not None


def is_member(target: Sequence[int], gens: Sequence[Vector], cert: Sequence[int]) -> Optional[Representation]:
    """Representation of `target` over `gens`, or None if it is not in the semigroup."""
    return MembershipOracle(gens, cert).find(target)


def sieve(gens: Sequence[Vector], depth: int = DEFAULT_SIEVE_DEPTH,
          cert: Optional[Sequence[int]] = None, deadline=None) -> list[Vector]:
    """Remove generators that show up as sums of 2..depth generators.

    Partial sums are grown level by level; a sum whose certificate value
    exceeds the largest generator value can never equal a generator and is
    not extended further.
    """
    vecs = [lattice.vec(g) for g in gens]
    if cert is None:
        cert = pointedness_certificate(vecs)
        if cert is None:
            raise NotPointedError("sieve needs a pointed generating set")
    deadline = deadline if deadline is not None else _Deadline(None)
    values = {v: dot(cert, v) for v in vecs}
    cap = max(values.values())
    items = sorted(values.items(), key=lambda kv: kv[1])
    level = dict(values)
    hit: set[Vector] = set()
    for _ in range(2, depth + 1):
        nxt: dict[Vector, int] = {}
        for s, sv in level.items():
            for g, gv in items:
                if sv + gv > cap:
                    break
                deadline.check()
                t = tuple(a + b for a, b in zip(s, g))
                nxt[t] = sv + gv
        if not nxt:
            break
        hit.update(nxt)
        level = nxt
    return [v for v in vecs if v not in hit]


@dataclass(frozen=True)
class AffineSemigroup:
    """Pointed affine semigroup spanning Z^d, stored by its Hilbert basis."""

    rank: int
    hilbert_basis: tuple[Vector, ...]
    certificate: Vector
    _facets: list = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        check_certificate(self.certificate, self.hilbert_basis)

    @classmethod
    def from_generators(cls, gens, sieve_depth: int = DEFAULT_SIEVE_DEPTH,
                        time_budget: Optional[float] = None) -> "AffineSemigroup":
        return hilbert_basis(gens, sieve_depth=sieve_depth, time_budget=time_budget)

    @property
    def facets(self) -> list[Vector]:
        if self._facets is None:
            object.__setattr__(self, "_facets", cone_facets(self.hilbert_basis))
        return self._facets

    def oracle(self) -> MembershipOracle:
        return MembershipOracle(self.hilbert_basis, self.certificate, self.facets)

    def __contains__(self, target) -> bool:
        return self.oracle().find(target) is not None

    def __len__(self) -> int:
        return len(self.hilbert_basis)


def hilbert_basis(gens: Iterable[Sequence[int]], sieve_depth: int = DEFAULT_SIEVE_DEPTH,
                  time_budget: Optional[float] = None) -> AffineSemigroup:
    """Minimal generating set of the semigroup generated by `gens`.

    The sieve discards the cheap reducibles; each survivor is then tested
    exactly against the remaining survivors.
    """
    vecs = normalize_generators(gens)
    d = len(vecs[0])
    cert = pointedness_certificate(vecs)
    if cert is None:
        raise NotPointedError("generated semigroup is not pointed")
    if not lattice.spans_full_lattice(vecs):
        raise LatticeSpanError("generators do not span Z^%d as a group" % d)
    deadline = _Deadline(time_budget)
    current = sieve(vecs, sieve_depth, cert, deadline) if sieve_depth >= 2 else list(vecs)
    facets = cone_facets(current)
    for g in sorted(current, key=lambda v: (-dot(cert, v), v)):
        others = [v for v in current if v != g]
        if others and MembershipOracle(others, cert, facets, deadline).find(g) is not None:
            current = others
    return AffineSemigroup(d, tuple(sorted(current)), cert)


def semigroup_equals(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]]) -> bool:
    """True iff `a` and `b` generate the same semigroup."""
    va, vb = normalize_generators(a), normalize_generators(b)
    if len(va[0]) != len(vb[0]):
        return False
    ca, cb = pointedness_certificate(va), pointedness_certificate(vb)
    if ca is None or cb is None:
        raise NotPointedError("semigroup equality is only decided for pointed semigroups")
    in_b, in_a = MembershipOracle(vb, cb), MembershipOracle(va, ca)
    return all(g in in_b for g in va) and all(g in in_a for g in vb)


def is_smooth(s: AffineSemigroup) -> bool:
    """S is isomorphic to N^d: d basis elements forming a unimodular matrix."""
    return len(s.hilbert_basis) == s.rank and lattice.is_unimodular(s.hilbert_basis)


def saturation_witness(s: AffineSemigroup, search_bound: int) -> Optional[Vector]:
    """Some u outside S with a multiple k*u in S (k >= 2), or None.

    Scans the lattice points of the cone whose certificate value is at most
    `search_bound`, cheapest first.  Every such point has a multiple in S of
    the form k*u with k bounded by the largest |det| of d basis elements, so
    the scan is exhaustive up to that bound.
    """
    hb, cert, d = s.hilbert_basis, s.certificate, s.rank
    dets = [abs(lattice.det_columns(c)) for c in itertools.combinations(hb, d)]
    max_mult = max(dets)
    if max_mult < 2:
        return None
    lo, hi = [], []
    for i in range(d):
        coords = [Fraction(0)] + [Fraction(search_bound * g[i], dot(cert, g)) for g in hb]
        lo.append(math.floor(min(coords)))
        hi.append(math.ceil(max(coords)))
    facets = s.facets
    candidates = [
        u for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if 1 <= dot(cert, u) <= search_bound and all(dot(f, u) >= 0 for f in facets)
    ]
    candidates.sort(key=lambda u: (dot(cert, u), u))
    oracle = s.oracle()
    for u in candidates:
        if u in oracle:
            continue
        for k in range(2, max_mult + 1):
            if lattice.scale(k, u) in oracle:
                return u
    return None


@dataclass(frozen=True)
class BinomialRelation:
    """x^lhs - x^rhs, with each side a multiset of 0-based generator indices."""

    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    @classmethod
    def from_exponents(cls, lhs: dict[int, int], rhs: dict[int, int]) -> "BinomialRelation":
        expand = lambda e: tuple(sorted(i for i, k in e.items() for _ in range(k)))
        return cls(expand(lhs), expand(rhs))


def relation_holds(rel: BinomialRelation, gens: Sequence[Vector]) -> bool:
    d = lattice.common_dimension(gens)
    for i in rel.lhs + rel.rhs:
        if not 0 <= i < len(gens):
            raise IndexError(f"generator index {i} out of range for {len(gens)} generators")
    total = lambda side: tuple(sum(gens[i][k] for i in side) for k in range(d))
    return total(rel.lhs) == total(rel.rhs)
