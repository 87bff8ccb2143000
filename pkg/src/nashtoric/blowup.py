"""Affine charts of the Nash blowup of an affine toric variety.

A chart is indexed by d generators A with nonzero determinant.  For each
h in A and each generator g outside A, the difference g - h is added when
swapping h for g keeps the determinant nonzero.  S_A is the semigroup those
vectors generate together with A.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import lattice
from .errors import BudgetExceeded, NotPointedError, SingularMatrixError
from .lattice import Vector
from .semigroup import DEFAULT_SIEVE_DEPTH, AffineSemigroup, hilbert_basis, pointedness_certificate

REJECTED = "rejected: non-pointed"
TIMED_OUT = "truncated: time budget"


@dataclass(frozen=True)
class Chart:
    generators: tuple[Vector, ...]  # generating set of the parent the chart was built from
    base_indices: tuple[int, ...]
    base_det: int
    ga_set: tuple[Vector, ...]
    result: Union[AffineSemigroup, str]

    @property
    def pointed(self) -> bool:
        return isinstance(self.result, AffineSemigroup)

    @property
    def base(self) -> tuple[Vector, ...]:
        return tuple(self.generators[i] for i in self.base_indices)


def enumerate_bases(gens: Sequence[Vector], d: Optional[int] = None) -> list[tuple[int, ...]]:
    """All d-subsets of generator indices with nonzero determinant, lexicographically."""
    d = d if d is not None else lattice.common_dimension(gens)
    return [
        idx for idx in itertools.combinations(range(len(gens)), d)
        if lattice.det_columns([gens[i] for i in idx]) != 0
    ]


def chart_generators(gens: Sequence[Vector], base_indices: Sequence[int]) -> list[Vector]:
    """The chart generating set: A, then g - h for (h, g) in index order."""
    gens = [lattice.vec(g) for g in gens]
    base = [gens[i] for i in base_indices]
    if lattice.det_columns(base) == 0:
        raise SingularMatrixError(f"base {tuple(base_indices)} has zero determinant")
    out = list(base)
    seen = set(out)
    outside = [i for i in range(len(gens)) if i not in set(base_indices)]
    for pos, h in enumerate(base):
        for i in outside:
            swapped = base[:pos] + [gens[i]] + base[pos + 1:]
            if lattice.det_columns(swapped) == 0:
                continue
            diff = lattice.sub(gens[i], h)
            if diff not in seen:
                seen.add(diff)
                out.append(diff)
    return out


def _assemble(gens, base_indices, sieve_depth, time_budget) -> Chart:
    gens = tuple(lattice.vec(g) for g in gens)
    base_indices = tuple(base_indices)
    ga = chart_generators(gens, base_indices)
    base_det = lattice.det_columns([gens[i] for i in base_indices])
    if pointedness_certificate(ga) is None:
        result = REJECTED
    else:
        try:
            result = hilbert_basis(ga, sieve_depth=sieve_depth, time_budget=time_budget)
        except BudgetExceeded:
            result = TIMED_OUT
    return Chart(gens, base_indices, base_det, tuple(ga), result)


def chart_with_explicit_generators(gens: Sequence[Vector], base_indices: Sequence[int],
                                   sieve_depth: int = DEFAULT_SIEVE_DEPTH,
                                   time_budget: Optional[float] = None) -> Chart:
    """Build one chart from a caller-chosen generating set, used verbatim."""
    return _assemble(gens, base_indices, sieve_depth, time_budget)


def nash_blowup(s: AffineSemigroup, sieve_depth: int = DEFAULT_SIEVE_DEPTH,
                max_charts: Optional[int] = None,
                time_budget: Optional[float] = None) -> list[Chart]:
    """One chart per nonsingular base of the Hilbert basis of `s`.

    Non-pointed charts are kept, marked with ``REJECTED``.  With
    `max_charts` only the first bases are processed; callers compare the
    length against ``len(enumerate_bases(...))`` to detect truncation.
    """
    bases = enumerate_bases(s.hilbert_basis, s.rank)
    if max_charts is not None:
        bases = bases[:max_charts]
    return [_assemble(s.hilbert_basis, b, sieve_depth, time_budget) for b in bases]


def blowup_semigroup(gens: Sequence[Vector], base_indices: Sequence[int]) -> AffineSemigroup:
    """Convenience: S_A as a semigroup, raising if the chart is not pointed."""
    chart = chart_with_explicit_generators(gens, base_indices)
    if not chart.pointed:
        raise NotPointedError(f"chart {tuple(base_indices)} is not pointed")
    return chart.result
