"""Charts of the Nash blowup read off from Jacobian minors.

For the monomial map x -> (x^h_1, ..., x^h_r) the maximal minor on rows
i_1..i_d is a single Laurent monomial:

    det(h_i1 ... h_id) * x^(h_i1 + ... + h_id - (1, ..., 1))

Dividing all minors by a fixed nonzero one gives the chart coordinates, so
a chart can be rebuilt from exponents alone and compared with the
determinant-swap construction in `blowup`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import lattice
from .errors import DegenerateInputError, SingularMatrixError
from .lattice import Vector
from .semigroup import AffineSemigroup, semigroup_equals
from .blowup import chart_generators


@dataclass(frozen=True)
class MonomialMinor:
    rows: tuple[int, ...]
    coefficient: int
    exponent: Vector


def jacobian_minor(gens: Sequence[Vector], rows: Sequence[int]) -> MonomialMinor:
    rows = tuple(rows)
    if len(set(rows)) != len(rows):
        raise DegenerateInputError(f"repeated row index in {rows}")
    d = lattice.common_dimension(gens)
    if len(rows) != d:
        raise DegenerateInputError(f"need {d} rows, got {len(rows)}")
    selected = [lattice.vec(gens[i]) for i in rows]
    exponent = tuple(sum(v[k] for v in selected) - 1 for k in range(d))
    return MonomialMinor(rows, lattice.det_columns(selected), exponent)


def all_minors(gens: Sequence[Vector]) -> list[MonomialMinor]:
    d = lattice.common_dimension(gens)
    return [jacobian_minor(gens, rows) for rows in itertools.combinations(range(len(gens)), d)]


def chart_via_minors(gens: Sequence[Vector], base_rows: Sequence[int]) -> list[Vector]:
    """Generators of the chart where the minor on `base_rows` is inverted.

    Returns the original generators followed by the exponents of every
    nonzero minor quotient (zero exponent dropped).
    """
    base = jacobian_minor(gens, base_rows)
    if base.coefficient == 0:
        raise SingularMatrixError(f"minor {tuple(base_rows)} vanishes")
    out = [lattice.vec(g) for g in gens]
    for minor in all_minors(gens):
        if minor.coefficient == 0:
            continue
        q = lattice.sub(minor.exponent, base.exponent)
        if any(q) and q not in out:
            out.append(q)
    return out


def cross_check(s: AffineSemigroup | Sequence[Vector], base_indices: Sequence[int]) -> bool:
    """The minor-quotient chart and the determinant-swap chart coincide."""
    gens = s.hilbert_basis if isinstance(s, AffineSemigroup) else [lattice.vec(g) for g in s]
    return semigroup_equals(chart_via_minors(gens, base_indices), chart_generators(gens, base_indices))
