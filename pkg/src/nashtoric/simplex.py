"""A small exact simplex solver over the rationals.

Only meant for the tiny programs that show up when certifying pointedness
(a handful of rows, a few dozen columns).  Bland's rule keeps it finite on
the highly degenerate instances those programs produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import solve_rational


@dataclass
class LPResult:
    status: str  # "optimal", "unbounded" or "infeasible"
    x: Optional[list[Fraction]] = None
    y: Optional[list[Fraction]] = None
    value: Optional[Fraction] = None


def _pivot(t: list[list[Fraction]], r: int, k: int) -> None:
    p = t[r][k]
    t[r] = [v / p for v in t[r]]
    for i, row in enumerate(t):
        if i != r and row[k] != 0:
            f = row[k]
            t[i] = [a - f * b for a, b in zip(row, t[r])]


def _run(t, basis, cost, allowed) -> bool:
    """Minimise ``cost . x`` from the current basis; False if unbounded."""
    rhs = len(t[0]) - 1
    while True:
        enter = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j] - sum(cost[b] * t[i][j] for i, b in enumerate(basis))
            if r < 0:
                enter = j
                break
        if enter is None:
            return True
        leave = None
        best = None
        for i in range(len(t)):
            if t[i][enter] > 0:
                ratio = t[i][rhs] / t[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(t, leave, enter)
        basis[leave] = enter


def maximize(c: Sequence[int], a: Sequence[Sequence[int]], b: Sequence[int]) -> LPResult:
    """Solve ``max c.x`` subject to ``a x == b`` and ``x >= 0`` exactly.

    On success `y` holds dual values with ``y . a[:, j] >= c[j]`` for all j.
    """
    m, n = len(a), len(c)
    signs = [1 if bi >= 0 else -1 for bi in b]
    t = [
        [Fraction(s * v) for v in row] + [Fraction(int(i == r)) for r in range(m)] + [Fraction(s * bi)]
        for i, (row, bi, s) in enumerate(zip(a, b, signs))
    ]
    basis = list(range(n, n + m))
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    _run(t, basis, phase1, range(n + m))
    if any(t[i][-1] != 0 for i, bv in enumerate(basis) if bv >= n):
        return LPResult("infeasible")

    # Drive zero-level artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] >= n:
            k = next((j for j in range(n) if t[i][j] != 0), None)
            if k is None:
                continue
            _pivot(t, i, k)
            basis[i] = k
        keep.append(i)
    t = [t[i] for i in keep]
    basis = [basis[i] for i in keep]

    phase2 = [Fraction(-v) for v in c] + [Fraction(0)] * m
    if not _run(t, basis, phase2, range(n)):
        return LPResult("unbounded")

    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = t[i][-1]
    rows = [[Fraction(s * v) for v in a[i]] for i, s in ((i, signs[i]) for i in keep)]
    # y solves B^T y = c_B; dual values of dropped rows are zero.
    y_kept = solve_rational(
        [tuple(row[bv] for bv in basis) for row in rows],
        [Fraction(c[bv]) for bv in basis],
    ) if keep else []
    y = [Fraction(0)] * m
    for r, i in enumerate(keep):
        y[i] = y_kept[r] * signs[i]
    return LPResult("optimal", x=x, y=y, value=sum(Fraction(ci) * xi for ci, xi in zip(c, x)))
