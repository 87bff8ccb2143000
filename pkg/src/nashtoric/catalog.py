"""Built-in matrices and relations for the dimension-3 counterexample.

Matrices are stored row by row exactly as they are usually displayed;
`cols()` turns one into its list of generators.  Index pairs are 1-based,
matching the h_1..h_6 and g_1..g_8 numbering of the columns.
"""

from __future__ import annotations

from .lattice import Vector, columns, sub
from .semigroup import BinomialRelation

# S: columns h_1..h_6
B = (
    (1, 0, 0, -2, 1, 2),
    (0, 1, 0, -1, -1, -2),
    (0, 0, 1, 2, 1, 1),
)

# S_A: columns g_1..g_8 (the generating set H_1)
B1 = (
    (-1, 0, 3, 1, -2, -2, 2, 2),
    (1, -1, 0, 0, 3, -1, 2, -2),
    (0, 1, -1, 0, -1, 2, -2, 1),
)

# T: columns of H_2
B2 = (
    (1, 4, 2, -2, -1, -4),
    (-2, -1, -1, 3, -2, -3),
    (1, -1, 0, -1, 2, 4),
)

U = (
    (1, 4, 2),
    (-2, -1, -1),
    (1, -1, 0),
)

GRADING_S = (1, 2, 3)
GRADING_SA = (5, 8, 10)
NONSATURATED_POINT = (0, -1, 1)

# third-iteration seed: e_1, e_2, e_3, (1, 1, -6)
SEED = (
    (1, 0, 0, 1),
    (0, 1, 0, 1),
    (0, 0, 1, -6),
)

FIRST_BASE = (1, 4, 6)
SECOND_BASE = (1, 5, 7)

# (omitted element of A, replacement g) -> det(g, remaining two), in display order
SWAP_DETERMINANTS = (
    ((2, 4, 6), 6), ((3, 4, 6), 6), ((5, 4, 6), 3),
    ((2, 1, 6), -1), ((3, 1, 6), -2), ((5, 1, 6), -1),
    ((2, 1, 4), -2), ((3, 1, 4), -1), ((5, 1, 4), 1),
)

# differences g - h as (g, h); h = None means the element g itself
FIRST_CHART_SET = (
    (1, None), (4, None), (6, None),
    (2, 1), (3, 1), (5, 1),
    (2, 4), (3, 4), (5, 4),
    (2, 6), (3, 6), (5, 6),
)
H1_TERMS = ((2, 1), (5, 1), (5, 4), (1, None), (2, 6), (4, None), (2, 4), (6, None))

SECOND_CHART_SET = (
    (1, None), (5, None), (7, None),
    (2, 1), (3, 1), (4, 1), (6, 1), (8, 1),
    (2, 5), (3, 5), (4, 5), (6, 5), (8, 5),
    (3, 7), (4, 7), (6, 7), (8, 7),
)
H2_TERMS = ((2, 1), (3, 1), (4, 1), (5, None), (6, 1), (6, 7))

# lhs and rhs as sums over (index, coefficient) with 1-based indices:
#   lhs_terms == rhs_terms, each term a difference (g, h) or element (g, None)
REDUCTION_IDENTITIES = (
    (((5, 6), 1),), (((2, 1), 1),),
    (((3, 6), 1),), (((2, 1), 2),),
    (((3, 1), 1),), (((2, 1), 1), ((5, 1), 1)),
    (((3, 4), 1),), (((2, 4), 1), ((5, 1), 1)),
)

# x5^2 - x3 x6, x1 x5 - x2 x6, x1 x3 - x2 x5, x1^2 x2 x4 - x3^2, x1^3 x4 - x3 x5
_BINOMIALS_1BASED = (
    ({5: 2}, {3: 1, 6: 1}),
    ({1: 1, 5: 1}, {2: 1, 6: 1}),
    ({1: 1, 3: 1}, {2: 1, 5: 1}),
    ({1: 2, 2: 1, 4: 1}, {3: 2}),
    ({1: 3, 4: 1}, {3: 1, 5: 1}),
)
RELATIONS = tuple(
    BinomialRelation.from_exponents({i - 1: k for i, k in lhs.items()}, {i - 1: k for i, k in rhs.items()})
    for lhs, rhs in _BINOMIALS_1BASED
)


def cols(matrix) -> list[Vector]:
    return columns(matrix)


def resolve(terms, gens) -> list[Vector]:
    """Evaluate (g, h) index pairs against a 1-based list of generators."""
    return [gens[g - 1] if h is None else sub(gens[g - 1], gens[h - 1]) for g, h in terms]


def zero_based(indices) -> tuple[int, ...]:
    return tuple(i - 1 for i in indices)
