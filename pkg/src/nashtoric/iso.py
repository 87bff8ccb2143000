"""Unimodular equivalence of pointed affine semigroups."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from . import lattice
from .errors import DimensionError
from .lattice import Vector
from .semigroup import AffineSemigroup


@dataclass(frozen=True)
class IsomorphismWitness:
    """`matrix` sends source basis element i to target basis element permutation[i]."""

    matrix: tuple[tuple[int, ...], ...]
    permutation: tuple[int, ...]

    def verify(self, src: AffineSemigroup, dst: AffineSemigroup) -> bool:
        if not lattice.is_unimodular(self.matrix):
            return False
        if sorted(self.permutation) != list(range(len(dst.hilbert_basis))):
            return False
        return all(
            lattice.matvec(self.matrix, h) == dst.hilbert_basis[j]
            for h, j in zip(src.hilbert_basis, self.permutation)
        )


def _first_independent(basis: tuple[Vector, ...], d: int) -> tuple[int, ...]:
    for idx in itertools.combinations(range(len(basis)), d):
        if lattice.det_columns([basis[i] for i in idx]) != 0:
            return idx
    raise DimensionError("basis does not have full rank")


def find_isomorphism(src: AffineSemigroup, dst: AffineSemigroup) -> Optional[IsomorphismWitness]:
    """Search for a unimodular map carrying src's Hilbert basis onto dst's.

    The images of one fixed independent d-subset of the source determine
    the map, so trying every ordered d-tuple of target elements is an
    exhaustive search.
    """
    if src.rank != dst.rank:
        raise DimensionError(f"rank {src.rank} vs rank {dst.rank}")
    d = src.rank
    if len(src.hilbert_basis) != len(dst.hilbert_basis):
        return None
    seed = _first_independent(src.hilbert_basis, d)
    seed_cols = [src.hilbert_basis[i] for i in seed]
    seed_det = abs(lattice.det_columns(seed_cols))
    inv = lattice.inverse_rational(lattice.from_columns(seed_cols))
    targets = {v: j for j, v in enumerate(dst.hilbert_basis)}
    for images in itertools.permutations(range(len(dst.hilbert_basis)), d):
        img_cols = [dst.hilbert_basis[j] for j in images]
        if abs(lattice.det_columns(img_cols)) != seed_det:
            continue
        img = lattice.from_columns(img_cols)
        m = [[sum(a * b for a, b in zip(row, col)) for col in zip(*inv)] for row in img]
        if any(v.denominator != 1 for row in m for v in row):
            continue
        m = tuple(tuple(int(v) for v in row) for row in m)
        perm = []
        for h in src.hilbert_basis:
            j = targets.get(lattice.matvec(m, h))
            if j is None:
                break
            perm.append(j)
        else:
            if len(set(perm)) == len(perm) and lattice.is_unimodular(m):
                return IsomorphismWitness(m, tuple(perm))
    return None


def fingerprint(s: AffineSemigroup) -> tuple:
    """GL(d, Z)-invariant key; different keys mean non-isomorphic.

    Combines the rank, the basis size, the multiset of |det| over all
    d-subsets of the basis, and the multiset of collision counts among the
    pairwise sums h_i + h_j (i <= j).
    """
    hb = s.hilbert_basis
    dets = sorted(abs(lattice.det_columns(c)) for c in itertools.combinations(hb, s.rank))
    sums = Counter(lattice.add(a, b) for a, b in itertools.combinations_with_replacement(hb, 2))
    collisions = sorted(sums.values())
    return (s.rank, len(hb), tuple(dets), tuple(collisions))


def transform(s: AffineSemigroup, matrix) -> AffineSemigroup:
    """Image of `s` under a unimodular matrix, with a matching certificate."""
    if not lattice.is_unimodular(matrix):
        raise ValueError("matrix is not unimodular")
    basis = tuple(sorted(lattice.matvec(matrix, h) for h in s.hilbert_basis))
    # cert' = cert . M^-1 keeps the values on corresponding elements
    inv = lattice.inverse_rational(matrix)
    cert = tuple(int(sum(c * inv[i][j] for i, c in enumerate(s.certificate))) for j in range(s.rank))
    return AffineSemigroup(s.rank, basis, cert)
