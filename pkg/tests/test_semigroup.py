import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from nashtoric import catalog, lattice
from nashtoric.errors import (
    DegenerateInputError,
    InvalidCertificateError,
    LatticeSpanError,
    NotPointedError,
)
from nashtoric.semigroup import (
    AffineSemigroup,
    BinomialRelation,
    hilbert_basis,
    is_member,
    is_smooth,
    pointedness_certificate,
    relation_holds,
    saturation_witness,
    semigroup_equals,
    sieve,
)
from oracles import brute_hilbert_basis, dot

from conftest import pointed_corpus, random_pointed_instance

E3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def _valid(cert, gens):
    return all(dot(cert, g) >= 1 for g in gens)


# -- pointedness ----------------------------------------------------------------

def test_certificate_on_B_and_B1(B, B1):
    assert _valid(pointedness_certificate(B), B)
    assert _valid(pointedness_certificate(B1), B1)
    # the hand-made gradings are certificates too
    assert [dot(catalog.GRADING_S, h) for h in B] == [1, 2, 3, 2, 2, 1]
    assert all(dot(catalog.GRADING_SA, g) > 0 for g in B1)


def test_certificate_absent_for_line():
    assert pointedness_certificate([(1, 0), (-1, 0)]) is None
    assert pointedness_certificate([(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1)]) is None


def test_certificate_rejects_zero_vector():
    with pytest.raises(DegenerateInputError):
        pointedness_certificate([(0, 0), (1, 0)])


@given(st.integers(0, 2**32))
@settings(max_examples=150)
def test_certificate_agrees_with_float_lp(seed):
    rng = random.Random(seed)
    d = rng.choice((2, 3, 4))
    gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 7))]
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    res = linprog(np.zeros(d), A_ub=-np.array(gens, dtype=float), b_ub=-np.ones(len(gens)),
                  bounds=[(None, None)] * d, method="highs")
    cert = pointedness_certificate(gens)
    assert (cert is not None) == (res.status == 0)
    if cert is not None:
        assert _valid(cert, gens)


# -- membership ---------------------------------------------------------------

def test_membership_of_nonsaturated_point(B):
    rep = is_member((0, -3, 3), B, catalog.GRADING_S)
    assert rep is not None and rep.evaluate(B) == (0, -3, 3)
    assert rep.terms == ((3, 1), (5, 1))  # h4 + h6
    assert is_member((0, -1, 1), B, catalog.GRADING_S) is None
    assert is_member((0, 0, 0), B, catalog.GRADING_S).terms == ()


def test_membership_invalid_certificate(B):
    with pytest.raises(InvalidCertificateError):
        is_member((1, 0, 0), B, (1, 0, 0))


@given(st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_membership_closed_under_addition(seed):
    rng = random.Random(seed)
    gens = random_pointed_instance(rng, rng.choice((2, 3)))
    cert = pointedness_certificate(gens)
    def element():
        coeffs = [rng.randint(0, 2) for _ in gens]
        return tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(len(gens[0])))

    x, y = element(), element()
    rx, ry = is_member(x, gens, cert), is_member(y, gens, cert)
    assert rx is not None and ry is not None
    rxy = is_member(lattice.add(x, y), gens, cert)
    assert rxy is not None and rxy.evaluate(gens) == lattice.add(x, y)


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_membership_matches_enumeration(seed):
    from oracles import enumerate_elements
    rng = random.Random(seed)
    d = rng.choice((2, 3))
    gens = random_pointed_instance(rng, d, -3, 3, 2)
    cert = pointedness_certificate(gens)
    bound = 2 * max(dot(cert, g) for g in gens)
    elems = enumerate_elements(gens, cert, bound)
    for _ in range(20):
        t = tuple(rng.randint(-6, 6) for _ in range(d))
        if dot(cert, t) > bound:
            continue
        assert (is_member(t, gens, cert) is not None) == (t in elems)


# -- sieve --------------------------------------------------------------------

def test_sieve_removes_visible_sum():
    assert sieve([(1, 0), (0, 1), (1, 1)], 2) == [(1, 0), (0, 1)]


def test_sieve_keeps_B(B):
    # every column has grading value <= 3, so any sum of >= 2 columns would
    # have to come from the value-1 columns h1, h6: h1+h1, h1+h6, h6+h6, and
    # triples of them; none of those is a column
    assert sieve(B, 6) == B


def test_sieve_on_first_chart(B):
    from nashtoric.blowup import chart_generators
    ga = chart_generators(B, catalog.zero_based(catalog.FIRST_BASE))
    assert len(ga) == 11
    kept = sieve(ga, 6)
    h3_minus_h6 = lattice.sub(B[2], B[5])
    assert h3_minus_h6 not in kept
    assert semigroup_equals(kept, ga)


@pytest.mark.parametrize("depth", [2, 3, 4, 6])
def test_sieve_never_changes_hilbert_basis(depth):
    for gens in pointed_corpus(7, 40):
        assert hilbert_basis(gens, sieve_depth=depth) == hilbert_basis(gens, sieve_depth=0)


# -- Hilbert basis --------------------------------------------------------------

def test_hilbert_basis_of_B(B):
    s = hilbert_basis(B)
    assert sorted(B) == list(s.hilbert_basis)
    assert list(s.hilbert_basis) == brute_hilbert_basis(B, catalog.GRADING_S)


def test_hilbert_basis_of_first_chart(B, B1):
    from nashtoric.blowup import chart_generators
    ga = chart_generators(B, catalog.zero_based(catalog.FIRST_BASE))
    s = hilbert_basis(ga)
    assert semigroup_equals(s.hilbert_basis, B1)
    assert set(s.hilbert_basis) == set(B1)


def test_hilbert_basis_free():
    assert hilbert_basis(E3).hilbert_basis == tuple(sorted(E3))


def test_hilbert_basis_errors():
    with pytest.raises(NotPointedError):
        hilbert_basis([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(LatticeSpanError):
        hilbert_basis([(2, 0), (0, 2)])
    with pytest.raises(DegenerateInputError):
        hilbert_basis([(0, 0)])


def test_hilbert_basis_strips_zeros_and_duplicates():
    s = hilbert_basis([(0, 0), (1, 0), (1, 0), (0, 1)])
    assert s.hilbert_basis == ((0, 1), (1, 0))


def test_hilbert_basis_invariants():
    for gens in pointed_corpus(11, 30):
        s = hilbert_basis(gens)
        hb = list(s.hilbert_basis)
        assert hb == sorted(set(hb))
        assert all(any(h) for h in hb)
        assert _valid(s.certificate, hb)
        assert lattice.spans_full_lattice(hb)
        for h in hb:
            others = [g for g in hb if g != h]
            assert not others or is_member(h, others, s.certificate) is None
        assert hilbert_basis(hb) == s  # idempotent


def test_hilbert_basis_agrees_with_brute_force_oracle():
    corpus = pointed_corpus(2024, 200)
    for gens in corpus:
        s = hilbert_basis(gens)
        cert = pointedness_certificate(gens)
        assert list(s.hilbert_basis) == brute_hilbert_basis(gens, cert), gens


# -- equality, smoothness, saturation, relations ----------------------------------

def test_semigroup_equals(B, B1, B2):
    from nashtoric.blowup import chart_generators
    ga = chart_generators(B, catalog.zero_based(catalog.FIRST_BASE))
    ga1 = chart_generators(B1, catalog.zero_based(catalog.SECOND_BASE))
    assert semigroup_equals(ga, B1)
    assert semigroup_equals(ga1, B2)
    assert not semigroup_equals([(1,)], [(2,)])


def test_is_smooth(S):
    assert is_smooth(hilbert_basis(E3))
    assert not is_smooth(S)
    assert is_smooth(hilbert_basis([(1, 0), (1, 1)]))


def test_saturation_witness(S):
    u = saturation_witness(S, max(dot(S.certificate, h) for h in S.hilbert_basis))
    assert u is not None
    assert u not in S
    assert any(lattice.scale(k, u) in S for k in range(2, 10))
    assert u == catalog.NONSATURATED_POINT


def test_saturation_witness_free():
    assert saturation_witness(hilbert_basis(E3), 5) is None


def test_saturation_witness_reindexed_even_lattice():
    # {(2,0),(1,1),(0,2)} spans an index-2 lattice; in the basis (1,1),(1,-1)
    # of that lattice it becomes {(1,1),(1,0),(1,-1)}, which is saturated
    with pytest.raises(LatticeSpanError):
        hilbert_basis([(2, 0), (1, 1), (0, 2)])
    s = hilbert_basis([(1, 1), (1, 0), (1, -1)])
    assert saturation_witness(s, 6) is None


def test_saturation_witness_quadratic_cone():
    # N{(2,0),(1,1)... } style: semigroup generated by (1,0),(1,2) misses (1,1)
    s = hilbert_basis([(1, 0), (1, 2), (0, 1), (0, 3)][:2] + [(2, 1), (3, 2)])
    assert saturation_witness(s, 10) is not None or is_smooth(s)


def test_relations(B):
    for rel in catalog.RELATIONS:
        assert relation_holds(rel, B)
    assert catalog.RELATIONS[0] == BinomialRelation((4, 4), (2, 5))
    assert lattice.add(B[4], B[4]) == (2, -2, 2)
    assert not relation_holds(BinomialRelation((0,), (1,)), B)
    with pytest.raises(IndexError):
        relation_holds(BinomialRelation((0,), (6,)), B)


def test_affine_semigroup_checks_certificate():
    with pytest.raises(InvalidCertificateError):
        AffineSemigroup(2, ((1, 0), (0, 1)), (1, 0))
