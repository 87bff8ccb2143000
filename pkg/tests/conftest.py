import random

import pytest

from nashtoric import catalog, lattice
from nashtoric.semigroup import hilbert_basis, pointedness_certificate


@pytest.fixture
def B():
    return catalog.cols(catalog.B)


@pytest.fixture
def B1():
    return catalog.cols(catalog.B1)


@pytest.fixture
def B2():
    return catalog.cols(catalog.B2)


@pytest.fixture
def S(B):
    return hilbert_basis(B)


def random_pointed_instance(rng: random.Random, d: int, lo: int = -4, hi: int = 4, extra: int = 4):
    """Random generating set that is pointed and spans Z^d (rejection sampling)."""
    while True:
        n = rng.randint(d, d + extra)
        gens = [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(n)]
        gens = [g for g in dict.fromkeys(gens) if any(g)]
        if len(gens) < d or not lattice.spans_full_lattice(gens):
            continue
        if pointedness_certificate(gens) is not None:
            return gens


def random_unimodular(rng: random.Random, d: int, lo: int = -3, hi: int = 3):
    while True:
        m = [[rng.randint(lo, hi) for _ in range(d)] for _ in range(d)]
        if lattice.is_unimodular(m):
            return m


def pointed_corpus(seed: int, count: int):
    rng = random.Random(seed)
    return [random_pointed_instance(rng, rng.choice((2, 3))) for _ in range(count)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
