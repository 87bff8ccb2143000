"""Exact computation of iterated Nash blowups of affine toric varieties."""

from .blowup import Chart, chart_generators, chart_with_explicit_generators, enumerate_bases, nash_blowup
from .driver import ExplorationReport, IterationOptions, check_against, iterate, read_log, write_log
from .iso import IsomorphismWitness, find_isomorphism, fingerprint
from .jacobian import chart_via_minors, cross_check, jacobian_minor
from .lattice import det, is_unimodular, solve_integer_columns, spans_full_lattice
from .semigroup import (
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

__version__ = "0.1.0"
