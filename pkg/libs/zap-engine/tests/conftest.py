"""
Shared fixtures for the zap-engine tests.

Letter examples use a=1, b=2, c=3, d=4, e=5 over five variables. The
twelve-atom QPROP space numbers a(x, y), b(y, z), c(x, z) row-major over the
domain {A, B}, so atoms 1..4 are a, 5..8 are b and 9..12 are c.
"""

import pytest

from zap_engine.augmented import AugmentedClause
from zap_engine.core import Clause
from zap_engine.encoders import (
    QuantifiedClause,
    encode_cardinality,
    encode_pigeonhole,
    encode_qprop,
)
from zap_engine.group import PermGroup
from zap_engine.perm import parse_cycles

A, B, C, D, E = 1, 2, 3, 4, 5


@pytest.fixture
def square_group():
    """The dihedral group of order 8 generated by (abcd) and (ac)."""
    return PermGroup(4, [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)])


@pytest.fixture
def square_elements():
    return {
        parse_cycles(text, 4)
        for text in (
            "()", "(1 2 3 4)", "(1 3)(2 4)", "(1 4 3 2)",
            "(1 3)", "(1 4)(2 3)", "(2 4)", "(1 2)(3 4)",
        )
    }


@pytest.fixture
def omega():
    """(1 3 4)(2 5) over six variables; variable 6 is fixed."""
    return parse_cycles("(1 3 4)(2 5)", 6)


@pytest.fixture
def sym_bcd():
    return PermGroup.symmetric(5, [B, C, D])


@pytest.fixture
def swap_ed():
    return PermGroup(5, [parse_cycles("(5 4)", 5)])


@pytest.fixture
def clause_23(sym_bcd):
    """(a v b, Sym{b, c, d})."""
    return AugmentedClause(Clause([A, B]), sym_bcd)


@pytest.fixture
def clause_24(swap_ed):
    """(-a v e, <(ed)>)."""
    return AugmentedClause(Clause([-A, E]), swap_ed)


@pytest.fixture
def at_least_3_of_5():
    return encode_cardinality(5, 3)


@pytest.fixture
def php3():
    return encode_pigeonhole(3)


@pytest.fixture
def qprop_abc():
    """a(x, y) v b(y, z) v c(x, z) over the domain {A, B}."""
    q = QuantifiedClause.of(
        {"x": ["A", "B"], "y": ["A", "B"], "z": ["A", "B"]},
        ["a(x, y)", "b(y, z)", "c(x, z)"],
    )
    return encode_qprop(q)
