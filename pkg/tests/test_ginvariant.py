# File: tests/test_ginvariant.py

import math
from fractions import Fraction

import pytest

from models.composition import BitSequence, Composition
from models.polynomial import SYZYGY, BivariatePolynomial
from utils.errors import CapExceededError
from utils.filters import norm_closed
from utils.ginvariant import (
    catenary_data,
    diptych,
    g_invariant_catenary,
    g_invariant_perm,
    gamma_falling_factorial,
    gamma_symbols,
    specialize,
    specialize_symbol,
    symbol_mobius_value,
    syzygy_expansion,
    truncated_catenary,
    tutte_via_sp,
)
from utils.matroid_dsl import construct
from utils.tau import syzygy_term, tutte_uniform
from utils.tutte import mobius_invariant, tutte_direct

H33 = "sum(multipoint:0;3|line:3,1,1)"

LOOPLESS = [
    "uniform:1,2",
    "uniform:2,3",
    "uniform:2,4",
    "pg:2,2",
    "complete:4",
    "echelon:110100",
    "line:3,1,1",
    H33,
]

WITH_LOOPS = [
    "multipoint:2;1,3",
    "sum(uniform:0,1|uniform:1,1)",
    "graphic:[(1,2);(2,3);(1,3);(3,4);(4,4)]",
]


def all_compositions(n_max):
    for n in range(1, n_max + 1):
        yield from Composition.all(n)


# --- Specialization ---
def test_first_symbol_is_uniform():
    for n in range(1, 8):
        for r in range(n + 1):
            top = BitSequence(tuple([1] * r + [0] * (n - r)))
            expected = tutte_uniform(r, n).scale(Fraction(1, math.factorial(n)))
            assert specialize_symbol(top) == expected


def test_adjacent_symbols_differ_by_syzygy():
    difference = specialize_symbol(BitSequence.parse("11010")) - specialize_symbol(BitSequence.parse("11100"))
    assert difference == SYZYGY.scale(Fraction(1, 12))
    assert difference == syzygy_term(2, 3, 3, 5)


def test_syzygy_expansion_matches_specialization():
    for n in range(1, 7):
        for r in range(n + 1):
            for bits in BitSequence.all(n, r):
                assert syzygy_expansion(bits) == specialize_symbol(bits), bits


def test_specialize_is_linear():
    symbols = gamma_symbols(Composition((0, 1, 2, 3)))
    expected = sum(
        (specialize_symbol(bits).scale(c) for bits, c in symbols.items()),
        BivariatePolynomial(),
    )
    assert specialize(symbols) == expected


def test_symbol_mobius_value():
    for n in range(1, 9):
        for r in range(1, n + 1):
            for bits in BitSequence.all(n, r):
                if bits.bits[0] != 1:
                    continue
                assert symbol_mobius_value(bits) == specialize_symbol(bits).evaluate(1, 0), bits
    # leading zero: evaluated directly
    bits = BitSequence.parse("0110")
    assert symbol_mobius_value(bits) == specialize_symbol(bits).evaluate(1, 0)


# --- Gamma basis ---
def test_gamma_of_thin_composition():
    a = Composition((0, 1, 1, 3, 5))
    symbols = gamma_symbols(a)
    assert len(symbols) == 3
    assert symbols.coefficient(a.to_bits()) == 720
    assert symbols.coefficient(BitSequence.parse("1111000000")) == 720 * 15
    assert sorted(c // 720 for _, c in symbols.items()) == [1, 5, 15]


def test_gamma_of_staircase():
    a = Composition((0, 1, 2, 3, 4))
    assert a.factorial() == 288
    symbols = gamma_symbols(a)
    assert sorted(c // 288 for _, c in symbols.items()) == [1, 3, 4, 10, 12, 30, 60]
    assert symbols.total_mass() == 288 * 120


def test_gamma_mass_is_factorial_times_norm():
    for a in all_compositions(8):
        assert gamma_symbols(a).total_mass() == a.factorial() * norm_closed(a), a


def test_falling_factorial_form():
    for a in all_compositions(7):
        assert gamma_falling_factorial(a) == gamma_symbols(a), a


def test_falling_factorial_cap():
    with pytest.raises(CapExceededError):
        gamma_falling_factorial(Composition((0, 3, 3)), cap=5)


def test_symbols_list_top_first():
    symbols = gamma_symbols(Composition((0, 1, 2, 3)))
    first, _ = symbols.items()[0]
    assert str(first) == "111000"


# --- Catenary data ---
def test_catenary_of_small_uniform():
    data = catenary_data(construct("uniform:2,3"))
    assert dict(data.items()) == {Composition((0, 1, 2)): 3}


def test_catenary_of_projective_plane():
    data = catenary_data(construct("pg:2,3"))
    assert dict(data.items()) == {Composition((0, 1, 3, 9)): 52}


def test_catenary_of_direct_sum():
    data = catenary_data(construct(H33))
    assert {a.parts: nu for a, nu in data.items()} == {
        (0, 3, 3, 2): 2,
        (0, 3, 1, 4): 2,
        (0, 3, 2, 3): 1,
        (0, 1, 3, 4): 2,
        (0, 1, 4, 3): 2,
    }
    assert data.total_flags() == 9
    assert data.to_json()[0] == {"composition": [0, 3, 3, 2], "nu": 2}


def test_catenary_keeps_loops_in_first_part():
    data = catenary_data(construct("multipoint:2;1,3"))
    assert all(a.a0 == 2 for a in data.compositions())


def test_diptych():
    for spec in LOOPLESS:
        m = construct(spec)
        front, back = diptych(catenary_data(m))
        assert front == 1
        assert back == mobius_invariant(m)


def test_truncated_catenary_matches_truncation():
    for spec in LOOPLESS + WITH_LOOPS:
        m = construct(spec)
        data = catenary_data(m)
        for s in range(1, m.r + 1):
            assert truncated_catenary(data, s) == catenary_data(m.truncate(m.r - s)), (spec, s)


def test_truncated_catenary_range():
    data = catenary_data(construct("pg:2,2"))
    assert dict(truncated_catenary(data, 0).items()) == {Composition((7,)): 1}
    assert truncated_catenary(data, 3) == data
    with pytest.raises(ValueError):
        truncated_catenary(data, 4)


# --- G-invariant ---
def test_perm_examples():
    assert dict(g_invariant_perm(construct("uniform:1,2")).items()) == {BitSequence.parse("10"): 2}
    loop_and_isthmus = g_invariant_perm(construct("sum(uniform:0,1|uniform:1,1)"))
    assert dict(loop_and_isthmus.items()) == {BitSequence.parse("10"): 1, BitSequence.parse("01"): 1}


@pytest.mark.parametrize("spec", [s for s in LOOPLESS + WITH_LOOPS if construct(s).n <= 7])
def test_perm_matches_catenary(spec):
    m = construct(spec)
    assert g_invariant_perm(m) == g_invariant_catenary(m)


def test_perm_cap():
    with pytest.raises(CapExceededError):
        g_invariant_perm(construct("uniform:2,9"))
    with pytest.raises(CapExceededError):
        g_invariant_perm(construct("uniform:2,4"), cap=3)


@pytest.mark.parametrize("spec", LOOPLESS + WITH_LOOPS)
def test_specialized_invariant_is_tutte(spec):
    m = construct(spec)
    assert tutte_via_sp(m) == tutte_direct(m)
