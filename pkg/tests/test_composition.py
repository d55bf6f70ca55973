# File: tests/test_composition.py

import math
from fractions import Fraction

import pytest

from models.composition import BitSequence, Composition, ShiftVector, SliceConstraint
from utils.errors import CapExceededError, CompositionError
from utils.filters import (
    binomial,
    box_contains,
    coefficient_c,
    dominates,
    enumerate_filter,
    filter_size,
    norm,
    norm_closed,
    norm_recurse,
    norm_split,
    partial_sums,
    shift_vector,
    thickness,
)

EXAMPLE = Composition((0, 1, 1, 4, 2, 4))


def compositions_up_to(n_max, loopless=False):
    for n in range(1, n_max + 1):
        for a in Composition.all(n):
            if loopless and a.a0:
                continue
            yield a


# --- Compositions and bit sequences ---
def test_partial_sums():
    assert partial_sums(EXAMPLE) == (0, 1, 2, 6, 8, 12)
    assert partial_sums(Composition((3, 1, 4))) == (3, 4, 8)
    assert Composition((0, 1, 1, 1, 5)).partial_sums() == (0, 1, 2, 3, 8)


def test_bits_and_compositions_are_inverse():
    for n in range(0, 9):
        for r in range(n + 1):
            for bits in BitSequence.all(n, r):
                assert bits.to_composition().to_bits() == bits


def test_composition_bit_view():
    assert str(Composition((0, 1, 1, 3, 5)).to_bits()) == "1110010000"
    assert BitSequence.parse("0010000100001000").to_composition() == Composition((2, 5, 5, 4))


@pytest.mark.parametrize("text", ["", "0,-1", "0,0", "-1,2", "a,b"])
def test_bad_compositions_raise(text):
    with pytest.raises(CompositionError):
        Composition.parse(text)


def test_parse_and_print():
    assert Composition.parse("[0, 1, 1, 4, 2, 4]") == EXAMPLE
    assert str(EXAMPLE) == "0,1,1,4,2,4"
    with pytest.raises(CompositionError):
        BitSequence.parse("1021")


def test_nu_ignores_loops():
    assert EXAMPLE.nu() == 990
    assert Composition((3, 1, 1, 4, 2, 4)).nu() == 990
    assert Composition((0, 5)).nu() == 1
    # uniform composition (0, 1, ..., 1, n - r + 1)
    assert Composition((0, 1, 1, 1, 3)).nu() == Fraction(math.factorial(6), math.factorial(3))


# --- Dominance and shift vectors ---
def test_dominance():
    assert dominates(BitSequence.parse("11010"), BitSequence.parse("10110"))
    assert not dominates(BitSequence.parse("10110"), BitSequence.parse("11010"))
    top = BitSequence.parse("11100")
    bottom = BitSequence.parse("00111")
    for bits in BitSequence.all(5, 3):
        assert dominates(top, bits)
        assert dominates(bits, bottom)
        assert dominates(bottom, bits) == (bits == bottom)


def test_dominance_needs_same_shape():
    with pytest.raises(CompositionError):
        dominates(BitSequence.parse("110"), BitSequence.parse("1100"))


def test_shift_vector():
    a = BitSequence.parse("0010000100001000").to_composition()
    b = BitSequence.parse("1000001001000000")
    assert shift_vector(b, a).shifts == (2, 1, 3)
    assert shift_vector(a.to_bits(), a).shifts == (0, 0, 0)
    assert shift_vector(BitSequence.parse("0001000100001000"), a) is None


def test_shift_vector_is_one_based():
    s = ShiftVector((2, 1, 3))
    assert s[1] == 2 and s[3] == 3
    assert len(s) == 3


# --- Filters ---
@pytest.mark.parametrize("parts, size", [
    ((0, 1, 1, 3, 5), 3),
    ((0, 1, 2, 3, 4), 7),
    ((0, 1, 1, 3), 1),
])
def test_filter_sizes(parts, size):
    assert filter_size(Composition(parts)) == size


def test_filter_matches_dominance_scan():
    for a in compositions_up_to(8):
        base = a.to_bits()
        expected = {bits for bits in BitSequence.all(a.n, a.r) if dominates(bits, base)}
        found = [bits for bits, _ in enumerate_filter(a)]
        assert len(found) == len(set(found))
        assert set(found) == expected


def test_filter_order_is_lexicographic_on_shifts():
    shifts = [s.shifts for _, s in enumerate_filter(Composition((0, 1, 2, 3, 4)))]
    assert shifts == sorted(shifts)


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        list(enumerate_filter(Composition((0, 10, 11)), cap=20))


# --- Coefficients and norms ---
def test_coefficient_c():
    assert coefficient_c(Composition((0, 1, 1, 3, 5)), ShiftVector((0, 0, 0, 2))) == 15
    assert coefficient_c(Composition((0, 1, 2, 3, 4)), ShiftVector((0, 0, 1, 3))) == 60
    assert coefficient_c(EXAMPLE, ShiftVector((0, 0, 0, 0, 0))) == 1


def test_coefficient_c_outside_box():
    a = Composition((0, 1, 1, 3, 5))
    assert not box_contains(a, ShiftVector((1, 0, 0, 0)))
    with pytest.raises(CompositionError):
        coefficient_c(a, ShiftVector((1, 0, 0, 0)))


@pytest.mark.parametrize("constraint, value", [
    ("", 420),
    ("s5=1", 40),
    ("s5<=2", 140),
    ("s4=0", 5),
])
def test_worked_norms(constraint, value):
    assert norm(EXAMPLE, SliceConstraint.parse(constraint)) == value


def test_cumulative_slices():
    values = [norm(EXAMPLE, SliceConstraint(((5, "<=", j),))) for j in range(4)]
    assert values == [10, 50, 140, 280]


def test_slice_parsing():
    constraint = SliceConstraint.parse("s5<=2, s4=0")
    assert constraint.clauses == ((5, "<=", 2), (4, "=", 0))
    assert str(constraint) == "s5<=2, s4=0"
    with pytest.raises(CompositionError):
        SliceConstraint.parse("t5=1")
    with pytest.raises(CompositionError):
        norm(Composition((0, 1, 2)), SliceConstraint.parse("s3=0"))


def test_norm_closed_matches_enumeration():
    for a in compositions_up_to(9):
        assert norm_closed(a) == norm(a), a


def test_norm_closed_examples():
    assert norm_closed(EXAMPLE) == 420
    assert norm_closed(Composition((0, 7))) == 1
    # leading ones do not change the norm
    assert norm_closed(Composition((0, 1, 1, 3, 2))) == norm_closed(Composition((0, 3, 2)))
    assert norm_closed(Composition((2, 3, 2))) == math.comb(7, 2) * norm_closed(Composition((0, 3, 2)))


@pytest.mark.parametrize("parts, value", [
    ((0, 1, 1, 3, 5), 1),
    ((0, 1, 2, 3, 4), 2),
    ((0, 1, 2, 3, 4, 5), 3),
    ((0, 1, 1, 1), 0),
    ((2, 1, 1), 2),
])
def test_thickness(parts, value):
    assert thickness(Composition(parts)) == value


# --- Slice identities ---
def test_slice_recursion():
    for a in compositions_up_to(9, loopless=True):
        if a.r >= 2:
            assert norm_recurse(a) == norm_closed(a), a


def test_slice_split():
    for a in compositions_up_to(8, loopless=True):
        xi = a.partial_sums()
        for k in range(1, a.r):
            for j in range(xi[k] - k + 2):
                constraint = SliceConstraint(((k + 1, "=", j),))
                assert norm_split(a, k, j) == norm(a, constraint), (a, k, j)


def test_binomial_shift_identity():
    for tail in compositions_up_to(7, loopless=True):
        if tail.r < 1:
            continue
        total = tail.range_sum(1, tail.r)
        for j in range(5):
            moved = Composition((0, tail[1] + j) + tail.parts[2:])
            left = binomial(tail[1] + j - 1, j) * norm_closed(moved)
            right = binomial(total + j - 1, j) * norm_closed(tail)
            assert left == right, (tail, j)


def test_binomial_extension():
    assert binomial(5, 2) == 10
    assert binomial(3, -1) == 0
    assert binomial(-1, 3) == -1
    assert binomial(-2, 2) == 3
    for n in range(0, 12):
        for k in range(0, 12):
            assert binomial(n, k) == math.comb(n, k)


def test_binomial_sum_identities():
    for a in range(31):
        for j in range(31):
            assert sum(binomial(a + i - 1, i) for i in range(j + 1)) == binomial(a + j, j), (a, j)
            alternating = sum((-1) ** i * binomial(a, i) for i in range(j + 1))
            assert alternating == (-1) ** j * binomial(a - 1, j), (a, j)


def test_binomial_product_identities():
    for a in range(31):
        for A in range(31):
            lead = binomial(A + a - 1, a - 1)
            running = 0
            for j in range(31):
                term = binomial(a + j - 1, j) * binomial(A + a + j - 1, a + j - 1)
                assert term == lead * binomial(A + a + j - 1, j), (a, A, j)
                running += term
                assert running == lead * binomial(A + a + j, j), (a, A, j)
