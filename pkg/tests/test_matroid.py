# File: tests/test_matroid.py

import itertools
import random

import pytest
import sympy
from sympy.polys.matrices import DomainMatrix

from models.polynomial import X, Y
from utils.errors import CapExceededError, MatroidSpecError
from utils.lattice import (
    flat_lattice,
    flats_by_rank,
    lattice_mobius_invariant,
    mobius_from,
    truncated_contraction_mobius,
)
from utils.matroid_dsl import canonical_spec, construct
from utils.tutte import (
    PARALLEL_MIN_N,
    corank_nullity_counts,
    mobius_invariant,
    tutte_deletion_contraction,
    tutte_direct,
)

H33 = "sum(multipoint:0;3|line:3,1,1)"

SMALL_ZOO = [
    "uniform:1,2",
    "uniform:2,4",
    "uniform:3,6",
    "pg:2,2",
    "complete:4",
    "complete:5",
    "echelon:110100",
    "echelon:1000110000",
    "multipoint:2;1,3",
    "line:3,1,1",
    "graphic:[(1,2);(2,3);(1,3);(3,4);(4,4)]",
    "bases:4,2,{1 2; 1 3; 1 4; 2 3; 2 4}",
    H33,
]


# --- Construction ---
def test_projective_plane_over_three():
    m = construct("pg:2,3")
    assert (m.n, m.r) == (13, 3)
    lines = flats_by_rank(m)[2]
    assert len(lines) == 13
    assert all(flat.size == 4 for flat in lines)


def test_complete_graph_size():
    m = construct("complete:7")
    assert (m.n, m.r) == (21, 6)


def test_echelon_matroid():
    m = construct("echelon:1000110000")
    assert (m.n, m.r) == (10, 3)
    assert m.closure(m.mask_of([1])) == m.mask_of([1, 2, 3, 4])
    assert m.rank(m.mask_of([1, 5])) == 2


def test_spec_whitespace():
    assert canonical_spec(" uniform: 2, 4 ") == "uniform:2,4"
    assert canonical_spec("bases:3,2,{1 2; 1  3}") == "bases:3,2,{1 2;1 3}"
    assert construct("sum( uniform:1,2 | uniform:0,1 )").provenance == "sum(uniform:1,2|uniform:0,1)"


@pytest.mark.parametrize("spec", [
    "pg:2,4",
    "uniform:3",
    "uniform:4,3",
    "bogus:1",
    "uniform",
    "sum(uniform:1,2|)",
    "sum(uniform:1,2|uniform:1,2",
    "echelon:1020",
    "bases:4,2,{1 2; 3 4}",
    "bases:3,2,{1 5}",
    "graphic:[(1,2);1,3]",
    "multipoint:0;",
])
def test_bad_specs(spec):
    with pytest.raises(MatroidSpecError):
        construct(spec)


@pytest.mark.parametrize("spec", [s for s in SMALL_ZOO if construct(s).n <= 8])
def test_rank_axioms(spec):
    m = construct(spec)
    masks = range(1 << m.n)
    for a in masks:
        assert 0 <= m.rank(a) <= a.bit_count()
        for e in range(m.n):
            assert m.rank(a) <= m.rank(a | 1 << e) <= m.rank(a) + 1
    for a, b in itertools.combinations(masks, 2):
        assert m.rank(a) + m.rank(b) >= m.rank(a | b) + m.rank(a & b)


@pytest.mark.parametrize("spec", [
    "complete:5",
    "echelon:1000110000",
    "pg:2,3",
    "pg:3,2",
    "sum(multipoint:0;5|line:3,1,1)",
])
def test_rank_axioms_on_random_triples(spec):
    m = construct(spec)
    rng = random.Random(spec)
    for _ in range(10_000):
        a, b, c = (rng.getrandbits(m.n) for _ in range(3))
        assert 0 <= m.rank(a) <= a.bit_count()
        assert m.rank(a & b) <= m.rank(a) <= m.rank(a | c)
        assert m.rank(a) + m.rank(b) >= m.rank(a | b) + m.rank(a & b)


# --- Closure and flats ---
def test_closure():
    m = construct("pg:2,3")
    assert m.closure(0) == 0
    line = m.closure(m.mask_of([1, 2]))
    assert line.bit_count() == 4
    outside = next(e for e in range(m.n) if not line >> e & 1)
    assert m.closure(line | 1 << outside) == m.ground


@pytest.mark.parametrize("spec, counts", [
    ("pg:2,2", [1, 7, 7, 1]),
    ("uniform:3,5", [1, 5, 10, 1]),
    ("sum(" + "|".join(["uniform:1,2"] * 4) + ")", [1, 4, 6, 4, 1]),
])
def test_flat_counts(spec, counts):
    assert [len(layer) for layer in flat_lattice(construct(spec)).layers] == counts


def test_flats_are_closed():
    for spec in SMALL_ZOO:
        m = construct(spec)
        for flat in flat_lattice(m).flats():
            assert m.is_flat(flat.mask)
            assert m.rank(flat.mask) == flat.rank


def test_parallel_pairs_flats():
    m = construct("sum(" + "|".join(["uniform:1,2"] * 8) + ")")
    for k, layer in flats_by_rank(m).items():
        assert all(flat.size == 2 * k for flat in layer)


def test_flat_cap():
    with pytest.raises(CapExceededError):
        flat_lattice(construct("pg:2,3"), cap=5)


# --- Minors ---
def test_contract_line_of_plane():
    m = construct("pg:2,3")
    line = m.closure(m.mask_of([1, 2]))
    minor = m.contract(line)
    assert (minor.n, minor.r) == (9, 1)
    assert minor.is_loopless()


def test_truncation():
    m = construct("pg:2,3")
    assert all(m.truncate(0).rank(a) == m.rank(a) for a in range(0, 1 << 13, 37))
    assert m.truncate(1).r == 2
    with pytest.raises(ValueError):
        m.truncate(4)


def test_restrict_to_flat():
    m = construct(H33)
    flat = next(f for f in flats_by_rank(m)[2] if f.size == 4)
    minor = m.restrict(flat.mask)
    assert (minor.n, minor.r) == (4, 2)


# --- Tutte polynomials ---
def test_small_tutte_polynomials():
    assert tutte_direct(construct("uniform:2,3")) == X ** 2 + X + Y
    assert tutte_direct(construct("uniform:2,4")) == X ** 2 + 2 * X + 2 * Y + Y ** 2
    assert tutte_direct(construct("sum(uniform:0,1|uniform:1,1)")) == X * Y


def test_appendix_direct_sum():
    expected = (X + Y + Y ** 2) * (X ** 2 + X * (1 + Y + Y ** 2) + Y + Y ** 2 + Y ** 3)
    assert tutte_direct(construct(H33)) == expected


@pytest.mark.parametrize("spec", SMALL_ZOO)
def test_deletion_contraction_agrees(spec):
    m = construct(spec)
    assert tutte_deletion_contraction(m) == tutte_direct(m)


def test_deletion_contraction_base_cases():
    assert tutte_deletion_contraction(construct("sum(uniform:0,1|uniform:1,1)")) == X * Y
    assert tutte_deletion_contraction(construct("uniform:2,4")) == X ** 2 + 2 * X + 2 * Y + Y ** 2


def test_direct_sum_multiplies():
    pairs = [("uniform:1,2", "pg:2,2"), ("complete:4", "line:3,1,1"), ("uniform:0,2", "uniform:2,3")]
    for left, right in pairs:
        total = tutte_direct(construct(f"sum({left}|{right})"))
        assert total == tutte_direct(construct(left)) * tutte_direct(construct(right))


def test_loop_multiplies_by_y():
    for spec in ["pg:2,2", "complete:4", "echelon:110100"]:
        looped = construct(f"sum(uniform:0,1|{spec})")
        assert tutte_direct(looped) == Y * tutte_direct(construct(spec))


def test_worker_count_does_not_change_result():
    small = construct("complete:5")
    assert tutte_direct(small, threads=1) == tutte_direct(small, threads=3)
    m = construct("complete:6")
    assert m.n >= PARALLEL_MIN_N
    assert corank_nullity_counts(m, threads=1) == corank_nullity_counts(m, threads=4)
    assert corank_nullity_counts(m, threads=4)[(m.r, m.n)] == 1


def test_caps():
    with pytest.raises(CapExceededError) as info:
        tutte_direct(construct("uniform:2,30"))
    assert "--method" in str(info.value)
    with pytest.raises(CapExceededError):
        tutte_deletion_contraction(construct("complete:5"), memo_cap=3)


# --- Moebius invariant ---
@pytest.mark.parametrize("spec, value", [
    ("uniform:3,13", 66),
    ("pg:2,3", 27),
    ("pg:2,2", 8),
    ("complete:4", 6),
    ("multipoint:1;2,2", 0),
])
def test_mobius_invariant(spec, value):
    assert mobius_invariant(construct(spec)) == value


def test_lattice_mobius_matches_evaluation():
    for spec in SMALL_ZOO:
        m = construct(spec)
        assert lattice_mobius_invariant(m) == mobius_invariant(m)


def test_mobius_function_on_a_line():
    lattice = flat_lattice(construct("line:3,1,1"))
    values = mobius_from(lattice, lattice.bottom)
    assert values[lattice.bottom.mask] == 1
    assert all(values[flat.mask] == -1 for flat in lattice.layers[1])
    assert values[lattice.top.mask] == 2


def test_truncated_contraction_range():
    lattice = flat_lattice(construct("pg:2,2"))
    with pytest.raises(ValueError):
        truncated_contraction_mobius(lattice, lattice.layers[1][0], 3)
    point = lattice.layers[1][0]
    assert truncated_contraction_mobius(lattice, point, 1) == 1
    assert truncated_contraction_mobius(lattice, point, 2) == 2


def test_vector_rank_matches_sympy():
    field = sympy.GF(3)
    m = construct("pg:2,3")
    rng = random.Random(3)
    for _ in range(60):
        elements = [e for e in range(m.n) if rng.random() < 0.3] or [0]
        rows = [[field(c) for c in m.vectors[e]] for e in elements]
        matrix = DomainMatrix(rows, (len(rows), 3), field)
        assert m.rank(sum(1 << e for e in elements)) == matrix.rank()
