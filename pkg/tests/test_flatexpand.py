# File: tests/test_flatexpand.py

from fractions import Fraction

import pytest

from models.polynomial import SYZYGY, X
from models.tensor import FlatTensor
from utils.errors import NotDivisibleError, ResidualError
from utils.flatexpand import (
    calibrate_mobius_route,
    flat_tensor,
    flat_tensor_mobius,
    mobius_recursions,
    recover_F,
    total_F,
    tutte_from_ftableau,
    tutte_from_tensor,
)
from utils.matroid_dsl import construct
from utils.tau import divide_by_syzygy, tutte_uniform
from utils.tutte import tutte_direct

H33 = "sum(multipoint:0;3|line:3,1,1)"
PAIRS = "sum(" + "|".join(["uniform:1,2"] * 8) + ")"

LOOPLESS = [
    "uniform:2,4",
    "uniform:3,7",
    "pg:2,2",
    "pg:2,3",
    "complete:4",
    "complete:5",
    "echelon:1000110000",
    "echelon:1000101000",
    "line:3,1,1",
    H33,
]


# --- Flat tensors ---
def test_projective_plane_tensor():
    tensor = flat_tensor(construct("pg:2,3"))
    assert tensor.principal_items() == [((2, 4, 0), 13)]
    ftableau = total_F(tensor)
    assert ftableau.items() == [((2, 2), 13)]


def test_direct_sum_tensor():
    tensor = flat_tensor(construct(H33))
    assert dict(tensor.principal_items()) == {
        (2, 6, 0): 1,
        (2, 5, 0): 1,
        (2, 4, 0): 2,
        (1, 3, 0): 2,
        (1, 3, 1): -3,
    }


def test_parallel_pairs_tensor():
    tensor = flat_tensor(construct(PAIRS))
    assert [tensor.get(4, 8, t) for t in range(4)] == [70, -210, 210, -70]
    assert tensor.flat_counts()[(4, 8)] == 70


@pytest.mark.parametrize("r, n", [(2, 5), (3, 7), (4, 9)])
def test_uniform_has_only_auxiliary_entries(r, n):
    tensor = flat_tensor(construct(f"uniform:{r},{n}"))
    assert tensor.principal_items() == []
    assert all(FlatTensor.is_auxiliary(key) for key, _ in tensor.items())
    assert tutte_from_tensor(tensor) == tutte_uniform(r, n)


def test_loops_are_refused():
    m = construct("multipoint:1;2,2")
    with pytest.raises(ValueError):
        flat_tensor(m)
    with pytest.raises(ValueError):
        flat_tensor_mobius(m)
    with pytest.raises(ValueError):
        mobius_recursions(m)


def test_mobius_route_is_calibrated():
    assert calibrate_mobius_route()


@pytest.mark.parametrize("spec", LOOPLESS)
def test_mobius_route_matches_catenary(spec):
    m = construct(spec)
    assert flat_tensor_mobius(m).entries == flat_tensor(m).entries


# --- Reconstruction ---
@pytest.mark.parametrize("spec", LOOPLESS)
def test_tensor_rebuilds_tutte(spec):
    m = construct(spec)
    tensor = flat_tensor(m)
    expected = tutte_direct(m)
    assert tutte_from_tensor(tensor) == expected
    assert tutte_from_ftableau(total_F(tensor)) == expected


@pytest.mark.parametrize("spec", LOOPLESS)
def test_recover_F(spec):
    m = construct(spec)
    assert recover_F(tutte_direct(m), m.n, m.r) == total_F(flat_tensor(m))


def test_recover_F_errors():
    with pytest.raises(NotDivisibleError):
        recover_F(tutte_uniform(2, 4) + X, 4, 2)
    with pytest.raises(ResidualError):
        recover_F(tutte_uniform(2, 4) + SYZYGY * (X - 1), 4, 2)
    with pytest.raises(ResidualError):
        recover_F(tutte_uniform(2, 4) + SYZYGY.scale(Fraction(1, 2)), 4, 2)


def test_same_shape_differences_are_syzygy_multiples():
    pairs = [("pg:2,2", "uniform:3,7"), ("complete:4", "uniform:3,6"), ("line:3,1,1", "uniform:2,5")]
    for left, right in pairs:
        difference = tutte_direct(construct(left)) - tutte_direct(construct(right))
        assert SYZYGY * divide_by_syzygy(difference) == difference


# --- Moebius recursions ---
def test_recursions_on_projective_plane():
    check = mobius_recursions(construct("pg:2,3"))
    assert (check.mobius, check.mobius_formula) == (27, 27)
    assert (check.bases, check.bases_formula) == (234, 234)
    assert check.holds


@pytest.mark.parametrize("spec", LOOPLESS)
def test_recursions_hold(spec):
    assert mobius_recursions(construct(spec)).holds


# --- Larger matroids ---
@pytest.mark.slow
def test_complete_graph_on_seven_vertices():
    tensor = flat_tensor(construct("complete:7"))
    assert tensor.get(4, 10, 0) == 21
    assert tensor.get(4, 10, 1) == -42
    assert tensor.get(5, 15, 0) == 7


@pytest.mark.slow
def test_projective_space_over_three():
    tensor = flat_tensor(construct("pg:3,3"))
    assert tensor.get(3, 13, 0) == 40
    assert tensor.get(2, 4, 0) == 130
    assert tensor.get(2, 4, 1) == -390
