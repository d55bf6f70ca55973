# File: utils/flatexpand.py

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from config.settings import get_max_direct_n
from models.polynomial import SYZYGY, X, BivariatePolynomial
from models.tensor import FlatTensor, FTableau
from utils.errors import CalibrationError, IntegralityError, ResidualError
from utils.frame import tripartition_coefficient, tutte_via_frame
from utils.ginvariant import catenary_data
from utils.lattice import flat_lattice, truncated_contraction_mobius
from utils.matroid_dsl import construct
from utils.tau import divide_by_syzygy, tau, tutte_uniform
from utils.tutte import mobius_invariant, tutte_direct

logger = logging.getLogger(__name__)

X_MINUS_ONE = X - 1

# Matroids on which the truncated-contraction route must agree with the catenary route.
CALIBRATION_SPECS = (
    "sum(" + "|".join(["uniform:1,2"] * 8) + ")",
    "sum(multipoint:0;3|line:3,1,1)",
    "complete:5",
)


def _require_loopless(matroid):
    if not matroid.is_loopless():
        raise ValueError(
            f"flat tensors need a loopless matroid; {matroid.provenance} has "
            f"{matroid.loops().bit_count()} loops"
        )


def flat_tensor(matroid, data=None):
    """
    Signed flat numbers from the catenary data.

    f^t_{k,m} = (-1)^t sum over a with a_1 + ... + a_k = m of nu(M; a) f_{k+t,k}(a),
    for 1 <= k <= r - 1 and 0 <= t <= r - k - 1. Entries with m = k are kept.

    Raises:
        ValueError: When the matroid has loops.
        IntegralityError: If an aggregate is not an integer.
    """
    _require_loopless(matroid)
    data = catenary_data(matroid) if data is None else data
    r = data.r
    sums = {}
    for a, count in data.items():
        xi = a.partial_sums()
        for k in range(1, r):
            for t in range(r - k):
                key = (k, xi[k], t)
                sums[key] = sums.get(key, Fraction(0)) + count * tripartition_coefficient(a, k, t)
    entries = {}
    for (k, m, t), value in sums.items():
        if value.denominator != 1:
            raise IntegralityError(f"flat aggregate for (k={k}, m={m}, t={t}) is {value}")
        if value:
            entries[(k, m, t)] = (-1) ** t * int(value)
    tensor = FlatTensor(data.n, r, entries)
    logger.info("Flat tensor computed successfully: %d entries.", len(entries))
    return tensor


def _mobius_entries(matroid):
    lattice = flat_lattice(matroid)
    r = matroid.r
    entries = {}
    for k in range(1, r):
        for flat in lattice.layers[k]:
            for t in range(r - k):
                key = (k, flat.size, t)
                value = truncated_contraction_mobius(lattice, flat, t + 1)
                entries[key] = entries.get(key, 0) + (-1) ** t * value
    return FlatTensor(matroid.n, r, {key: v for key, v in entries.items() if v})


@functools.lru_cache(maxsize=1)
def calibrate_mobius_route():
    """
    Checks the truncated-contraction route against the catenary route once per process.

    Raises:
        CalibrationError: On the first disagreement.
    """
    for spec in CALIBRATION_SPECS:
        matroid = construct(spec)
        expected = flat_tensor(matroid)
        found = _mobius_entries(matroid)
        if found.entries != expected.entries:
            raise CalibrationError(
                f"Moebius route disagrees on {spec}: {found.entries} vs {expected.entries}"
            )
    logger.info("Moebius route calibrated successfully on %d matroids.", len(CALIBRATION_SPECS))
    return True


def flat_tensor_mobius(matroid):
    """
    Flat numbers from Moebius invariants of truncated contractions:

    f^t_{k,m} = (-1)^t sum over rank-k, size-m flats X of mu(M/X truncated to rank t+1).
    """
    _require_loopless(matroid)
    calibrate_mobius_route()
    return _mobius_entries(matroid)


def total_F(tensor):
    """Collapses f^t_{k,m} to F_{ij} with i = k + t and j = m - k - t, keeping j >= 1."""
    entries = {}
    for (k, m, t), value in tensor.items():
        i, j = k + t, m - k - t
        if j < 1:
            continue
        entries[(i, j)] = entries.get((i, j), 0) + value
    return FTableau(tensor.n, tensor.r, {key: v for key, v in entries.items() if v})


def tutte_from_tensor(tensor):
    """T(U_{r,n}) + (xy - x - y) sum f^t_{k,m} (x-1)^{r-k-t-1} tau(k+t+1, m-k-t-1)."""
    inner = BivariatePolynomial()
    for (k, m, t), value in tensor.items():
        term = tau(k + t + 1, m - k - t - 1)
        if term:
            inner = inner + X_MINUS_ONE ** (tensor.r - k - t - 1) * term * value
    return tutte_uniform(tensor.r, tensor.n) + SYZYGY * inner


def tutte_from_ftableau(ftableau):
    """T(U_{r,n}) + (xy - x - y) sum F_{ij} (x-1)^{r-i-1} tau(i+1, j-1)."""
    inner = BivariatePolynomial()
    for (i, j), value in ftableau.items():
        inner = inner + X_MINUS_ONE ** (ftableau.r - i - 1) * tau(i + 1, j - 1) * value
    return tutte_uniform(ftableau.r, ftableau.n) + SYZYGY * inner


def recover_F(poly, n, r):
    """
    F-tableau of a loopless (n, r)-matroid from its Tutte polynomial.

    After removing T(U_{r,n}) and dividing by xy - x - y, the quotient is
    rewritten in powers of x - 1. The y-part of (x-1)^p is peeled against the
    monic polynomials tau(r-p, j-1), highest y-degree first.

    Raises:
        NotDivisibleError: When the difference is not a multiple of xy - x - y.
        ResidualError: When the quotient is not an integer tau expansion.
    """
    quotient = divide_by_syzygy(poly - tutte_uniform(r, n)).shift(1, 0)
    rows = {}
    for (p, j), c in quotient.items():
        rows.setdefault(p, {})[j] = c
    entries = {}
    for p in sorted(rows, reverse=True):
        i = r - 1 - p
        row = {j: c for j, c in rows[p].items() if c}
        if row and i < 1:
            raise ResidualError(f"(x-1)^{p} term left over for rank {r}")
        while row:
            top = max(row)
            c = row[top]
            if c.denominator != 1:
                raise ResidualError(f"non-integer coefficient {c} at (x-1)^{p} y^{top}")
            entries[(i, top + 1)] = int(c)
            for (_, jj), cc in tau(i + 1, top).items():
                value = row.get(jj, 0) - c * cc
                if value:
                    row[jj] = value
                else:
                    row.pop(jj, None)
    return FTableau(n, r, entries)


@dataclass(frozen=True)
class RecursionCheck:
    """
    Both sides of the x = 1 specializations of the flat expansion.

    Args:
        mobius (int): mu(M) computed directly.
        mobius_formula (int): binom(n-1, r-1) - sum f^t_{k,m} binom(m-1, r-1) over k + t = r - 1.
        bases (int): T(M; 1, 1) computed directly.
        bases_formula (int): binom(n, r) - sum f^t_{k,m} binom(m, r) over k + t = r - 1.
    """
    mobius: int
    mobius_formula: int
    bases: int
    bases_formula: int

    @property
    def holds(self):
        return self.mobius == self.mobius_formula and self.bases == self.bases_formula


def mobius_recursions(matroid, tensor=None):
    """Evaluates both recursions for a loopless matroid of rank at least 1."""
    _require_loopless(matroid)
    tensor = flat_tensor(matroid) if tensor is None else tensor
    n, r = tensor.n, tensor.r
    mobius_formula = math.comb(n - 1, r - 1)
    bases_formula = math.comb(n, r)
    for (k, m, t), value in tensor.items():
        if k + t == r - 1:
            mobius_formula -= value * math.comb(m - 1, r - 1)
            bases_formula -= value * math.comb(m, r)
    if matroid.n <= get_max_direct_n():
        bases = tutte_direct(matroid).evaluate(1, 1)
    else:
        bases = tutte_via_frame(matroid).evaluate(1, 1)
    return RecursionCheck(mobius_invariant(matroid), mobius_formula, int(bases), bases_formula)
