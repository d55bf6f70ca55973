# File: utils/ginvariant.py

import itertools
import logging
import math
from collections import Counter
from fractions import Fraction

from config.settings import get_enumeration_cap, get_perm_cap
from models.composition import BitSequence, Composition
from models.invariants import CatenaryData, SymbolCombination
from models.polynomial import BivariatePolynomial
from utils.errors import CapExceededError, IntegralityError
from utils.filters import coefficient_c, dominates, enumerate_filter
from utils.lattice import flat_lattice
from utils.tau import syzygy_term, tutte_uniform

logger = logging.getLogger(__name__)


# --- Specialization ---
def _add_shifted(shifted, bits, weight):
    """Adds weight * sum_m binom(n,m) X^{r-w_m} Y^{m-w_m} into shifted, with X = x-1, Y = y-1."""
    n, r = bits.n, bits.r
    for m, w in enumerate(bits.prefix_weights()):
        key = (r - w, m - w)
        shifted[key] = shifted.get(key, 0) + weight * math.comb(n, m)


def specialize_symbol(bits):
    """
    Image of the symbol [b] under the specialization to Tutte polynomials.

    Returns:
        BivariatePolynomial: (1/n!) sum_m binom(n,m) (x-1)^{r-wt_m} (y-1)^{m-wt_m}.
    """
    shifted = {}
    _add_shifted(shifted, bits, Fraction(1, math.factorial(bits.n)))
    return BivariatePolynomial(shifted).shift(-1, -1)


def specialize(combination):
    """Linear extension of specialize_symbol; the change of basis is done once for the whole sum."""
    shifted = {}
    scale = Fraction(1, math.factorial(combination.n))
    for bits, c in combination.items():
        _add_shifted(shifted, bits, c * scale)
    return BivariatePolynomial(shifted).shift(-1, -1)


def syzygy_expansion(bits):
    """
    Rebuilds [b] from [1^r 0^(n-r)] by moving the ones right one place at a time.

    Each move of the (k+1)-th one from position m to m+1 adds syzygy_term(k, m, r, n),
    so the result equals specialize_symbol(b).
    """
    n, r = bits.n, bits.r
    poly = tutte_uniform(r, n).scale(Fraction(1, math.factorial(n)))
    for k, position in enumerate(bits.positions()):
        for m in range(k + 1, position):
            poly = poly + syzygy_term(k, m, r, n)
    return poly


def symbol_mobius_value(bits):
    """
    The value [b; 1, 0] of a specialized symbol.

    For b starting with a one the closed form is
    (-1)^{n-r+a_r-1} binom(n-1, a_r-1) / n!; otherwise the specialization is evaluated.
    """
    a = bits.to_composition()
    if a.a0 > 0 or a.r == 0:
        return specialize_symbol(bits).evaluate(1, 0)
    n, r, last = a.n, a.r, a[a.r]
    return Fraction((-1) ** (n - r + last - 1) * math.comb(n - 1, last - 1), math.factorial(n))


# --- Gamma basis ---
def gamma_symbols(a, cap=None):
    """
    Symbol expansion of gamma(a): a! times the sum of c(s)[b] over the principal filter of a.

    Raises:
        CapExceededError: When n exceeds the enumeration cap.
    """
    weight = a.factorial()
    coefficients = {}
    for bits, s in enumerate_filter(a, cap):
        coefficients[bits] = weight * coefficient_c(a, s)
    return SymbolCombination(a.n, a.r, coefficients)


def _falling(t, k):
    out = 1
    for i in range(k):
        out *= t - i
    return out


def gamma_falling_factorial(a, cap=None):
    """
    gamma(a) from falling factorials, summed over every (n,r)-sequence b:

    (a_0)_{b_0} prod_{j>=1} a_j (a_j - 1 + xi_{j-1}(a) - xi_{j-1}(b))_{b_j - 1}.

    Sequences that do not dominate a contribute nothing and are skipped.
    """
    cap = get_enumeration_cap() if cap is None else cap
    if a.n > cap:
        raise CapExceededError(
            f"falling-factorial expansion refused for n = {a.n} > cap {cap}",
            hint="gamma_symbols or a larger enumeration cap",
        )
    base = a.to_bits()
    xi_a = a.partial_sums()
    coefficients = {}
    for bits in BitSequence.all(a.n, a.r):
        if not dominates(bits, base):
            continue
        b = bits.to_composition()
        xi_b = b.partial_sums()
        value = _falling(a.a0, b.a0)
        for j in range(1, a.r + 1):
            value *= a[j] * _falling(a[j] - 1 + xi_a[j - 1] - xi_b[j - 1], b[j] - 1)
        if value:
            coefficients[bits] = value
    return SymbolCombination(a.n, a.r, coefficients)


# --- Catenary data ---
def catenary_data(matroid, cap=None):
    """
    Counts maximal chains of flats by their size increments.

    Suffix counts are memoized per flat and filled from the top of the lattice
    down, so the cost follows the number of covers rather than the number of
    chains.

    Returns:
        CatenaryData: composition (|cl(empty)|, increments...) -> number of chains.
    """
    lattice = flat_lattice(matroid, cap)
    size = {f.mask: f.size for f in lattice.flats()}
    suffixes = {lattice.top.mask: Counter({(): 1})}
    for layer in reversed(lattice.layers[:-1]):
        for flat in layer:
            here = Counter()
            for up in lattice.covers[flat.mask]:
                step = size[up] - flat.size
                for tail, count in suffixes[up].items():
                    here[(step,) + tail] += count
            suffixes[flat.mask] = here
    bottom = lattice.bottom
    counts = {
        Composition((bottom.size,) + tail): count
        for tail, count in suffixes[bottom.mask].items()
    }
    data = CatenaryData(matroid.n, matroid.r, counts)
    logger.info(
        "Catenary data computed successfully: %d compositions, %d flags.",
        len(data), data.total_flags(),
    )
    return data


def truncated_catenary(data, s):
    """
    Catenary data of the truncation to rank s.

    Each a is sent to (a_0, ..., a_{s-1}, a_{s:r}) with weight nu(M; a) / nu(0, a_s, ..., a_r).

    Raises:
        ValueError: Unless 0 <= s <= r.
        IntegralityError: If an aggregated count is not an integer.
    """
    if not 0 <= s <= data.r:
        raise ValueError(f"truncation rank {s} outside 0..{data.r}")
    if s == 0:
        return CatenaryData(data.n, 0, {Composition((data.n,)): 1})
    totals = {}
    for a, count in data.items():
        head = a.parts[:s] + (a.range_sum(s, a.r),)
        tail = Composition((0,) + a.parts[s:])
        key = Composition(head)
        totals[key] = totals.get(key, Fraction(0)) + Fraction(count) / tail.nu()
    for key, value in totals.items():
        if value.denominator != 1:
            raise IntegralityError(f"truncated flag count {value} for {key} is not an integer")
    return CatenaryData(data.n, s, {key: int(value) for key, value in totals.items()})


def diptych(data):
    """Returns (sum nu(M;a)/nu(a), sum nu(M;a)/nu(reversed a)); 1 and mu(M) for loopless M."""
    front = data.weighted_sum(lambda a: 1 / a.nu())
    back = data.weighted_sum(lambda a: 1 / a.reversed().nu())
    return front, back


# --- G-invariant ---
def g_invariant_perm(matroid, cap=None):
    """
    Sum of the rank sequences [r(pi)] over all n! orderings of the ground set.

    Raises:
        CapExceededError: When n exceeds the permutation cap.
    """
    cap = get_perm_cap() if cap is None else cap
    if matroid.n > cap:
        raise CapExceededError(
            f"permutation walk refused for n = {matroid.n} > cap {cap}",
            hint="g_invariant_catenary",
        )
    counts = Counter()
    for order in itertools.permutations(range(matroid.n)):
        mask, previous, bits = 0, matroid.rank(0), []
        for e in order:
            mask |= 1 << e
            current = matroid.rank(mask)
            bits.append(current - previous)
            previous = current
        counts[BitSequence(tuple(bits))] += 1
    return SymbolCombination(matroid.n, matroid.r, counts)


def g_invariant_catenary(matroid, cap=None):
    """Sum over the catenary data of nu(M; a) gamma(a)."""
    total = SymbolCombination(matroid.n, matroid.r)
    for a, count in catenary_data(matroid).items():
        total = total + gamma_symbols(a, cap).scaled(count)
    return total


def tutte_via_sp(matroid, cap=None):
    """Specializes the catenary G-invariant to the Tutte polynomial."""
    poly = specialize(g_invariant_catenary(matroid, cap))
    logger.info("Tutte polynomial computed successfully by specialization for %s.", matroid.provenance)
    return poly
