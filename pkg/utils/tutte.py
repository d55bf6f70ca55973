# File: utils/tutte.py

import logging
from collections import Counter

from joblib import Parallel, delayed

from config.settings import get_max_direct_n, get_memo_cap, get_threads
from models.polynomial import ONE, X, Y, BivariatePolynomial
from utils.errors import CapExceededError
from utils.lattice import lattice_mobius_invariant

logger = logging.getLogger(__name__)

# Below this ground-set size the sweep stays in-process.
PARALLEL_MIN_N = 14


def _sweep(matroid, states, start):
    """Adds elements start..n-1 to every partial subset, tracking (closure, size) only."""
    for e in range(start, matroid.n):
        bit = 1 << e
        grown = Counter()
        for (flat, size), count in states.items():
            grown[(flat, size)] += count
            target = flat if flat & bit else matroid.closure(flat | bit)
            grown[(target, size + 1)] += count
        states = grown
    return states


def corank_nullity_counts(matroid, threads=None):
    """
    Counts subsets by (rank, size).

    For n >= PARALLEL_MIN_N the first few elements are split into prefix
    chunks that joblib sweeps in separate worker processes; chunk Counters are
    summed, so the result does not depend on the schedule.

    Returns:
        Counter: (rank, size) -> number of subsets.
    """
    threads = get_threads() if threads is None else max(1, threads)
    if matroid.n < PARALLEL_MIN_N:
        threads = 1
    depth = 0 if threads == 1 else min(matroid.n, (4 * threads - 1).bit_length())
    prefixes = [
        Counter({(matroid.closure(mask), mask.bit_count()): 1})
        for mask in range(1 << depth)
    ]
    chunks = Parallel(n_jobs=threads)(delayed(_sweep)(matroid, states, depth) for states in prefixes)
    total = Counter()
    for chunk in chunks:
        total.update(chunk)
    counts = Counter()
    for (flat, size), count in total.items():
        counts[(matroid.rank(flat), size)] += count
    return counts


def tutte_direct(matroid, threads=None, cap=None):
    """
    Tutte polynomial from the corank-nullity sum over all 2^n subsets.

    Args:
        matroid (Matroid): The matroid.
        threads (int, optional): Worker processes; defaults to the configured count.
        cap (int, optional): Largest n accepted; defaults to the configured cap.

    Returns:
        BivariatePolynomial: T(M; x, y).

    Raises:
        CapExceededError: When n exceeds the cap.
    """
    cap = get_max_direct_n() if cap is None else cap
    if matroid.n > cap:
        raise CapExceededError(
            f"direct enumeration refused for n = {matroid.n} > cap {cap}",
            hint="--method frame or --method delcon",
        )
    r = matroid.r
    shifted = {}
    for (rank, size), count in corank_nullity_counts(matroid, threads).items():
        key = (r - rank, size - rank)
        shifted[key] = shifted.get(key, 0) + count
    poly = BivariatePolynomial(shifted).shift(-1, -1)
    logger.info("Tutte polynomial computed successfully by direct sum for %s.", matroid.provenance)
    return poly


def tutte_deletion_contraction(matroid, memo_cap=None):
    """
    Tutte polynomial by deletion and contraction of elements 1, ..., n in turn.

    After the first i elements are deleted or contracted, the minor only
    depends on the closure of the contracted set, so the memo is keyed on
    (i, flat).

    Raises:
        CapExceededError: When the memo grows past memo_cap entries.
    """
    memo_cap = get_memo_cap() if memo_cap is None else memo_cap
    n = matroid.n
    rest = [matroid.ground & ~((1 << i) - 1) for i in range(n + 1)]
    memo = {}

    def solve(i, flat):
        if i == n:
            return ONE
        key = (i, flat)
        cached = memo.get(key)
        if cached is not None:
            return cached
        bit = 1 << i
        if flat & bit:
            value = Y * solve(i + 1, flat)
        elif matroid.rank(rest[i + 1] | flat) < matroid.rank(rest[i] | flat):
            value = X * solve(i + 1, matroid.closure(flat | bit))
        else:
            value = solve(i + 1, flat) + solve(i + 1, matroid.closure(flat | bit))
        if len(memo) >= memo_cap:
            raise CapExceededError(
                f"deletion-contraction memo passed {memo_cap} entries",
                hint="a larger memo cap or --method frame",
            )
        memo[key] = value
        return value

    poly = solve(0, matroid.closure(0))
    logger.info(
        "Tutte polynomial computed successfully by deletion-contraction for %s (%d memo entries).",
        matroid.provenance, len(memo),
    )
    return poly


def mobius_invariant(matroid):
    """T(M; 1, 0); 0 when M has loops. Large n falls back to the lattice of flats."""
    if not matroid.is_loopless():
        return 0
    if matroid.n <= get_max_direct_n():
        return int(tutte_direct(matroid).evaluate(1, 0))
    return lattice_mobius_invariant(matroid)
