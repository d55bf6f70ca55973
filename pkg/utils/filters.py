# File: utils/filters.py

import logging
import math

from config.settings import get_enumeration_cap
from models.composition import BitSequence, Composition, ShiftVector, SliceConstraint
from utils.errors import CapExceededError, CompositionError

logger = logging.getLogger(__name__)


def binomial(n, k):
    """
    Binomial coefficient extended to negative upper index.

    Zero for k < 0; (-1)^k binom(k - n - 1, k) for n < 0; math.comb otherwise.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return (-1) ** k * math.comb(k - n - 1, k)


def partial_sums(a):
    return a.partial_sums()


def _check_same_shape(t, u):
    if t.n != u.n or t.r != u.r:
        raise CompositionError(
            f"bit sequences differ in shape: ({t.n},{t.r}) vs ({u.n},{u.r})"
        )


def dominates(t, u):
    """Returns True when every prefix of t has at least the weight of the same prefix of u."""
    _check_same_shape(t, u)
    return all(wt >= wu for wt, wu in zip(t.prefix_weights(), u.prefix_weights()))


def shift_vector(b, a):
    """
    Returns the shift vector of b relative to the composition a, or None when b does not dominate a.

    The i-th one of b sits s_i places to the left of the i-th one of a.
    """
    base = a.to_bits()
    _check_same_shape(b, base)
    shifts = [q - p for p, q in zip(b.positions(), base.positions())]
    if any(s < 0 for s in shifts):
        return None
    return ShiftVector(tuple(shifts))


def box_contains(a, s):
    """Returns True when s_1 <= a_0 and s_i <= xi_{i-1} - i + 1 for i >= 2."""
    if len(s) != a.r:
        return False
    xi = a.partial_sums()
    return all(s[i] <= xi[i - 1] - i + 1 for i in range(1, a.r + 1))


def _check_cap(a, cap):
    cap = get_enumeration_cap() if cap is None else cap
    if a.n > cap:
        raise CapExceededError(
            f"filter enumeration refused for n = {a.n} > cap {cap}",
            hint="the closed-form route (gammabar_closed) or a larger enumeration cap",
        )


def enumerate_filter(a, cap=None):
    """
    Yields every (BitSequence, ShiftVector) with b dominating a, exactly once.

    Order is lexicographic on shift vectors with s_1 outermost. The one-bits
    keep their order, so s_1 <= a_0 and s_i <= a_{i-1} + s_{i-1} - 1.

    Args:
        a (Composition): Base of the principal filter.
        cap (int, optional): Largest n enumerated; defaults to the configured cap.
    """
    _check_cap(a, cap)
    base_positions = a.to_bits().positions()
    r, n = a.r, a.n

    def extend(prefix):
        i = len(prefix) + 1
        if i > r:
            bits = [0] * n
            for q, s in zip(base_positions, prefix):
                bits[q - s - 1] = 1
            yield BitSequence(tuple(bits)), ShiftVector(tuple(prefix))
            return
        upper = a[0] if i == 1 else a[i - 1] + prefix[-1] - 1
        for s in range(upper + 1):
            yield from extend(prefix + [s])

    yield from extend([])


def coefficient_c(a, s):
    """
    Returns c(s) = prod_{i=1..r} binom(a_i + s_i - 1, s_i).

    Raises:
        CompositionError: If s lies outside Box(a).
    """
    if not box_contains(a, s):
        raise CompositionError(f"shift vector {s} lies outside Box({a})")
    out = 1
    for i in range(1, a.r + 1):
        out *= binomial(a[i] + s[i] - 1, s[i])
    return out


def norm(a, constraint=None, cap=None):
    """Brute-force norm: the sum of c(s) over the filter elements satisfying the constraint."""
    constraint = constraint or SliceConstraint()
    constraint.check_rank(a.r)
    return sum(
        coefficient_c(a, s)
        for _, s in enumerate_filter(a, cap)
        if constraint.satisfied_by(s)
    )


def norm_closed(a):
    """Closed form of the unconstrained norm: binom(n, a_0) prod_{i=1}^{r-1} binom(a_{r:i} - 1, a_i - 1)."""
    out = math.comb(a.n, a.a0)
    for i in range(1, a.r):
        out *= math.comb(a.range_sum(i, a.r) - 1, a[i] - 1)
    return out


def filter_size(a, cap=None):
    return sum(1 for _ in enumerate_filter(a, cap))


def thickness(a):
    """Returns r minus the index of the first part that is not a single one (0 when a_0 > 0)."""
    if a.a0 > 0:
        return a.r
    for i in range(1, a.r + 1):
        if a[i] >= 2:
            return a.r - i
    return 0


def norm_recurse(a):
    """Right-hand side of the slice recursion on the first coordinate; needs r >= 2 and a_0 = 0."""
    if a.a0 != 0 or a.r < 2:
        raise CompositionError("the slice recursion needs a_0 = 0 and r >= 2")
    rest = a.parts[3:]
    return sum(
        binomial(a[2] + i - 1, i) * norm_closed(Composition((0, a[2] + i) + rest))
        for i in range(a[1])
    )


def norm_split(a, k, j):
    """
    Product form of the slice norm ||[a; s_{k+1} = j)|| for 1 <= k <= r - 1.

    The slice splits into the prefix slice on (0, a_1, ..., a_{k+1}) and the
    full filter of (0, a_{k+1} + j, a_{k+2}, ..., a_r).
    """
    if a.a0 != 0 or not 1 <= k <= a.r - 1:
        raise CompositionError(f"split index {k} out of range for {a}")
    prefix = Composition(a.parts[:k + 2])
    head = norm(prefix, SliceConstraint(((k + 1, "=", j),)))
    tail = norm_closed(Composition((0, a[k + 1] + j) + a.parts[k + 2:]))
    return head * tail
