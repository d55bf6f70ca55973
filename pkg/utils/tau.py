# File: utils/tau.py

import functools
import math
from fractions import Fraction

from models.polynomial import SYZYGY, BivariatePolynomial
from utils.errors import NotDivisibleError


@functools.lru_cache(maxsize=None)
def tau(d, alpha):
    """
    Truncated binomial series in y.

    Returns 0 when d <= 0 or alpha < 0, otherwise
    sum_{i=0}^{alpha} binom(alpha + d - 1 - i, alpha - i) y^i.
    """
    if d <= 0 or alpha < 0:
        return BivariatePolynomial()
    return BivariatePolynomial(
        {(0, i): math.comb(alpha + d - 1 - i, alpha - i) for i in range(alpha + 1)}
    )


def tau_binomial_form(d, alpha):
    """Returns sum_{s=0}^{alpha} binom(alpha + d, alpha - s) (y - 1)^s, expanded."""
    if d < 1 or alpha < 0:
        raise ValueError(f"tau_binomial_form needs d >= 1 and alpha >= 0, got ({d}, {alpha})")
    shifted = BivariatePolynomial(
        {(0, s): math.comb(alpha + d, alpha - s) for s in range(alpha + 1)}
    )
    return shifted.shift(0, -1)


@functools.lru_cache(maxsize=None)
def tutte_uniform(r, n):
    """
    Tutte polynomial of U_{r,n} from its corank-nullity expansion.

    sum_{i=0}^{r} binom(n, i) (x-1)^{r-i} + sum_{j=r+1}^{n} binom(n, j) (y-1)^{j-r}.
    """
    if r < 0 or n < 0 or r > n:
        raise ValueError(f"U_{{{r},{n}}} needs 0 <= r <= n")
    shifted = {}
    for i in range(r + 1):
        shifted[(r - i, 0)] = math.comb(n, i)
    for j in range(r + 1, n + 1):
        shifted[(0, j - r)] = math.comb(n, j)
    return BivariatePolynomial(shifted).shift(-1, -1)


def syzygy_term(k, m, r, n):
    """
    (xy - x - y)(x-1)^{r-k-1}(y-1)^{m-k-1} / (m! (n-m)!).

    This is [b'] - [b] for two (n,r)-sequences that agree except that the
    (k+1)-th one sits at position m in b and at m+1 in b'.
    """
    if not (0 <= k < r and k + 1 <= m < n):
        raise ValueError(f"syzygy term out of range: k={k}, m={m}, r={r}, n={n}")
    factor = BivariatePolynomial.monomial(r - k - 1, m - k - 1).shift(-1, -1)
    return (SYZYGY * factor).scale(Fraction(1, math.factorial(m) * math.factorial(n - m)))


def divide_by_syzygy(p):
    """
    Exact division by xy - x - y.

    Long division on the leading term xy in graded order (total degree, then
    x-degree). Every leading monomial must have both exponents at least 1.

    Raises:
        NotDivisibleError: When a remainder is left.
    """
    remainder = dict(p.terms())
    quotient = {}
    while remainder:
        i, j = max(remainder, key=lambda key: (key[0] + key[1], key[0]))
        c = remainder[(i, j)]
        if i < 1 or j < 1:
            raise NotDivisibleError(
                f"x^{i} y^{j} cannot be divided by xy - x - y",
                remainder=BivariatePolynomial(remainder),
            )
        quotient[(i - 1, j - 1)] = c
        # subtract c x^{i-1} y^{j-1} (xy - x - y)
        for key, delta in (((i, j), -c), ((i, j - 1), c), ((i - 1, j), c)):
            value = remainder.get(key, 0) + delta
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return BivariatePolynomial(quotient)


def uniform_tau_constant(r, n):
    """Returns tau(n-r, r; x) + tau(r, n-r; y) - T(U_{r,n}); a constant when 0 < r < n."""
    tau_x = BivariatePolynomial({(j, 0): c for (_, j), c in tau(n - r, r).items()})
    return tau_x + tau(r, n - r) - tutte_uniform(r, n)

