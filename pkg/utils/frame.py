# File: utils/frame.py

import functools
import logging
import math
from fractions import Fraction

from models.coefficients import FrameCoefficients
from models.composition import Composition
from models.polynomial import SYZYGY, X, Y, BivariatePolynomial
from utils.errors import CompositionError
from utils.filters import coefficient_c, enumerate_filter, norm_closed
from utils.ginvariant import catenary_data, gamma_symbols, specialize
from utils.tau import tau, tutte_uniform

logger = logging.getLogger(__name__)

X_MINUS_ONE = X - 1


# --- Coefficients ---
def _nu_of(parts):
    return Composition((0,) + tuple(parts)).nu()


def multiplier(a, k, h):
    """
    Moebius multiplier m_{k,k-h}(a) for 1 <= h <= k - 1 and k <= r - 1:

    prod_{i<h} a_{r:k+1-i} / prod_{i<h} a_{k-i:k-h+1}.
    """
    if not (1 <= h <= k - 1 and k <= a.r - 1):
        raise CompositionError(f"m_{{{k},{k - h}}} is undefined for rank {a.r}")
    top, bottom = 1, 1
    for i in range(h):
        top *= a.range_sum(k + 1 - i, a.r)
        bottom *= a.range_sum(k - h + 1, k - i)
    return Fraction(top, bottom)


@functools.lru_cache(maxsize=4096)
def frame_coefficients(a):
    """
    nu, f_k, multipliers and interior coefficients of a composition; a_0 is ignored.

    Args:
        a (Composition): The composition.

    Returns:
        FrameCoefficients: f_k = 1 / (nu(0, a_1..a_k) nu(0, a_{k+1}..a_r)) for
        1 <= k <= r, and f_{k,k-h} = m_{k,k-h} f_{k-h} for 1 <= k <= r - 1.
    """
    parts = a.parts[1:]
    nu = a.nu()
    f = {a.r: 1 / nu}
    for k in range(1, a.r):
        f[k] = 1 / (_nu_of(parts[:k]) * _nu_of(parts[k:]))
    multipliers = {}
    interior = {}
    for k in range(1, a.r):
        interior[(k, 0)] = f[k]
        for h in range(1, k):
            multipliers[(k, h)] = multiplier(a, k, h)
            interior[(k, h)] = multipliers[(k, h)] * f[k - h]
    return FrameCoefficients(a, nu, f, multipliers, interior)


def tripartition_coefficient(a, k, t):
    """
    f_{k+t,k}(a) as a product of three nu values, for k >= 1, t >= 0 and k + t <= r - 1:

    1 / (nu(0, a_1..a_k) nu(0, a_{k+t+1:r}, a_{k+t}, ..., a_{k+1}) nu(0, a_{k+t+1}..a_r)).
    """
    if not (k >= 1 and t >= 0 and k + t <= a.r - 1):
        raise CompositionError(f"f_{{{k + t},{k}}} is undefined for rank {a.r}")
    parts = a.parts[1:]
    middle = (a.range_sum(k + t + 1, a.r),) + tuple(reversed(parts[k:k + t]))
    return 1 / (_nu_of(parts[:k]) * _nu_of(middle) * _nu_of(parts[k + t:]))


def interior_coefficient_normform(a, k, h):
    """
    f_{k,k-h}(a) written with binomials and filter norms, for 1 <= h <= k - 1 <= r - 2.

    Computed on the loopless part of a.
    """
    b = a.loopless()
    if not (1 <= h <= k - 1 <= b.r - 2):
        raise CompositionError(f"interior coefficient ({k}, {h}) out of range for rank {b.r}")
    low = k - h + 1
    out = math.comb(b.range_sum(low, b.r) - 1, b.range_sum(low, k))
    for i in range(h - 1):
        out *= math.comb(b.range_sum(low, k - i) - 1, b.range_sum(low, k - i - 1))
    out *= b.factorial()
    out *= norm_closed(Composition(b.parts[:k - h + 1]))
    out *= norm_closed(Composition((0,) + b.parts[k + 1:]))
    xi = b.partial_sums()[k - h]
    return Fraction(out, math.factorial(xi) * math.factorial(b.n - xi))


# --- Gamma-bar elements ---
def gammabar_oracle(a, cap=None):
    """Specialization of the symbol expansion of gamma(a)."""
    return specialize(gamma_symbols(a, cap))


def gammabar_norms(a, cap=None):
    """
    gammabar(a) from brute-force filter norms.

    The filter of the loopless part is enumerated once; slice norms
    ||[a; s_{k+1} <= j)|| are read off cumulative buckets of s_{k+1}.
    """
    b = a.loopless()
    n, r = b.n, b.r
    xi = b.partial_sums()
    weight = b.factorial()
    total = 0
    buckets = [dict() for _ in range(r + 1)]
    for _, s in enumerate_filter(b, cap):
        c = coefficient_c(b, s)
        total += c
        for i in range(2, r + 1):
            buckets[i][s[i]] = buckets[i].get(s[i], 0) + c
    poly = tutte_uniform(r, n).scale(Fraction(weight * total, math.factorial(n)))
    inner = BivariatePolynomial()
    for k in range(1, r):
        running = 0
        row = BivariatePolynomial()
        for j in range(xi[k] - k):
            running += buckets[k + 1].get(j, 0)
            coefficient = Fraction(
                weight * running,
                math.factorial(xi[k] - j) * math.factorial(n - xi[k] + j),
            )
            row = row + (Y - 1) ** (xi[k] - k - j - 1) * coefficient
        inner = inner + X_MINUS_ONE ** (r - k - 1) * row
    return (poly + SYZYGY * inner).shift_y(a.a0)


def _closed_parts(b):
    """Returns (f_r, inner) with gammabar(b) = f_r T(U_{r,n}) + (xy - x - y) inner, for loopless b."""
    coefficients = frame_coefficients(b)
    xi = b.partial_sums()
    inner = BivariatePolynomial()
    for k in range(1, b.r):
        row = BivariatePolynomial()
        for h in range(k):
            alpha = xi[k - h] - k - 1
            if alpha < 0:
                continue
            row = row + tau(k + 1, alpha) * ((-1) ** h * coefficients.f_interior(k, h))
        if row:
            inner = inner + X_MINUS_ONE ** (b.r - k - 1) * row
    return coefficients.f[b.r], inner


@functools.lru_cache(maxsize=4096)
def gammabar_closed(a):
    """
    Closed form of gammabar(a):

    y^{a_0} [f_r T(U_{r,n'}) + (xy - x - y) sum_{k=1}^{r-1} (x-1)^{r-k-1}
    sum_{h=0}^{k-1} (-1)^h f_{k,k-h} tau(k+1, xi_{k-h} - k - 1)],

    with n' = n - a_0 and xi taken on the loopless part.
    """
    b = a.loopless()
    lead, inner = _closed_parts(b)
    return (tutte_uniform(b.r, b.n).scale(lead) + SYZYGY * inner).shift_y(a.a0)


def gammabar_closed_diagonal(a):
    """
    gammabar(a) summed along diagonals: terms f_{k+t,k} tau(k+t+1, xi_k - k - t - 1)
    carry (-1)^t (x-1)^{r-k-t-1}, with the coefficients from tripartition_coefficient.
    """
    b = a.loopless()
    r = b.r
    xi = b.partial_sums()
    inner = BivariatePolynomial()
    for k in range(1, r):
        for t in range(r - k):
            alpha = xi[k] - k - t - 1
            if alpha < 0:
                continue
            term = tau(k + t + 1, alpha) * ((-1) ** t * tripartition_coefficient(b, k, t))
            inner = inner + X_MINUS_ONE ** (r - k - t - 1) * term
    lead = 1 / b.nu()
    return (tutte_uniform(r, b.n).scale(lead) + SYZYGY * inner).shift_y(a.a0)


def _rising(start, count):
    out = 1
    for i in range(count):
        out *= start + i
    return out


def gammabar_thickness_one(a):
    """
    gammabar(0, 1^{r-2}, p, q) = p T(U_{r,n}) / prod_{i=0}^{r-2} (p+q+i)
    + (xy - x - y) tau(r, p-2) / prod_{i=1}^{r-2} (p+i).
    """
    b = a.loopless()
    r = b.r
    if r < 2 or any(part != 1 for part in b.parts[1:r - 1]):
        raise CompositionError(f"{a} is not of the form (0, 1, ..., 1, p, q)")
    p, q = b[r - 1], b[r]
    lead = Fraction(p, _rising(p + q, r - 1))
    inner = tau(r, p - 2) * Fraction(1, _rising(p + 1, r - 2))
    return (tutte_uniform(r, b.n).scale(lead) + SYZYGY * inner).shift_y(a.a0)


def gammabar_thickness_two(a):
    """gammabar(0, 1^{r-3}, p, q, s) in closed form."""
    b = a.loopless()
    r = b.r
    if r < 3 or any(part != 1 for part in b.parts[1:r - 2]):
        raise CompositionError(f"{a} is not of the form (0, 1, ..., 1, p, q, s)")
    p, q, s = b[r - 2], b[r - 1], b[r]
    big, pair = p + q + s, p + q
    lead = Fraction(p * q, (q + s) * _rising(big, r - 2))
    tail = (q + s) * _rising(p + 1, r - 3)
    inner = (
        tau(r, pair - 3) * Fraction(p, _rising(pair, r - 2))
        - tau(r, p - 3) * Fraction(s, tail)
        + X_MINUS_ONE * tau(r - 1, p - 2) * Fraction(q, tail)
    )
    return (tutte_uniform(r, b.n).scale(lead) + SYZYGY * inner).shift_y(a.a0)


def easy_evaluation(loops, m, r):
    """gammabar(loops, m, ..., m) with r parts equal to m: y^loops (x + y + ... + y^{m-1})^r / r!."""
    if loops < 0 or m < 1 or r < 0:
        raise CompositionError(f"easy evaluation needs loops >= 0, m >= 1, r >= 0; got ({loops}, {m}, {r})")
    base = X + sum((Y ** j for j in range(1, m)), BivariatePolynomial())
    return (base ** r).scale(Fraction(1, math.factorial(r))).shift_y(loops)


def frame_decomposition(a):
    """
    The pieces of the closed form of gammabar(a).

    Returns:
        dict: "uniform" holds (r, n', f_r); "terms" lists one entry per
        non-vanishing tau term with k, h, its signed coefficient, the power of
        (x - 1) and the tau arguments; "loops" is a_0.
    """
    b = a.loopless()
    coefficients = frame_coefficients(b)
    xi = b.partial_sums()
    terms = []
    for k in range(1, b.r):
        for h in range(k):
            alpha = xi[k - h] - k - 1
            if alpha < 0:
                continue
            terms.append({
                "k": k,
                "h": h,
                "coefficient": (-1) ** h * coefficients.f_interior(k, h),
                "x_power": b.r - k - 1,
                "tau": (k + 1, alpha),
            })
    return {
        "composition": a,
        "loops": a.a0,
        "uniform": (b.r, b.n, coefficients.f[b.r]),
        "terms": terms,
    }


# --- Tutte polynomial ---
def tutte_via_frame(matroid, data=None):
    """
    sum_a nu(M; a) gammabar(a) over the catenary data.

    Every composition shares a_0 and hence (r, n'), so the uniform parts and
    the syzygy parts are accumulated separately and combined once.
    """
    data = catenary_data(matroid) if data is None else data
    lead = Fraction(0)
    inner = BivariatePolynomial()
    loops = 0
    for a, count in data.items():
        loops = a.a0
        f_r, part = _closed_parts(a.loopless())
        lead += count * f_r
        inner = inner + part * count
    n = data.n - loops
    poly = (tutte_uniform(data.r, n).scale(lead) + SYZYGY * inner).shift_y(loops)
    logger.info(
        "Tutte polynomial computed successfully from %d frame elements for %s.",
        len(data), matroid.provenance,
    )
    return poly
