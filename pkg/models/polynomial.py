# File: models/polynomial.py

import math
from dataclasses import dataclass
from fractions import Fraction

from utils.errors import IntegralityError


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact coefficients only, got {type(value).__name__}")


class BivariatePolynomial:
    """
    A sparse polynomial in x and y with exact rational coefficients.

    Terms are kept as a mapping (i, j) -> Fraction for the monomial x^i y^j;
    zero coefficients are never stored.

    Args:
        terms (dict, optional): Mapping (i, j) -> int, Fraction or "p/q" string.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term x^{i} y^{j}")
            c = _as_fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    # --- Constructors ---
    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def _trusted(cls, terms):
        poly = cls.__new__(cls)
        poly._terms = {k: v for k, v in terms.items() if v}
        poly._hash = None
        return poly

    # --- Access ---
    def coeff(self, i, j):
        return self._terms.get((i, j), Fraction(0))

    def items(self):
        """Returns ((i, j), coefficient) pairs sorted by (i, j)."""
        return sorted(self._terms.items())

    def terms(self):
        return dict(self._terms)

    @property
    def degree_x(self):
        return max((i for i, _ in self._terms), default=-1)

    @property
    def degree_y(self):
        return max((j for _, j in self._terms), default=-1)

    def check_tutte_shape(self):
        """Raises IntegralityError unless every coefficient is a non-negative integer."""
        for (i, j), c in self.items():
            if c.denominator != 1 or c < 0:
                raise IntegralityError(f"coefficient of x^{i} y^{j} is {c}, not a non-negative integer")
        return self

    # --- Arithmetic ---
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial._trusted({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePolynomial._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = BivariatePolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return BivariatePolynomial()
        return BivariatePolynomial._trusted({k: v * c for k, v in self._terms.items()})

    def shift_y(self, k):
        """Multiplies by y^k."""
        return BivariatePolynomial._trusted({(i, j + k): c for (i, j), c in self._terms.items()})

    def shift(self, dx, dy):
        """Returns p(x + dx, y + dy), expanded exactly."""
        dx, dy = _as_fraction(dx), _as_fraction(dy)
        out = {}
        for (i, j), c in self._terms.items():
            for a in range(i + 1):
                ca = c * math.comb(i, a) * dx ** (i - a)
                if not ca:
                    continue
                for b in range(j + 1):
                    cb = ca * math.comb(j, b) * dy ** (j - b)
                    if cb:
                        out[(a, b)] = out.get((a, b), 0) + cb
        return BivariatePolynomial._trusted(out)

    def evaluate(self, x0, y0):
        x0, y0 = _as_fraction(x0), _as_fraction(y0)
        return sum((c * x0 ** i * y0 ** j for (i, j), c in self._terms.items()), Fraction(0))

    # --- Comparison ---
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                part for part in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if part
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")


def _coerce(value):
    if isinstance(value, BivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return BivariatePolynomial.constant(value)
    return NotImplemented


X = BivariatePolynomial.x()
Y = BivariatePolynomial.y()
ONE = BivariatePolynomial.constant(1)
# xy - x - y
SYZYGY = X * Y - X - Y


@dataclass(frozen=True)
class Tableau:
    """
    Dense view of a polynomial: row i holds the coefficients of x^i y^j for j = 0, 1, ...

    Args:
        n (int): Ground-set size of the matroid the tableau belongs to.
        r (int): Rank; rows 0..r.
        rows (tuple): One tuple of Fractions per x-degree.
    """
    n: int
    r: int
    rows: tuple

    @classmethod
    def from_polynomial(cls, poly, n, r):
        if poly.degree_x > r:
            raise ValueError(f"x-degree {poly.degree_x} exceeds rank {r}")
        width = {}
        for (i, j), _ in poly.items():
            width[i] = max(width.get(i, -1), j)
        rows = []
        for i in range(r + 1):
            rows.append(tuple(poly.coeff(i, j) for j in range(width.get(i, -1) + 1)))
        return cls(n, r, tuple(rows))

    def to_polynomial(self):
        return BivariatePolynomial(
            {(i, j): c for i, row in enumerate(self.rows) for j, c in enumerate(row) if c}
        )

    def row(self, i):
        """Returns row i as a list of ints (zeros where blank); raises if non-integral."""
        out = []
        for c in self.rows[i]:
            if c.denominator != 1:
                raise IntegralityError(f"row {i} holds the non-integer {c}")
            out.append(int(c))
        return out
