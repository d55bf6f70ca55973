# File: models/composition.py

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from utils.errors import CompositionError


@dataclass(frozen=True)
class BitSequence:
    """
    A sequence of zeros and ones; an (n,r)-sequence has length n and r ones.

    Args:
        bits (tuple of int): The bits, left to right.
    """
    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise CompositionError(f"bit sequence may only hold 0 and 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @property
    def n(self):
        return len(self.bits)

    @property
    def r(self):
        return sum(self.bits)

    def prefix_weights(self):
        """Returns wt(b_1..b_m) for m = 0..n."""
        weights = [0]
        for bit in self.bits:
            weights.append(weights[-1] + bit)
        return weights

    def positions(self):
        """Returns the 1-based positions of the one-bits."""
        return [i + 1 for i, bit in enumerate(self.bits) if bit]

    def to_composition(self):
        """
        Converts to the composition a_0, a_1, ..., a_r.

        a_0 counts the leading zeros; a_i is the distance from the i-th one
        to the next one (or past the end).
        """
        positions = self.positions()
        if not positions:
            return Composition((self.n,))
        parts = [positions[0] - 1]
        for current, following in zip(positions, positions[1:] + [self.n + 1]):
            parts.append(following - current)
        return Composition(tuple(parts))

    @classmethod
    def parse(cls, text):
        text = text.strip().strip("[]")
        if not re.fullmatch(r"[01]*", text):
            raise CompositionError(f"not a bit string: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def all(cls, n, r):
        """Yields every (n,r)-sequence, ones placed in lexicographic position order."""
        for ones in itertools.combinations(range(n), r):
            bits = [0] * n
            for i in ones:
                bits[i] = 1
            yield cls(tuple(bits))

    def __str__(self):
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class Composition:
    """
    An (n,r)-composition a_0, a_1, ..., a_r with a_0 >= 0 and a_i >= 1.

    The bit-sequence view places a_0 zeros first, then for each i >= 1 a one
    followed by a_i - 1 zeros.

    Args:
        parts (tuple of int): a_0 through a_r.
    """
    parts: tuple

    def __post_init__(self):
        try:
            parts = tuple(int(p) for p in self.parts)
        except (TypeError, ValueError) as exc:
            raise CompositionError(f"composition parts must be integers: {self.parts!r}") from exc
        if not parts:
            raise CompositionError("a composition needs at least the part a_0")
        if parts[0] < 0:
            raise CompositionError(f"a_0 must be non-negative, got {parts[0]}")
        if any(p < 1 for p in parts[1:]):
            raise CompositionError(f"parts after a_0 must be positive: {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def a0(self):
        return self.parts[0]

    @property
    def n(self):
        return sum(self.parts)

    @property
    def r(self):
        return len(self.parts) - 1

    def __getitem__(self, i):
        return self.parts[i]

    def partial_sums(self):
        """Returns xi_0, ..., xi_r with xi_i = a_0 + ... + a_i."""
        return tuple(itertools.accumulate(self.parts))

    def range_sum(self, i, j):
        """Returns a_{i:j}, the sum of the parts between indices i and j inclusive."""
        lo, hi = min(i, j), max(i, j)
        return sum(self.parts[lo:hi + 1])

    def loopless(self):
        """Returns 0, a_1, ..., a_r."""
        return Composition((0,) + self.parts[1:])

    def reversed(self):
        """Returns 0, a_r, ..., a_1."""
        return Composition((0,) + tuple(reversed(self.parts[1:])))

    def factorial(self):
        """Returns a! = a_0! a_1! ... a_r!."""
        out = 1
        for p in self.parts:
            out *= math.factorial(p)
        return out

    def nu(self):
        """
        Returns nu(0, a_1, ..., a_r) = prod_{i<r} a_{r:i} / prod_{i<r} a_i; a_0 is ignored.

        Returns:
            Fraction: 1 when r <= 1.
        """
        top, bottom = 1, 1
        for i in range(1, self.r):
            top *= self.range_sum(i, self.r)
            bottom *= self.parts[i]
        return Fraction(top, bottom)

    def to_bits(self):
        bits = [0] * self.parts[0]
        for p in self.parts[1:]:
            bits.append(1)
            bits.extend([0] * (p - 1))
        return BitSequence(tuple(bits))

    @classmethod
    def from_bits(cls, bits):
        return bits.to_composition()

    @classmethod
    def parse(cls, text):
        """Parses "0,1,1,4,2,4" (brackets and whitespace tolerated)."""
        cleaned = text.strip().strip("()[]")
        if not cleaned:
            raise CompositionError("empty composition")
        try:
            return cls(tuple(int(tok) for tok in cleaned.split(",")))
        except ValueError as exc:
            raise CompositionError(f"cannot parse composition {text!r}") from exc

    @classmethod
    def all(cls, n, r=None):
        """Yields every (n,r)-composition; every rank 0..n when r is None."""
        ranks = range(n + 1) if r is None else [r]
        for rank in ranks:
            for bits in BitSequence.all(n, rank):
                yield bits.to_composition()

    def __str__(self):
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class ShiftVector:
    """Leftward displacements s_1, ..., s_r of the one-bits relative to a base composition."""
    shifts: tuple

    def __post_init__(self):
        shifts = tuple(int(s) for s in self.shifts)
        if any(s < 0 for s in shifts):
            raise CompositionError(f"shifts must be non-negative: {shifts!r}")
        object.__setattr__(self, "shifts", shifts)

    def __getitem__(self, i):
        # 1-based, matching s_1..s_r
        return self.shifts[i - 1]

    def __len__(self):
        return len(self.shifts)

    def __str__(self):
        return "(" + ",".join(str(s) for s in self.shifts) + ")"


_CLAUSE = re.compile(r"^s(\d+)\s*(<=|=|≤)\s*(\d+)$")


@dataclass(frozen=True)
class SliceConstraint:
    """
    A conjunction of clauses s_i = alpha or s_i <= alpha on single coordinates.

    Args:
        clauses (tuple): Triples (index, relation, bound) with relation "=" or "<=".
    """
    clauses: tuple = ()

    def __post_init__(self):
        clauses = []
        for index, relation, bound in self.clauses:
            if relation not in ("=", "<="):
                raise CompositionError(f"unsupported relation {relation!r}")
            if index < 1 or bound < 0:
                raise CompositionError(f"bad clause s{index}{relation}{bound}")
            clauses.append((int(index), relation, int(bound)))
        object.__setattr__(self, "clauses", tuple(clauses))

    def check_rank(self, r):
        for index, relation, bound in self.clauses:
            if index > r:
                raise CompositionError(f"slice coordinate s{index} exceeds rank {r}")

    def satisfied_by(self, shifts):
        for index, relation, bound in self.clauses:
            value = shifts[index]
            if relation == "=" and value != bound:
                return False
            if relation == "<=" and value > bound:
                return False
        return True

    @classmethod
    def parse(cls, text):
        """Parses "s5<=2, s4=0"; an empty string gives the empty constraint."""
        clauses = []
        for raw in filter(None, (part.strip() for part in (text or "").split(","))):
            match = _CLAUSE.match(raw.replace(" ", ""))
            if not match:
                raise CompositionError(f"cannot parse slice clause {raw!r}")
            relation = "<=" if match.group(2) in ("<=", "≤") else "="
            clauses.append((int(match.group(1)), relation, int(match.group(3))))
        return cls(tuple(clauses))

    def __str__(self):
        return ", ".join(f"s{i}{rel}{bound}" for i, rel, bound in self.clauses)
