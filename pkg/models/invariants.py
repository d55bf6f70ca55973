# File: models/invariants.py

from fractions import Fraction

from utils.errors import CompositionError


class SymbolCombination:
    """
    Formal integer combination of (n,r)-symbols [b], keyed by bit sequence.

    Args:
        n (int): Length of every symbol.
        r (int): Weight of every symbol.
        coefficients (dict, optional): BitSequence -> int.
    """

    def __init__(self, n, r, coefficients=None):
        self.n = n
        self.r = r
        self._coefficients = {}
        for bits, c in (coefficients or {}).items():
            self._add(bits, c)

    def _add(self, bits, c):
        if bits.n != self.n or bits.r != self.r:
            raise CompositionError(f"symbol [{bits}] is not an ({self.n},{self.r})-sequence")
        value = self._coefficients.get(bits, 0) + c
        if value:
            self._coefficients[bits] = value
        else:
            self._coefficients.pop(bits, None)

    def coefficient(self, bits):
        return self._coefficients.get(bits, 0)

    def items(self):
        """Symbols in descending bit order, so 1^r 0^(n-r) comes first."""
        return sorted(self._coefficients.items(), key=lambda kv: kv[0].bits, reverse=True)

    def total_mass(self):
        return sum(self._coefficients.values())

    def scaled(self, factor):
        return SymbolCombination(self.n, self.r, {b: c * factor for b, c in self._coefficients.items()})

    def __add__(self, other):
        out = SymbolCombination(self.n, self.r, self._coefficients)
        for bits, c in other._coefficients.items():
            out._add(bits, c)
        return out

    def __eq__(self, other):
        if not isinstance(other, SymbolCombination):
            return NotImplemented
        return (self.n, self.r, self._coefficients) == (other.n, other.r, other._coefficients)

    def __len__(self):
        return len(self._coefficients)

    def __repr__(self):
        body = " + ".join(f"{c}[{b}]" for b, c in self.items())
        return f"SymbolCombination({self.n},{self.r}: {body or '0'})"


class CatenaryData:
    """
    Flag counts nu(M; a): the number of maximal chains of flats whose size
    increments form the composition a.
    """

    def __init__(self, n, r, counts=None):
        self.n = n
        self.r = r
        self._counts = {}
        for composition, count in (counts or {}).items():
            if composition.n != n or composition.r != r:
                raise CompositionError(f"{composition} is not an ({n},{r})-composition")
            if count < 0:
                raise ValueError(f"negative flag count {count} for {composition}")
            if count:
                self._counts[composition] = int(count)

    def __getitem__(self, composition):
        return self._counts.get(composition, 0)

    def items(self):
        return sorted(self._counts.items(), key=lambda kv: kv[0].parts, reverse=True)

    def compositions(self):
        return [c for c, _ in self.items()]

    def total_flags(self):
        return sum(self._counts.values())

    def __len__(self):
        return len(self._counts)

    def __eq__(self, other):
        if not isinstance(other, CatenaryData):
            return NotImplemented
        return (self.n, self.r, self._counts) == (other.n, other.r, other._counts)

    def to_json(self):
        return [{"composition": list(c.parts), "nu": nu} for c, nu in self.items()]

    def weighted_sum(self, weight):
        """Returns sum_a nu(M; a) * weight(a) as an exact Fraction."""
        return sum((Fraction(nu) * weight(c) for c, nu in self.items()), Fraction(0))
