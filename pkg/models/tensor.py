# File: models/tensor.py

from dataclasses import dataclass, field


@dataclass
class FlatTensor:
    """
    Signed flat numbers f^t_{k,m} of a loopless (n,r)-matroid.

    Entries with m == k come from independent flats; they are kept but
    flagged auxiliary and never change a reconstructed polynomial.

    Args:
        n (int): Ground-set size.
        r (int): Rank.
        entries (dict): (k, m, t) -> int, zero entries omitted.
    """
    n: int
    r: int
    entries: dict = field(default_factory=dict)

    def get(self, k, m, t):
        return self.entries.get((k, m, t), 0)

    def items(self):
        return sorted(self.entries.items())

    def principal_items(self):
        """Entries with m > k."""
        return [(key, v) for key, v in self.items() if key[1] > key[0]]

    @staticmethod
    def is_auxiliary(key):
        k, m, _ = key
        return m == k

    def flat_counts(self):
        """Returns (k, m) -> f^0_{k,m}."""
        return {(k, m): v for (k, m, t), v in self.items() if t == 0}


@dataclass
class FTableau:
    """Total flat numbers F_{ij} with i = k + t and j = m - k - t."""
    n: int
    r: int
    entries: dict = field(default_factory=dict)

    def get(self, i, j):
        return self.entries.get((i, j), 0)

    def items(self):
        return sorted(self.entries.items())

    def __eq__(self, other):
        if not isinstance(other, FTableau):
            return NotImplemented
        return (self.n, self.r, self.entries) == (other.n, other.r, other.entries)
