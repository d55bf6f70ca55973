# File: models/matroid.py

import itertools
import logging
from dataclasses import dataclass

import networkx as nx
from networkx.utils import UnionFind

from utils.errors import MatroidSpecError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Flat:
    """A closed set of a matroid: bitmask over elements 0..n-1, its rank and size."""
    mask: int
    rank: int
    size: int


class Matroid:
    """
    A matroid on the ground set {1, ..., n} described by a rank oracle on bitmasks.

    Bit e of a mask stands for element e + 1. Subclasses implement _rank and may
    override _closure with something faster than the generic rank test. Rank and
    closure values are memoized per instance; worker processes each memoize
    their own copy.

    Args:
        n (int): Ground-set size.
        provenance (str): The description the matroid was built from.
    """

    def __init__(self, n, provenance=""):
        self.n = n
        self.provenance = provenance
        self.ground = (1 << n) - 1
        self._rank_memo = {}
        self._closure_memo = {}
        self._lattice = None

    # --- Oracle ---
    def _rank(self, mask):
        raise NotImplementedError

    def rank(self, mask=None):
        if mask is None:
            mask = self.ground
        value = self._rank_memo.get(mask)
        if value is None:
            value = self._rank(mask)
            self._rank_memo[mask] = value
        return value

    @property
    def r(self):
        return self.rank(self.ground)

    def _closure(self, mask):
        base = self.rank(mask)
        out = mask
        for e in range(self.n):
            bit = 1 << e
            if not mask & bit and self.rank(mask | bit) == base:
                out |= bit
        return out

    def closure(self, mask):
        value = self._closure_memo.get(mask)
        if value is None:
            value = self._closure(mask)
            self._closure_memo[mask] = value
        return value

    def is_flat(self, mask):
        return self.closure(mask) == mask

    def loops(self):
        return self.closure(0)

    def is_loopless(self):
        return self.loops() == 0

    # --- Minors ---
    def restrict(self, mask):
        return Minor(self, mask, 0, f"{self.provenance}|restrict")

    def delete(self, mask):
        return Minor(self, self.ground & ~mask, 0, f"{self.provenance}|delete")

    def contract(self, mask):
        return Minor(self, self.ground & ~mask, mask, f"{self.provenance}|contract")

    def truncate(self, steps):
        return Truncation(self, steps)

    def mask_of(self, elements):
        """Bitmask of 1-based element labels."""
        out = 0
        for e in elements:
            if not 1 <= e <= self.n:
                raise ValueError(f"element {e} outside 1..{self.n}")
            out |= 1 << (e - 1)
        return out

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, r={self.r}, spec={self.provenance!r})"


class Minor(Matroid):
    """M|kept / contracted, with the kept elements relabeled in increasing order."""

    def __init__(self, base, kept, contracted=0, provenance=""):
        kept &= base.ground & ~contracted
        self._elements = [e for e in range(base.n) if kept >> e & 1]
        super().__init__(len(self._elements), provenance)
        self.base = base
        self._contracted = contracted
        self._offset = base.rank(contracted)

    def _lift(self, mask):
        out = self._contracted
        for index, e in enumerate(self._elements):
            if mask >> index & 1:
                out |= 1 << e
        return out

    def _rank(self, mask):
        return self.base.rank(self._lift(mask)) - self._offset


class Truncation(Matroid):
    """Rank function min(rk(A), r - steps)."""

    def __init__(self, base, steps):
        if not 0 <= steps <= base.r:
            raise ValueError(f"cannot truncate a rank-{base.r} matroid by {steps} steps")
        super().__init__(base.n, f"{base.provenance}|truncate:{steps}")
        self.base = base
        self._cap = base.r - steps

    def _rank(self, mask):
        return min(self.base.rank(mask), self._cap)


class UniformMatroid(Matroid):
    def __init__(self, rank, n, provenance=None):
        if not 0 <= rank <= n:
            raise MatroidSpecError(f"U_{{{rank},{n}}} needs 0 <= R <= N")
        super().__init__(n, provenance or f"uniform:{rank},{n}")
        self._cap = rank

    def _rank(self, mask):
        return min(mask.bit_count(), self._cap)

    def _closure(self, mask):
        return mask if mask.bit_count() < self._cap else self.ground


class ParallelClassMatroid(Matroid):
    """
    Elements grouped into consecutive parallel classes; rank is the number of
    classes met, capped at rank_cap. line:M1,...,Mk uses rank_cap = 2.
    """

    def __init__(self, class_sizes, rank_cap, provenance=""):
        if not class_sizes or any(size < 1 for size in class_sizes):
            raise MatroidSpecError(f"parallel class sizes must be positive: {class_sizes!r}")
        super().__init__(sum(class_sizes), provenance)
        self._classes = []
        start = 0
        for size in class_sizes:
            self._classes.append(((1 << size) - 1) << start)
            start += size
        self._cap = min(rank_cap, len(class_sizes))

    def _rank(self, mask):
        return min(self._cap, sum(1 for cls in self._classes if cls & mask))

    def _closure(self, mask):
        if self.rank(mask) >= self._cap:
            return self.ground
        out = 0
        for cls in self._classes:
            if cls & mask:
                out |= cls
        return out


def _reduce(vector, basis, q):
    v = list(vector)
    for pivot, row in basis:
        c = v[pivot]
        if c:
            v = [(a - c * b) % q for a, b in zip(v, row)]
    return v


def _insert(vector, basis, q):
    """Adds vector to an echelon basis over GF(q); returns False when it is dependent."""
    v = _reduce(vector, basis, q)
    for pivot, c in enumerate(v):
        if c:
            inverse = pow(c, -1, q)
            basis.append((pivot, [(a * inverse) % q for a in v]))
            return True
    return False


class VectorMatroid(Matroid):
    """
    Column matroid of vectors over the prime field GF(q).

    Args:
        vectors (list of tuple): One coordinate tuple per element.
        q (int): Field size, a prime.
    """

    def __init__(self, vectors, q, provenance=""):
        super().__init__(len(vectors), provenance)
        self.q = q
        self.vectors = [tuple(c % q for c in v) for v in vectors]

    def _basis(self, mask):
        basis = []
        for e in range(self.n):
            if mask >> e & 1:
                _insert(self.vectors[e], basis, self.q)
        return basis

    def _rank(self, mask):
        return len(self._basis(mask))

    def _closure(self, mask):
        basis = self._basis(mask)
        out = mask
        for e in range(self.n):
            if not any(_reduce(self.vectors[e], basis, self.q)):
                out |= 1 << e
        return out


def projective_points(d, q):
    """Points of PG(d, q): vectors of GF(q)^(d+1) whose first non-zero coordinate is 1, in lexicographic order."""
    points = []
    for v in itertools.product(range(q), repeat=d + 1):
        nonzero = [c for c in v if c]
        if nonzero and nonzero[0] == 1:
            points.append(v)
    return points


class GraphicMatroid(Matroid):
    """
    Cycle matroid of a multigraph; rank of an edge set is the number of
    vertices it joins into forests.

    Args:
        edges (list of tuple): Vertex pairs in the order they become elements 1..n;
            repeated pairs are parallel edges and (v, v) is a loop.
    """

    def __init__(self, edges, provenance=""):
        self.edges = [tuple(edge) for edge in edges]
        super().__init__(len(self.edges), provenance)
        self.graph = nx.MultiGraph()
        self.graph.add_edges_from(self.edges)

    def _components(self, mask):
        forest = UnionFind()
        rank = 0
        for e, (u, v) in enumerate(self.edges):
            if mask >> e & 1 and forest[u] != forest[v]:
                forest.union(u, v)
                rank += 1
        return forest, rank

    def _rank(self, mask):
        if mask == self.ground:
            return self.graph.number_of_nodes() - nx.number_connected_components(self.graph)
        return self._components(mask)[1]

    def _closure(self, mask):
        forest, _ = self._components(mask)
        out = mask
        for e, (u, v) in enumerate(self.edges):
            if forest[u] == forest[v]:
                out |= 1 << e
        return out


def complete_graph_matroid(m, provenance=None):
    return GraphicMatroid(list(nx.complete_graph(m).edges()), provenance or f"complete:{m}")


class NestedMatroid(Matroid):
    """
    Row-echelon (nested) matroid of a bit string b: a set S is independent iff
    |S ∩ {1..j}| <= wt(b_1..b_j) for every prefix j.
    """

    def __init__(self, bits, provenance=None):
        super().__init__(len(bits), provenance or f"echelon:{''.join(map(str, bits))}")
        self.capacity = list(itertools.accumulate(bits))

    def _rank(self, mask):
        used = [0] * self.n
        rank = 0
        for e in range(self.n):
            if mask >> e & 1 and all(used[j] < self.capacity[j] for j in range(e, self.n)):
                for j in range(e, self.n):
                    used[j] += 1
                rank += 1
        return rank


class BasisMatroid(Matroid):
    """Matroid given by its list of bases (bitmasks)."""

    def __init__(self, n, rank, bases, provenance=""):
        super().__init__(n, provenance)
        self.bases = sorted(set(bases))
        if not self.bases:
            raise MatroidSpecError("a matroid needs at least one base")
        if any(b.bit_count() != rank or b >> n for b in self.bases):
            raise MatroidSpecError(f"every base must be a {rank}-subset of 1..{n}")
        self._check_exchange()

    def _check_exchange(self):
        known = set(self.bases)
        for b1 in self.bases:
            for b2 in self.bases:
                for e in range(self.n):
                    if b1 >> e & 1 and not b2 >> e & 1:
                        swapped = (b1 & ~(1 << e))
                        if not any(
                            swapped | (1 << f) in known
                            for f in range(self.n)
                            if b2 >> f & 1 and not b1 >> f & 1
                        ):
                            raise MatroidSpecError("base list violates the exchange axiom")

    def _rank(self, mask):
        return max((mask & b).bit_count() for b in self.bases)


class DirectSum(Matroid):
    """Direct sum; elements of the parts are numbered consecutively."""

    def __init__(self, parts, provenance=""):
        super().__init__(sum(p.n for p in parts), provenance)
        self.parts = list(parts)
        self._offsets = list(itertools.accumulate([0] + [p.n for p in parts[:-1]]))

    def _rank(self, mask):
        return sum(p.rank((mask >> off) & p.ground) for p, off in zip(self.parts, self._offsets))

    def _closure(self, mask):
        out = 0
        for p, off in zip(self.parts, self._offsets):
            out |= p.closure((mask >> off) & p.ground) << off
        return out
