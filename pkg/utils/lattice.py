# File: utils/lattice.py

import logging
from dataclasses import dataclass, field

from config.settings import get_flat_cap
from models.matroid import Flat
from utils.errors import CapExceededError

logger = logging.getLogger(__name__)


@dataclass
class FlatLattice:
    """
    The lattice of flats, layered by rank.

    Args:
        matroid (Matroid): Owner of the flats.
        layers (list): layers[k] lists the rank-k flats, sorted by mask.
        covers (dict): mask -> masks of the flats covering it.
    """
    matroid: object
    layers: list = field(default_factory=list)
    covers: dict = field(default_factory=dict)

    @property
    def bottom(self):
        return self.layers[0][0]

    @property
    def top(self):
        return self.layers[-1][0]

    def flats(self):
        return [f for layer in self.layers for f in layer]

    def __len__(self):
        return sum(len(layer) for layer in self.layers)


def flat_lattice(matroid, cap=None):
    """
    Enumerates flats rank by rank and records the cover relation.

    The covers of F are the distinct closures cl(F + e); once a cover G is
    found, the other elements of G give G again and are skipped. The result is
    kept on the matroid.

    Raises:
        CapExceededError: When more than cap flats appear.
    """
    if matroid._lattice is not None:
        return matroid._lattice
    cap = get_flat_cap() if cap is None else cap
    bottom = matroid.closure(0)
    layers = [[Flat(bottom, matroid.rank(bottom), bottom.bit_count())]]
    covers = {}
    total = 1
    for _ in range(matroid.r):
        found = {}
        for flat in layers[-1]:
            ups = []
            seen = flat.mask
            for e in range(matroid.n):
                bit = 1 << e
                if seen & bit:
                    continue
                grown = matroid.closure(flat.mask | bit)
                seen |= grown
                ups.append(grown)
                if grown not in found:
                    found[grown] = Flat(grown, flat.rank + 1, grown.bit_count())
            covers[flat.mask] = tuple(sorted(ups))
        total += len(found)
        if total > cap:
            raise CapExceededError(
                f"more than {cap} flats in {matroid.provenance or 'matroid'}",
                hint="a larger flat cap or the direct route",
            )
        layers.append([found[mask] for mask in sorted(found)])
    covers[layers[-1][0].mask] = ()
    lattice = FlatLattice(matroid, layers, covers)
    matroid._lattice = lattice
    logger.info(
        "Flat lattice built successfully: %s flats by rank %s.",
        total, [len(layer) for layer in layers],
    )
    return lattice


def flats_by_rank(matroid, cap=None):
    """Returns rank k -> list of rank-k Flats."""
    return {k: list(layer) for k, layer in enumerate(flat_lattice(matroid, cap).layers)}


def mobius_from(lattice, start):
    """Returns mask -> mu(start, Y) for every flat Y containing the flat start."""
    upper = [f for f in lattice.flats() if f.mask & start.mask == start.mask]
    upper.sort(key=lambda f: f.rank)
    values = {}
    for y in upper:
        if y.mask == start.mask:
            values[y.mask] = 1
            continue
        values[y.mask] = -sum(
            values[z.mask] for z in upper
            if z.rank < y.rank and z.mask & y.mask == z.mask
        )
    return values


def lattice_mobius_invariant(matroid, cap=None):
    """(-1)^r mu(bottom, top) on the lattice of flats; 0 when the matroid has loops."""
    if not matroid.is_loopless():
        return 0
    lattice = flat_lattice(matroid, cap)
    values = mobius_from(lattice, lattice.bottom)
    return (-1) ** matroid.r * values[lattice.top.mask]


def truncated_contraction_mobius(lattice, flat, target_rank):
    """
    Moebius invariant of the truncation of M/X to rank target_rank.

    With mu taken on the interval [X, E], the value is
    (-1)^s * (-sum of mu(X, Y) over Y with rk(Y) - rk(X) < s).
    """
    top_rank = lattice.top.rank - flat.rank
    if not 1 <= target_rank <= top_rank:
        raise ValueError(f"target rank {target_rank} outside 1..{top_rank}")
    values = mobius_from(lattice, flat)
    by_mask = {f.mask: f for f in lattice.flats()}
    below = sum(v for mask, v in values.items() if by_mask[mask].rank - flat.rank < target_rank)
    return (-1) ** target_rank * -below
