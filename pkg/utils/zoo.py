# File: utils/zoo.py

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction

from models.composition import Composition
from models.polynomial import SYZYGY, BivariatePolynomial
from utils.flatexpand import flat_tensor, flat_tensor_mobius
from utils.frame import gammabar_closed
from utils.ginvariant import catenary_data
from utils.lattice import flats_by_rank
from utils.matroid_dsl import construct
from utils.tau import tutte_uniform
from utils.tutte import mobius_invariant
from utils.verify import compute, first_difference

logger = logging.getLogger(__name__)

# The fixture file sits next to app.py.
current_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
ZOO_PATH = os.path.join(current_dir, "zoo_fixtures.json")

FIXTURE_KINDS = ("tableau", "mobius", "catenary", "tensor", "flat_counts", "frame")

# Parts of the reference text a reference fixture may point to.
REFERENCE_SECTIONS = (
    "introduction",
    "Moebius invariants",
    "flat numbers",
    "tableau arithmetic",
    "appendix examples",
)


@dataclass
class ZooEntry:
    """
    A named matroid with its expected values.

    Args:
        name (str): Display name, e.g. "PG(2,3)".
        spec (str): Matroid description accepted by construct.
        description (str): One line on what the matroid is.
        fixtures (list): Fixture dicts, each with a "kind" and a "provenance".
            Reference provenance carries a "section" and a "cite"; derived
            provenance names its "route".
        slow (bool): Whether the entry takes tens of seconds.
    """
    name: str
    spec: str
    description: str = ""
    fixtures: list = field(default_factory=list)
    slow: bool = False

    def __post_init__(self):
        for fixture in self.fixtures:
            kind = fixture.get("kind")
            if kind not in FIXTURE_KINDS:
                raise ValueError(f"{self.name}: unknown fixture kind {kind!r}")
            provenance = fixture.get("provenance", {})
            tag = provenance.get("tag")
            if tag == "reference" and not provenance.get("cite"):
                raise ValueError(f"{self.name}: reference fixture {kind} needs a cite")
            if tag == "reference" and provenance.get("section") not in REFERENCE_SECTIONS:
                raise ValueError(
                    f"{self.name}: reference fixture {kind} names no known section; choose from {REFERENCE_SECTIONS}"
                )
            if tag == "derived" and not provenance.get("route"):
                raise ValueError(f"{self.name}: derived fixture {kind} needs a route")
            if tag not in ("reference", "derived"):
                raise ValueError(f"{self.name}: fixture {kind} has no provenance tag")

    def matroid(self):
        return construct(self.spec)


@dataclass
class FixtureResult:
    entry: str
    kind: str
    passed: bool
    detail: str = ""


def load_zoo(path=None):
    """Loads every ZooEntry from the fixture file."""
    path = path or ZOO_PATH
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    entries = [ZooEntry(**raw) for raw in payload["entries"]]
    logger.info("Zoo loaded successfully: %d entries from %s.", len(entries), path)
    return entries


def get_entry(name, entries=None):
    for entry in entries if entries is not None else load_zoo():
        if entry.name == name:
            return entry
    raise KeyError(f"no zoo entry named {name!r}")


def rows_to_polynomial(rows):
    """Tableau rows (None for blank) to a polynomial."""
    return BivariatePolynomial(
        {(i, j): c for i, row in enumerate(rows) for j, c in enumerate(row) if c is not None}
    )


# --- Fixture checks ---
def _check_tableau(matroid, fixture):
    expected = rows_to_polynomial(fixture["rows"])
    for route in fixture.get("routes", ["auto"]):
        found = compute(matroid, route)
        key = first_difference(expected, found)
        if key is not None:
            return False, f"route {route} differs at x^{key[0]} y^{key[1]}: {found.coeff(*key)} vs {expected.coeff(*key)}"
    return True, ""


def _check_mobius(matroid, fixture):
    found = mobius_invariant(matroid)
    return found == fixture["value"], f"mu = {found}, expected {fixture['value']}"


def _check_catenary(matroid, fixture):
    found = {a.parts: nu for a, nu in catenary_data(matroid).items()}
    expected = {tuple(row["composition"]): row["nu"] for row in fixture["table"]}
    return found == expected, f"catenary {found} vs {expected}"


def _check_tensor(matroid, fixture):
    route = fixture.get("route", "catenary")
    tensor = flat_tensor(matroid) if route == "catenary" else flat_tensor_mobius(matroid)
    expected = {(e["k"], e["m"], e["t"]): e["f"] for e in fixture["entries"]}
    if fixture.get("partial"):
        found = {key: tensor.get(*key) for key in expected}
    else:
        found = dict(tensor.principal_items())
    if fixture.get("unsigned"):
        found = {key: abs(v) for key, v in found.items()}
    return found == expected, f"tensor {found} vs {expected}"


def _check_flat_counts(matroid, fixture):
    found = [len(layer) for _, layer in sorted(flats_by_rank(matroid).items())]
    return found == fixture["by_rank"], f"flats by rank {found}, expected {fixture['by_rank']}"


def _check_frame(matroid, fixture):
    a = Composition(tuple(fixture["composition"]))
    b = a.loopless()
    inner = BivariatePolynomial({(t["i"], t["j"]): t["c"] for t in fixture["inner"]})
    expected = (tutte_uniform(b.r, b.n).scale(Fraction(fixture["uniform"])) + SYZYGY * inner).shift_y(a.a0)
    found = gammabar_closed(a)
    return found == expected, f"gammabar{a.parts} = {found}, expected {expected}"


_CHECKS = {
    "tableau": _check_tableau,
    "mobius": _check_mobius,
    "catenary": _check_catenary,
    "tensor": _check_tensor,
    "flat_counts": _check_flat_counts,
    "frame": _check_frame,
}


def run_fixture(entry, fixture, matroid=None):
    matroid = matroid or entry.matroid()
    passed, detail = _CHECKS[fixture["kind"]](matroid, fixture)
    if not passed:
        logger.warning("Fixture %s/%s failed: %s", entry.name, fixture["kind"], detail)
    return FixtureResult(entry.name, fixture["kind"], passed, "" if passed else detail)


def run_entry(entry):
    matroid = entry.matroid()
    return [run_fixture(entry, fixture, matroid) for fixture in entry.fixtures]
