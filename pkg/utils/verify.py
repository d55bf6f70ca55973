# File: utils/verify.py

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field

from config.settings import get_enumeration_cap, get_max_direct_n
from utils.errors import CapExceededError, InfeasibleRouteError
from utils.flatexpand import flat_tensor, tutte_from_tensor
from utils.formatting import polynomial_to_json
from utils.frame import tutte_via_frame
from utils.ginvariant import tutte_via_sp
from utils.tutte import tutte_deletion_contraction, tutte_direct

logger = logging.getLogger(__name__)

# Largest n for which "auto" prefers the direct sum.
AUTO_DIRECT_N = 16


def tutte_via_ftensor(matroid):
    """Flat-tensor route; loops are deleted first and restored as a factor y^L."""
    loops = matroid.loops()
    core = matroid.delete(loops) if loops else matroid
    poly = tutte_from_tensor(flat_tensor(core))
    return poly.shift_y(loops.bit_count())


ROUTES = {
    "direct": tutte_direct,
    "delcon": tutte_deletion_contraction,
    "ginv": tutte_via_sp,
    "frame": tutte_via_frame,
    "ftensor": tutte_via_ftensor,
}

METHODS = tuple(ROUTES) + ("auto",)


def feasibility(route, matroid):
    """Returns None when the route may run on the matroid, else the reason it may not."""
    if route == "direct" and matroid.n > get_max_direct_n():
        return f"n = {matroid.n} exceeds the direct cap {get_max_direct_n()}"
    if route == "ginv" and matroid.n > get_enumeration_cap():
        return f"n = {matroid.n} exceeds the enumeration cap {get_enumeration_cap()}"
    return None


def feasible_routes(matroid):
    return [route for route in ROUTES if feasibility(route, matroid) is None]


def compute(matroid, method="auto"):
    """
    Tutte polynomial by the named route.

    "auto" takes the direct sum for n <= 16 and the frame route otherwise,
    falling back to deletion-contraction when the frame route hits a cap.
    The result is checked to have non-negative integer coefficients before it
    is returned.

    Raises:
        ValueError: For an unknown method.
        InfeasibleRouteError: When the route cannot handle the instance.
        IntegralityError: When the route produced a non-integral or negative coefficient.
    """
    if method == "auto":
        if matroid.n <= AUTO_DIRECT_N and feasibility("direct", matroid) is None:
            return tutte_direct(matroid).check_tutte_shape()
        try:
            return tutte_via_frame(matroid).check_tutte_shape()
        except CapExceededError as exc:
            logger.warning("Frame route stopped (%s); falling back to deletion-contraction.", exc)
            return tutte_deletion_contraction(matroid).check_tutte_shape()
    if method not in ROUTES:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    reason = feasibility(method, matroid)
    if reason:
        alternatives = [route for route in feasible_routes(matroid) if route != method]
        raise InfeasibleRouteError(
            f"method {method} is infeasible: {reason}",
            hint="--method " + (alternatives[0] if alternatives else "auto"),
        )
    return ROUTES[method](matroid).check_tutte_shape()


def polynomial_digest(poly, n, r):
    payload = json.dumps(polynomial_to_json(poly, n, r), sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def first_difference(p, q):
    """Returns the smallest (i, j) where p and q differ, or None."""
    keys = sorted(set(p.terms()) | set(q.terms()))
    for key in keys:
        if p.coeff(*key) != q.coeff(*key):
            return key
    return None


@dataclass
class VerificationReport:
    """
    Outcome of computing one matroid by several routes.

    Args:
        spec (str): Canonical matroid description.
        n (int): Ground-set size.
        r (int): Rank.
        digests (dict): route -> sha256 of the polynomial JSON.
        timings (dict): route -> seconds.
        polynomials (dict): route -> BivariatePolynomial.
        mismatch (tuple, optional): (route_a, route_b, (i, j)) for the first disagreement.
    """
    spec: str
    n: int
    r: int
    digests: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    polynomials: dict = field(default_factory=dict)
    mismatch: tuple = None

    @property
    def passed(self):
        return len(set(self.digests.values())) == 1

    def to_json(self):
        return {
            "spec": self.spec,
            "n": self.n,
            "r": self.r,
            "pass": self.passed,
            "routes": [
                {"route": route, "sha256": self.digests[route], "seconds": round(self.timings[route], 6)}
                for route in self.digests
            ],
            "mismatch": None if self.mismatch is None else {
                "routes": list(self.mismatch[:2]),
                "i": self.mismatch[2][0],
                "j": self.mismatch[2][1],
            },
        }

    def render(self):
        lines = [f"matroid {self.spec} (n={self.n}, r={self.r})"]
        for route, digest in self.digests.items():
            lines.append(f"  {route:<8} {digest[:16]}  {self.timings[route]:.3f}s")
        if self.passed:
            lines.append("PASS: all routes agree")
        else:
            a, b, (i, j) = self.mismatch
            pa, pb = self.polynomials[a], self.polynomials[b]
            lines.append(
                f"FAIL: {a} and {b} differ at x^{i} y^{j}: {pa.coeff(i, j)} vs {pb.coeff(i, j)}"
            )
        return "\n".join(lines) + "\n"


def verify(matroid, routes=None):
    """
    Computes the Tutte polynomial by every requested route and compares exactly.

    Args:
        matroid (Matroid): The matroid.
        routes (list of str, optional): Defaults to every feasible route.

    Raises:
        InfeasibleRouteError: When fewer than two requested routes are feasible.
        IntegralityError: When a route produced a non-integral or negative coefficient.
    """
    requested = list(routes) if routes else list(ROUTES)
    unknown = [route for route in requested if route not in ROUTES]
    if unknown:
        raise ValueError(f"unknown routes {unknown}; choose from {tuple(ROUTES)}")
    runnable = [route for route in requested if feasibility(route, matroid) is None]
    if len(runnable) < 2:
        raise InfeasibleRouteError(
            f"only {len(runnable)} of the requested routes can run on {matroid.provenance}",
            hint="--routes " + ",".join(feasible_routes(matroid)),
        )
    report = VerificationReport(matroid.provenance, matroid.n, matroid.r)
    reference = None
    for route in runnable:
        start = time.perf_counter()
        poly = ROUTES[route](matroid).check_tutte_shape()
        report.timings[route] = time.perf_counter() - start
        report.polynomials[route] = poly
        report.digests[route] = polynomial_digest(poly, matroid.n, matroid.r)
        if reference is None:
            reference = route
        elif report.mismatch is None:
            key = first_difference(report.polynomials[reference], poly)
            if key is not None:
                report.mismatch = (reference, route, key)
    logger.info("Verification of %s finished: %s.", matroid.provenance, "pass" if report.passed else "FAIL")
    return report
