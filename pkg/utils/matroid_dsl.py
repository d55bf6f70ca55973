# File: utils/matroid_dsl.py

import logging
import re

import sympy

from models.matroid import (
    BasisMatroid,
    DirectSum,
    GraphicMatroid,
    NestedMatroid,
    ParallelClassMatroid,
    UniformMatroid,
    VectorMatroid,
    complete_graph_matroid,
    projective_points,
)
from utils.errors import MatroidSpecError

logger = logging.getLogger(__name__)

_EDGE = re.compile(r"\((-?\w+),(-?\w+)\)")


def canonical_spec(spec):
    """Spec with whitespace removed, except single spaces separating numbers inside base lists."""
    spaced = re.sub(r"(?<=\d)\s+(?=\d)", " ", spec.strip())
    return re.sub(r"(?<!\d)\s+|\s+(?!\d)", "", spaced)


def _ints(text, what):
    try:
        values = [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise MatroidSpecError(f"{what}: expected comma-separated integers, got {text!r}") from exc
    if not values:
        raise MatroidSpecError(f"{what}: no values given")
    return values


def _split_top_level(body):
    parts, depth, current = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise MatroidSpecError(f"unbalanced parentheses in {body!r}")
        if ch == "|" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise MatroidSpecError(f"unbalanced parentheses in {body!r}")
    parts.append("".join(current))
    return parts


def construct(spec):
    """
    Builds a matroid from its description.

    Forms: uniform:R,N | pg:D,Q | complete:M | graphic:[(u,v);...] |
    echelon:BITS | multipoint:L;M1,...,Mr | line:M1,...,Mk |
    sum(S1|S2|...) | bases:N,R,{e1 e2 ...; ...}. Elements are 1-based.

    Raises:
        MatroidSpecError: On malformed or inconsistent descriptions.
    """
    text = canonical_spec(spec)
    matroid = _build(text)
    matroid.provenance = text
    logger.info("Matroid %s created successfully: n=%d, r=%d.", text, matroid.n, matroid.r)
    return matroid


def _build(text):
    if text.startswith("sum(") and text.endswith(")"):
        summands = _split_top_level(text[4:-1])
        if any(not s for s in summands):
            raise MatroidSpecError(f"empty summand in {text!r}")
        return DirectSum([_build(s) for s in summands], text)

    kind, sep, body = text.partition(":")
    if not sep:
        raise MatroidSpecError(f"missing constructor name in {text!r}")

    if kind == "uniform":
        values = _ints(body, "uniform")
        if len(values) != 2:
            raise MatroidSpecError("uniform takes R,N")
        return UniformMatroid(values[0], values[1], text)

    if kind == "pg":
        values = _ints(body, "pg")
        if len(values) != 2 or values[0] < 1:
            raise MatroidSpecError("pg takes D,Q with D >= 1")
        d, q = values
        if not sympy.isprime(q):
            raise MatroidSpecError(f"pg:{d},{q} needs a prime Q")
        return VectorMatroid(projective_points(d, q), q, text)

    if kind == "complete":
        values = _ints(body, "complete")
        if len(values) != 1 or values[0] < 1:
            raise MatroidSpecError("complete takes one positive M")
        return complete_graph_matroid(values[0], text)

    if kind == "graphic":
        inner = body.strip("[]")
        edges = []
        for raw in filter(None, inner.split(";")):
            match = _EDGE.fullmatch(raw)
            if not match:
                raise MatroidSpecError(f"cannot parse edge {raw!r}")
            edges.append((match.group(1), match.group(2)))
        if not edges:
            raise MatroidSpecError("graphic needs at least one edge")
        return GraphicMatroid(edges, text)

    if kind == "echelon":
        if not re.fullmatch(r"[01]+", body):
            raise MatroidSpecError(f"echelon takes a bit string, got {body!r}")
        return NestedMatroid([int(ch) for ch in body], text)

    if kind == "multipoint":
        loops_text, sep, sizes_text = body.partition(";")
        loops = _ints(loops_text, "multipoint loops")
        if len(loops) != 1 or loops[0] < 0:
            raise MatroidSpecError("multipoint takes L;M1,...,Mr with L >= 0")
        sizes = _ints(sizes_text, "multipoint sizes") if sizes_text else []
        if any(m < 1 for m in sizes):
            raise MatroidSpecError("multipoint sizes must be positive")
        parts = [UniformMatroid(0, loops[0])] if loops[0] else []
        parts += [UniformMatroid(1, m) for m in sizes]
        if not parts:
            raise MatroidSpecError("multipoint describes an empty matroid")
        return DirectSum(parts, text)

    if kind == "line":
        return ParallelClassMatroid(_ints(body, "line"), 2, text)

    if kind == "bases":
        match = re.fullmatch(r"(\d+),(\d+),\{(.*)\}", body)
        if not match:
            raise MatroidSpecError(f"bases takes N,R,{{...}}, got {body!r}")
        n, rank = int(match.group(1)), int(match.group(2))
        bases = []
        for raw in match.group(3).split(";"):
            elements = [int(tok) for tok in raw.replace(",", " ").split()]
            if any(not 1 <= e <= n for e in elements):
                raise MatroidSpecError(f"base {raw!r} has elements outside 1..{n}")
            if len(set(elements)) != len(elements):
                raise MatroidSpecError(f"base {raw!r} repeats an element")
            mask = 0
            for e in elements:
                mask |= 1 << (e - 1)
            bases.append(mask)
        return BasisMatroid(n, rank, bases, text)

    raise MatroidSpecError(f"unknown constructor {kind!r}")
