# File: tests/conftest.py

from fractions import Fraction

import pytest
import sympy

from config import settings
from models.polynomial import BivariatePolynomial


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Every test starts from default caps and a private cache directory."""
    settings.reset()
    monkeypatch.setenv("TUTTEFRAME_CACHE", str(tmp_path / "cache"))
    for name in ("TUTTEFRAME_MAX_DIRECT_N", "TUTTEFRAME_ENUM_CAP", "TUTTEFRAME_THREADS"):
        monkeypatch.delenv(name, raising=False)
    yield
    settings.reset()


def from_sympy(expr):
    """Converts a sympy expression in x, y to a BivariatePolynomial."""
    x, y = sympy.symbols("x y")
    poly = sympy.Poly(sympy.expand(expr), x, y)
    return BivariatePolynomial(
        {(i, j): Fraction(int(c.p), int(c.q)) for (i, j), c in poly.terms()}
    )
