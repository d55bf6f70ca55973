# File: utils/formatting.py

import json
from fractions import Fraction

import sympy

from models.polynomial import BivariatePolynomial, Tableau
from models.tensor import FlatTensor

FORMATS = ("tableau", "text", "json", "poly")


def format_coefficient(c):
    """Exact coefficient as text: "7", "-2/45"; zero is blank."""
    if not c:
        return ""
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_tableau(poly, n, r, fmt="text"):
    """
    Renders a polynomial as a tableau, JSON or an expression.

    The text layout puts x-degree i on row i (top row i = 0) and y-degree j
    in column j; zeros are blank and columns are right-aligned.

    Args:
        poly (BivariatePolynomial): The polynomial.
        n (int): Ground-set size recorded in JSON output.
        r (int): Rank; rows 0..r.
        fmt (str): "text"/"tableau", "json" or "poly".

    Returns:
        str: The rendering, newline-terminated.
    """
    if fmt == "json":
        return json.dumps(polynomial_to_json(poly, n, r), indent=2) + "\n"
    if fmt == "poly":
        return polynomial_to_expression(poly) + "\n"
    if fmt not in ("text", "tableau"):
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    tableau = Tableau.from_polynomial(poly, n, r)
    columns = max((len(row) for row in tableau.rows), default=0)
    widths = [1] * columns
    for row in tableau.rows:
        for j, c in enumerate(row):
            widths[j] = max(widths[j], len(format_coefficient(c)))
    lines = []
    for row in tableau.rows:
        cells = [format_coefficient(row[j]) if j < len(row) else "" for j in range(columns)]
        lines.append(" ".join(cell.rjust(widths[j]) for j, cell in enumerate(cells)).rstrip())
    return "\n".join(lines) + "\n"


def parse_tableau(text):
    """
    Inverse of the text rendering.

    Columns are recovered from the right edges of the numbers; a column left
    blank in every row occupies one space plus the separator.
    """
    rows = [line.rstrip() for line in text.rstrip("\n").split("\n")]
    tokens = []
    for i, line in enumerate(rows):
        start = None
        for pos, ch in enumerate(line + " "):
            if ch != " " and start is None:
                start = pos
            elif ch == " " and start is not None:
                tokens.append((i, pos - 1, line[start:pos]))
                start = None
    widths = {}
    for _, edge, token in tokens:
        widths[edge] = max(widths.get(edge, 0), len(token))
    column_of = {}
    column, cursor = 0, 0
    for edge in sorted(widths):
        blank = (edge - cursor + 1 - widths[edge]) // 2
        column += blank
        column_of[edge] = column
        cursor = edge + 2
        column += 1
    return BivariatePolynomial({(i, column_of[edge]): Fraction(token) for i, edge, token in tokens})


def polynomial_to_json(poly, n, r):
    return {
        "n": n,
        "r": r,
        "terms": [{"i": i, "j": j, "c": format_coefficient(c)} for (i, j), c in poly.items()],
    }


def polynomial_from_json(payload):
    """Returns (polynomial, n, r) from the JSON schema."""
    if isinstance(payload, str):
        payload = json.loads(payload)
    poly = BivariatePolynomial({(t["i"], t["j"]): Fraction(t["c"]) for t in payload["terms"]})
    return poly, payload["n"], payload["r"]


def decomposition_to_json(decomposition):
    """JSON form of a frame_decomposition result."""
    r, n, lead = decomposition["uniform"]
    return {
        "loops": decomposition["loops"],
        "uniform": {"r": r, "n": n, "c": format_coefficient(lead)},
        "terms": [
            {
                "k": term["k"],
                "h": term["h"],
                "c": format_coefficient(term["coefficient"]),
                "x_power": term["x_power"],
                "tau": list(term["tau"]),
            }
            for term in decomposition["terms"]
        ],
    }


def polynomial_to_expression(poly):
    x, y = sympy.symbols("x y")
    expr = sum(
        (sympy.Rational(c.numerator, c.denominator) * x ** i * y ** j for (i, j), c in poly.items()),
        sympy.Integer(0),
    )
    if expr == 0:
        return "0"
    return str(sympy.Poly(expr, x, y).as_expr())


def tensor_to_json(tensor, unsigned=False):
    return {
        "n": tensor.n,
        "r": tensor.r,
        "entries": [
            {
                "k": k, "m": m, "t": t,
                "f": abs(v) if unsigned else v,
                "auxiliary": FlatTensor.is_auxiliary((k, m, t)),
            }
            for (k, m, t), v in tensor.items()
        ],
    }


def ftableau_to_json(ftableau):
    return {
        "n": ftableau.n,
        "r": ftableau.r,
        "entries": [{"i": i, "j": j, "F": v} for (i, j), v in ftableau.items()],
    }


def render_tensor(tensor, unsigned=False):
    """
    Diagonal text layout of a flat tensor.

    f^t_{k,m} sits at row r-k-t, column m-k-t, so raising t moves an entry one
    step up and one step left. Entries that share a cell are joined by "|".
    """
    cells = {}
    for (k, m, t), v in tensor.principal_items():
        value = abs(v) if unsigned else v
        cells.setdefault((tensor.r - k - t, m - k - t), []).append(str(value))
    if not cells:
        return "(empty flat tensor)\n"
    height = max(i for i, _ in cells) + 1
    width = max(j for _, j in cells) + 1
    grid = [["." for _ in range(width)] for _ in range(height)]
    for (i, j), values in cells.items():
        grid[i][j] = "|".join(values)
    widths = [max(len(grid[i][j]) for i in range(height)) for j in range(width)]
    lines = [" ".join(grid[i][j].rjust(widths[j]) for j in range(width)).rstrip() for i in range(height)]
    legend = "cell (r-k-t, m-k-t) holds f^t_{k,m}; shared cells joined by '|'"
    return "\n".join(lines) + "\n" + legend + "\n"


def render_ftableau(ftableau, fmt="text"):
    if fmt == "json":
        return json.dumps(ftableau_to_json(ftableau), indent=2) + "\n"
    lines = [f"F[{i},{j}] = {v}" for (i, j), v in ftableau.items()]
    return "\n".join(lines) + "\n" if lines else "(empty F-tableau)\n"
