"""Text and JSON forms of polynomials.

Polynomial JSON is ``{"vars": n, "terms": [{"c": "3/2", "e": [2, 0, 1]}, ...]}``
with terms in canonical order.  Text uses ``x, y, z`` for up to three
variables and ``x1 .. xn`` otherwise; the parser accepts both.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from planepoly.polynomial import Polynomial

ALIASES = ("x", "y", "z")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"-?\d+(/\d+)?", text.strip()):
        raise ValueError(f"not a rational: {text!r}")
    value = Fraction(text.strip())
    return value


def variable_names(n: int) -> list:
    return list(ALIASES[:n]) if n <= len(ALIASES) else [f"x{i + 1}" for i in range(n)]


def _monomial_text(m, names) -> str:
    parts = []
    for name, a in zip(names, m):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def to_text(p: Polynomial, float_coefficients: bool = False) -> str:
    if p.is_zero():
        return "0"
    names = variable_names(p.n)
    out = []
    for i, (m, c) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = _monomial_text(m, names)
        coeff = f"{float(c):.6g}" if float_coefficients else format_rational(c)
        if not mono:
            body = coeff
        elif c == 1:
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+|[xyz])|(?P<op>[-+*^()]))"
)


def _tokens(expr: str):
    pos = 0
    expr = expr.rstrip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {expr[pos]!r}", pos)
        kind = m.lastgroup
        yield kind, m.group(kind), m.start(kind)
        pos = m.end()
    yield "end", "", len(expr)


def _var_index(name: str) -> int:
    if name in ALIASES:
        return ALIASES.index(name)
    return int(name[1:]) - 1


def parse_text(expr: str, n: int | None = None) -> Polynomial:
    """Parse a signed sum of terms such as ``"x^3 + 3*x*y + y^3"``.

    Juxtaposition multiplies (``"7/2 x^5 y"``).  Parentheses are not
    supported.  The variable count is inferred from the highest variable
    used unless ``n`` is given.
    """
    toks = list(_tokens(expr))
    terms = []
    i = 0
    max_var = -1
    expect_term = True
    sign = 1
    while True:
        kind, val, pos = toks[i]
        if kind == "end":
            if expect_term:
                raise ParseError("expected a term", pos)
            break
        if not expect_term:
            if kind == "op" and val in "+-":
                sign = 1 if val == "+" else -1
                expect_term = True
                i += 1
                continue
            raise ParseError(f"expected '+' or '-', got {val!r}", pos)
        if kind == "op" and val in "+-" and not terms and sign == 1:
            sign = 1 if val == "+" else -1
            i += 1
            kind, val, pos = toks[i]
        coeff = Fraction(1)
        powers: dict = {}
        factors = 0
        while True:
            kind, val, pos = toks[i]
            if kind == "num":
                try:
                    coeff *= Fraction(val)
                except ZeroDivisionError:
                    raise ParseError("zero denominator", pos) from None
                i += 1
            elif kind == "var":
                k = _var_index(val)
                if k < 0:
                    raise ParseError(f"bad variable {val!r}", pos)
                i += 1
                exp = 1
                if toks[i][0] == "op" and toks[i][1] == "^":
                    nk, nv, npos = toks[i + 1]
                    if nk != "num" or "/" in nv:
                        raise ParseError("exponent must be a nonnegative integer", npos)
                    exp = int(nv)
                    i += 2
                powers[k] = powers.get(k, 0) + exp
                max_var = max(max_var, k)
            else:
                raise ParseError(f"unexpected {val!r}", pos)
            factors += 1
            kind, val, pos = toks[i]
            if kind == "op" and val == "*":
                i += 1
                if toks[i][0] not in ("num", "var"):
                    raise ParseError("expected a factor after '*'", toks[i][2])
                continue
            if kind in ("num", "var"):
                continue
            break
        terms.append((sign * coeff, powers))
        sign = 1
        expect_term = False
    nvars = n if n is not None else max(max_var + 1, 1)
    if max_var >= nvars:
        raise ValueError(f"variable index {max_var + 1} out of range for {nvars} variables")
    out: dict = {}
    for c, powers in terms:
        e = [0] * nvars
        for k, a in powers.items():
            e[k] = a
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return Polynomial(nvars, out)


def to_json_obj(p: Polynomial) -> dict:
    return {
        "vars": p.n,
        "terms": [{"c": format_rational(c), "e": list(m)} for m, c in p.terms],
    }


def from_json_obj(obj) -> Polynomial:
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise ValueError("polynomial JSON needs 'vars' and 'terms'")
    n = obj["vars"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"bad variable count {n!r}")
    coeffs: dict = {}
    for t in obj["terms"]:
        e = tuple(t["e"])
        if e in coeffs:
            raise ValueError(f"duplicate exponent {list(e)}")
        c = t["c"]
        if isinstance(c, bool) or not isinstance(c, (str, int)):
            raise ValueError(f"coefficient must be a rational string, got {c!r}")
        coeffs[e] = parse_rational(str(c))
    return Polynomial(n, coeffs)


def dumps(p: Polynomial) -> str:
    return json.dumps(to_json_obj(p), separators=(", ", ": ")) + "\n"


def loads(text: str) -> Polynomial:
    return from_json_obj(json.loads(text))


def read_polynomial(text: str) -> Polynomial:
    """Accept either polynomial JSON or the text grammar."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return loads(stripped)
    return parse_text(stripped)
