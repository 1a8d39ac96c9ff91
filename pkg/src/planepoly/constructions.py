"""The X and W operations, Whitney chains and named polynomial families.

``op_x(p, u) = p - u + s*u`` agrees with ``p`` wherever ``s = 1``.  When
``u`` is a subpolynomial of ``p`` (``u`` and ``p - u`` nonnegative) the step
stays inside H(n); such steps are W steps, and the class W collects what
W steps reach from the constant 1 while raising the degree by one each time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from fractions import Fraction
from typing import Optional, Sequence

from planepoly import lp
from planepoly.classes import (
    in_H,
    is_subpolynomial,
    require_H,
    require_J,
)
from planepoly.polynomial import (
    Polynomial,
    ZERO_DEGREE,
    divide_exact,
    grlex_key,
    homogeneous_parts,
    s_form,
)


class SubpolynomialError(ValueError):
    """A W step was requested with ``u`` not a subpolynomial of ``p``."""


def op_x(p: Polynomial, u: Polynomial) -> Polynomial:
    if p.n != u.n:
        raise ValueError(f"variable count mismatch: {p.n} vs {u.n}")
    return p - u + s_form(p.n) * u


def op_w(p: Polynomial, u: Polynomial) -> Polynomial:
    if not is_subpolynomial(u, p):
        raise SubpolynomialError("u is not a subpolynomial of p")
    out = op_x(p, u)
    if __debug__ and not in_H(out):
        raise AssertionError("W step left H")
    return out


# -- Whitney chains -------------------------------------------------------------


@dataclass(frozen=True)
class WhitneyChain:
    n: int
    steps: tuple
    realized: tuple

    @classmethod
    def from_steps(cls, n: int, steps: Sequence[Polynomial]) -> "WhitneyChain":
        g = Polynomial.constant(n, 1)
        realized = [g]
        for u in steps:
            g = op_x(g, u)
            realized.append(g)
        chain = cls(n, tuple(steps), tuple(realized))
        chain.validate()
        return chain

    @property
    def result(self) -> Polynomial:
        return self.realized[-1]

    @property
    def length(self) -> int:
        return len(self.steps)

    def validate(self) -> None:
        """Raise ``ValueError`` unless every chain condition holds."""
        if len(self.realized) != len(self.steps) + 1:
            raise ValueError("realized list must be one longer than steps")
        if self.realized[0] != Polynomial.constant(self.n, 1):
            raise ValueError("chain must start at 1")
        for j, u in enumerate(self.steps, start=1):
            prev, cur = self.realized[j - 1], self.realized[j]
            if not is_subpolynomial(u, prev):
                raise ValueError(f"step {j}: u is not a subpolynomial of g_{j - 1}")
            if op_x(prev, u) != cur:
                raise ValueError(f"step {j}: g_{j} != X(g_{j - 1})")
            if cur.degree != j:
                raise ValueError(f"step {j}: degree {cur.degree} != {j}")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValueError:
            return False
        return True


def _last_top_term(g: Polynomial) -> Polynomial:
    top = g.top_part()
    m, c = top.terms[-1]
    return Polynomial(g.n, {m: c})


def _random_step(g: Polynomial, rng: random.Random) -> Polynomial:
    d = g.degree
    terms = g.terms
    top = [t for t in terms if sum(t[0]) == d]
    chosen = {rng.choice(top)}
    for t in terms:
        if rng.random() < 0.3:
            chosen.add(t)
    fracs = (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))
    return Polynomial(g.n, {m: c * rng.choice(fracs) for m, c in chosen})


def whitney_chain(
    n: int,
    d: int,
    strategy: str = "last-monomial",
    seed: Optional[int] = None,
    steps: Optional[Sequence[Polynomial]] = None,
) -> WhitneyChain:
    """Build a chain from 1 of length ``d``.

    ``last-monomial`` multiplies the canonically last top-degree term by
    ``s`` at each step, ``random`` draws a random subpolynomial containing a
    top-degree term, and ``scripted`` replays ``steps``.
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if strategy == "scripted":
        if steps is None or len(steps) != d:
            raise ValueError(f"scripted strategy needs exactly {d} steps")
        g = Polynomial.constant(n, 1)
        for j, u in enumerate(steps, start=1):
            if not is_subpolynomial(u, g):
                raise SubpolynomialError(f"scripted step {j} is not a subpolynomial")
            g = op_x(g, u)
        return WhitneyChain.from_steps(n, steps)
    if strategy == "last-monomial":
        pick = lambda g: _last_top_term(g)  # noqa: E731
    elif strategy == "random":
        rng = random.Random(seed)
        pick = lambda g: _random_step(g, rng)  # noqa: E731
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    g = Polynomial.constant(n, 1)
    chosen = []
    for _ in range(d):
        u = pick(g)
        chosen.append(u)
        g = op_w(g, u)
    return WhitneyChain.from_steps(n, chosen)


# -- families --------------------------------------------------------------------


def family_gd(n: int, d: int) -> Polynomial:
    """``x_n^d + (x_1 + ... + x_{n-1}) (1 + x_n + ... + x_n^{d-1})``."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    xn = Polynomial.variable(n, n - 1)
    geometric = sum((xn**k for k in range(d)), Polynomial.zero(n))
    return xn**d + Polynomial.linear_sum(n, range(n - 1)) * geometric


def _check_odd(d: int) -> None:
    if not isinstance(d, int) or d < 1 or d % 2 == 0:
        raise ValueError(f"degree must be a positive odd integer, got {d!r}")


def family_pd(d: int) -> Polynomial:
    """Sharp two-variable family, via power sums of the roots of ``t^2 - x t - y``.

    The two roots have sum ``x`` and product ``-y``, so their power sums obey
    ``S_k = x S_{k-1} + y S_{k-2}`` with ``S_0 = 2``, ``S_1 = x``; the family
    is ``S_d + y^d``.
    """
    _check_odd(d)
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    prev, cur = Polynomial.constant(2, 2), x
    for _ in range(d - 1):
        prev, cur = cur, x * cur + y * prev
    return cur + y**d


def family_pd_recurrence(d: int) -> Polynomial:
    """Same family from ``g_{k+2} = (x^2 + 2y) g_{k+1} - y^2 g_k``."""
    _check_odd(d)
    k = (d - 1) // 2
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    g0, g1 = x, x**3 + 3 * x * y
    step = x * x + 2 * y
    for _ in range(k):
        g0, g1 = g1, step * g1 - y * y * g0
    return g0 + y**d


def family_unbounded(n: int, d: int) -> Polynomial:
    """``x1^{d-1} s - x1^{d-1} + 1``: in J, n + 2 terms, arbitrary degree, not in P."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    lead = Polynomial.variable(n, 0) ** (d - 1)
    return lead * s_form(n) - lead + 1


family_eq2 = family_unbounded


def minimal_affine_h2(d: int) -> Polynomial:
    """``x^d + y (x^{d-1} + ... + x + 1)``."""
    if d < 1:
        raise ValueError("need d >= 1")
    return family_gd(2, d).permute([1, 0])


def symmetric_cubic(n: int) -> Polynomial:
    """``sum x_j^3 + 3 sum_{i<j} x_i x_j``; in H only for n = 2.

    Coefficient 3 per unordered pair, so that n = 2 gives ``x^3 + 3xy + y^3``.
    """
    out = {}
    for i in range(n):
        e = [0] * n
        e[i] = 3
        out[tuple(e)] = 1
        for j in range(i + 1, n):
            e = [0] * n
            e[i] = e[j] = 1
            out[tuple(e)] = 3
    return Polynomial(n, out)


# -- homogenization and chain decomposition --------------------------------------


def homogenize_to_sd(p: Polynomial):
    """Push the lowest homogeneous part up by ``s`` until ``p`` is homogeneous.

    Returns ``(steps, result)``; ``result`` is ``s^d`` and also equals
    ``sum_j p_j s^{d-j}``, both checked exactly.
    """
    require_H(p)
    d = p.degree
    s = s_form(p.n)
    parts = homogeneous_parts(p)
    steps = []
    cur = p
    while not cur.is_homogeneous():
        low = min(sum(m) for m in cur.support)
        u = cur.homogeneous_part(low)
        steps.append(u)
        cur = op_w(cur, u)
    target = s**d
    if cur != target:
        raise ArithmeticError("homogenization did not reach s^d")
    weighted = sum((parts[j] * s ** (d - j) for j in range(d + 1)), Polynomial.zero(p.n))
    if weighted != target:
        raise ArithmeticError("sum of p_j s^(d-j) differs from s^d")
    return steps, cur


def undo_top(p: Polynomial):
    """Write ``p = (p - p_d) + s r`` and return ``(p - p_d + r, r)``.

    ``r = s^{d-1} - sum_{j<d} p_j s^{d-j-1}``; the first component is in
    J(n) with degree at most d - 1, and ``op_x`` of it by ``r`` is ``p``.
    """
    d = p.degree
    if d == ZERO_DEGREE or d < 1:
        raise ValueError("undo_top needs degree at least 1")
    s = s_form(p.n)
    parts = homogeneous_parts(p)
    r = s ** (d - 1)
    for j in range(d):
        if not parts[j].is_zero():
            r = r - parts[j] * s ** (d - j - 1)
    if p - parts[d] + s * r != p:
        raise ArithmeticError("p_d != s r; p is not in J")
    return p - parts[d] + r, r


def chain_decompose(p: Polynomial) -> list:
    """Steps ``r_1, ..., r_t`` with ``p = X_{r_t}(... X_{r_1}(1))``.

    Intermediate polynomials, and the steps, may have negative coefficients.
    """
    require_J(p)
    steps = []
    cur = p
    while cur.degree != 0:
        cur, r = undo_top(cur)
        steps.append(r)
    steps.reverse()
    return steps


def replay(n: int, steps: Sequence[Polynomial]) -> Polynomial:
    g = Polynomial.constant(n, 1)
    for u in steps:
        g = op_x(g, u)
    return g


# -- affine polynomials ------------------------------------------------------------


def is_affine_in(p: Polynomial, j: int) -> bool:
    if not 0 <= j < p.n:
        raise ValueError(f"variable index {j} out of range")
    return all(m[j] <= 1 for m in p.support)


def affine_chain(p: Polynomial) -> WhitneyChain:
    """Whitney chain for an element of H affine in some variable.

    Writing the top part as ``a_d + x_j b_{d-1}``, the last step is
    ``u = b_{d-1}`` and the previous polynomial ``p - p_d + b_{d-1}`` is again
    affine in ``x_j``.
    """
    require_H(p)
    j = next((i for i in range(p.n) if is_affine_in(p, i)), None)
    if j is None:
        raise ValueError("polynomial is not affine in any variable")
    s = s_form(p.n)
    steps = []
    cur = p
    while cur.degree > 0:
        top = cur.top_part()
        b = {}
        for m, c in top.as_dict().items():
            if m[j] == 1:
                e = list(m)
                e[j] = 0
                b[tuple(e)] = c
        u = Polynomial(p.n, b)
        if s * u != top:
            raise ArithmeticError("top part is not s times its x_j coefficient")
        steps.append(u)
        cur = cur - top + u
    if cur != Polynomial.constant(p.n, 1):
        raise ArithmeticError("affine reduction did not end at 1")
    steps.reverse()
    return WhitneyChain.from_steps(p.n, steps)


# -- deciding membership in W, within a budget -----------------------------------

IN_W = "IN_W"
NOT_IN_W = "NOT_IN_W"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class WVerdict:
    status: str
    chain: Optional[WhitneyChain] = None
    obstruction: Optional[dict] = None
    nodes: int = 0


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def _forced_top(p: Polynomial, level: int, base: Polynomial) -> tuple:
    """Divide ``base`` by ``s``; return ``(quotient, obstruction_or_None)``."""
    q = divide_exact(base, s_form(p.n))
    if q is None:
        return None, {"level": level, "reason": "not_divisible", "polynomial": base}
    if not q.is_nonnegative():
        return q, {"level": level, "reason": "negative_quotient", "polynomial": base, "quotient": q}
    return q, None


def check_obstruction(p: Polynomial, obstruction: dict) -> bool:
    """Recompute a NOT_IN_W obstruction from ``p`` alone."""
    d = p.degree
    parts = homogeneous_parts(p)
    s = s_form(p.n)
    if obstruction["level"] == 0:
        base = parts[d]
    elif obstruction["level"] == 1:
        if d < 2:
            return False
        u0 = divide_exact(parts[d], s)
        if u0 is None or not u0.is_nonnegative():
            return False
        base = parts[d - 1] + u0
    else:
        return False
    if base != obstruction["polynomial"]:
        return False
    q = divide_exact(base, s)
    if obstruction["reason"] == "not_divisible":
        return q is None
    if obstruction["reason"] == "negative_quotient":
        return q is not None and not q.is_nonnegative()
    return False


def _lower_candidates(p: Polynomial) -> list:
    # monomials m of degree <= d-2 with x_i m in supp(p) for every i
    n = p.n
    d = p.degree
    supp = set(p.support)
    out = set()
    for M in supp:
        if not 1 <= sum(M) <= d - 1:
            continue
        for i in range(n):
            if not M[i]:
                continue
            m = M[:i] + (M[i] - 1,) + M[i + 1 :]
            if all(m[:k] + (m[k] + 1,) + m[k + 1 :] in supp for k in range(n)):
                out.add(m)
    return sorted(out, key=grlex_key, reverse=True)


def _lower_lp(p: Polynomial, u0: Polynomial, mons: Sequence) -> Optional[Polynomial]:
    """Strictly positive coefficients on ``mons`` with ``p - s(u0 + low) >= 0``."""
    n = p.n
    k = len(mons)
    shifted: dict = {}
    for idx, m in enumerate(mons):
        for i in range(n):
            M = list(m)
            M[i] += 1
            shifted.setdefault(tuple(M), []).append(idx)
    base = p - s_form(n) * u0
    # variables: c' (k), t+ , t-  with c = c' + t
    A_ub, b_ub = [], []
    for M, idxs in sorted(shifted.items()):
        row = [0] * (k + 2)
        for idx in idxs:
            row[idx] += 1
        row[k] = len(idxs)
        row[k + 1] = -len(idxs)
        A_ub.append(row)
        b_ub.append(base.coefficient(M))
    # cap t so the LP stays bounded
    row = [0] * (k + 2)
    row[k], row[k + 1] = 1, -1
    A_ub.append(row)
    b_ub.append(1)
    res = lp.maximize([0] * k + [1, -1], A_ub=A_ub, b_ub=b_ub)
    if res.status != lp.OPTIMAL:
        return None
    t = res.x[k] - res.x[k + 1]
    if t <= 0:
        return None
    return Polynomial(n, {m: res.x[i] + t for i, m in enumerate(mons)})


def _w_search(p: Polynomial, budget: _Budget):
    if not budget.spend():
        return UNKNOWN, None, None
    d = p.degree
    n = p.n
    s = s_form(n)
    if d == 0:
        return (IN_W, [], None) if p == Polynomial.constant(n, 1) else (NOT_IN_W, None, None)
    parts = homogeneous_parts(p)
    u0, obstruction = _forced_top(p, 0, parts[d])
    if obstruction:
        return NOT_IN_W, None, obstruction
    if d >= 2:
        _, obstruction = _forced_top(p, 1, parts[d - 1] + u0)
        if obstruction:
            return NOT_IN_W, None, obstruction
    undecided = False
    g = p - parts[d] + u0
    if g.degree == d - 1:
        status, chain, _ = _w_search(g, budget)
        if status == IN_W:
            return IN_W, chain + [u0], None
        undecided = status == UNKNOWN
    if d == 1:
        # u is forced entirely; nothing else to try
        return (UNKNOWN, None, None) if undecided else (NOT_IN_W, None, None)
    for size in range(1, len(mons := _lower_candidates(p)) + 1):
        for subset in combinations(mons, size):
            if not budget.spend():
                return UNKNOWN, None, None
            low = _lower_lp(p, u0, subset)
            if low is None:
                continue
            u = u0 + low
            g = p - s * u + u
            if g.degree != d - 1 or not in_H(g):
                continue
            status, chain, _ = _w_search(g, budget)
            if status == IN_W:
                return IN_W, chain + [u], None
    # one vertex per lower support was tried, so exhausting them proves nothing
    return UNKNOWN, None, None


def w_membership(p: Polynomial, budget: int = 10_000) -> WVerdict:
    """Three-valued, sound decision of membership in W.

    IN_W comes with a validated chain.  NOT_IN_W is reported only for
    obstructions that hold for every possible last step: the top part of the
    last step is forced to be ``p_d / s``, and the top part of the step before
    is forced up to a nonnegative correction that can only lower it.
    """
    require_H(p)
    b = _Budget(budget)
    status, steps, obstruction = _w_search(p, b)
    if status == IN_W:
        chain = WhitneyChain.from_steps(p.n, steps)
        if chain.result != p:
            raise ArithmeticError("W witness does not reproduce p")
        return WVerdict(IN_W, chain=chain, nodes=b.used)
    if status == NOT_IN_W and obstruction is not None and obstruction.get("reason") in (
        "not_divisible",
        "negative_quotient",
    ) and check_obstruction(p, obstruction):
        return WVerdict(NOT_IN_W, obstruction=obstruction, nodes=b.used)
    return WVerdict(UNKNOWN, nodes=b.used)
