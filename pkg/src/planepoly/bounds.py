"""Degree and term-count bounds for elements of H(n, d).

Every bound is an exact :class:`~fractions.Fraction`; a degree bound is
satisfied when ``d <= value``.  Nothing is floored here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from planepoly.classes import require_H
from planepoly.polynomial import Monomial, Polynomial, is_pure


def binom_bound(n: int, d: int) -> int:
    """Number of monomials of degree at most ``d`` in ``n`` variables."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return comb(n + d, n)


def c_const(n: int) -> Fraction:
    return Fraction(comb(n - 1, 2), n * (2 * n - 3))


@dataclass(frozen=True)
class DegreeBounds:
    n: int
    N: int
    two_variable: Optional[Fraction]  # n = 2 only
    veronese: Fraction
    two_variable_top: Fraction  # needs a top monomial in at most two variables
    general: Fraction
    general_relaxed: Fraction
    conjecture: Fraction


def degree_bounds(n: int, N: int) -> DegreeBounds:
    if n < 2:
        raise ValueError("no degree bound exists for n < 2")
    if N < 1:
        raise ValueError("need N >= 1")
    a = 2 * N - 3
    return DegreeBounds(
        n=n,
        N=N,
        two_variable=Fraction(a) if n == 2 else None,
        veronese=Fraction(a, n - 1),
        two_variable_top=Fraction(a, 2 * n - 3),
        general=Fraction(2 * n * a, 3 * n * n - 3 * n - 2),
        general_relaxed=Fraction(4, 3) * Fraction(a, 2 * n - 3),
        conjecture=Fraction(N - 1, n - 1),
    )


@dataclass(frozen=True)
class TopMonomialBounds:
    k: int
    excess: int
    by_variables: Fraction
    by_excess: Fraction


def bound_top_monomial(n: int, N: int, m: Monomial) -> TopMonomialBounds:
    """Bounds from a top-degree monomial in ``k >= 2`` variables.

    ``excess = sum_{j>=3} (j-2) a_j`` over the exponents sorted descending.
    """
    a = sorted((e for e in m if e), reverse=True)
    k = len(a)
    if k < 2 or k > n:
        raise ValueError(f"monomial involves {k} variables; need 2 <= k <= n = {n}")
    excess = sum((j - 2) * a[j - 1] for j in range(3, k + 1))
    return TopMonomialBounds(
        k=k,
        excess=excess,
        by_variables=Fraction(2 * N - 2 * k + 1, 2 * n - 2 * k + 1),
        by_excess=Fraction(2 * N - 3 + excess, 2 * n - 3),
    )


def staircase_max_degree(n: int, N: int) -> Optional[int]:
    """Largest degree allowed by term count alone for n >= 3, or ``None`` past ``4n - 4``."""
    if n < 3:
        raise ValueError("the staircase needs n >= 3")
    if N < n:
        return 0
    if N < 2 * n - 1:
        return 1
    if N < 3 * n - 2:
        return 2
    if N < 4 * n - 3:
        return 3
    return None


def large_dimension_threshold(d: int) -> int:
    if d < 1:
        raise ValueError("need d >= 1")
    return 2 * d * d + 2 * d


# alternative names
bound_lemma5 = bound_top_monomial
theorem2_threshold = large_dimension_threshold


def conjecture_proved(n: int, d: int, N: Optional[int] = None) -> bool:
    """Whether ``N >= d(n-1) + 1`` is a theorem for these parameters (n >= 3)."""
    if n < 3:
        return False
    if d <= 4 or n >= large_dimension_threshold(max(d, 1)):
        return True
    return N is not None and N < 4 * n - 3


@dataclass(frozen=True)
class TermLowerBound:
    value: int
    proved: bool
    source: str
    conjectured: int


def min_term_lower_bound(n: int, d: int) -> TermLowerBound:
    """Strongest proved lower bound on the number of terms of an element of H(n, d)."""
    if n <= 1:
        raise ValueError("no bound for n <= 1: one variable admits any degree with one term")
    if d < 0:
        raise ValueError("need d >= 0")
    if d == 0:
        return TermLowerBound(1, True, "constant", 1)
    if n == 2:
        v = math.ceil(Fraction(d + 3, 2))
        return TermLowerBound(v, True, "two-variable sharp bound", v)
    conj = d * (n - 1) + 1
    if d <= 4:
        return TermLowerBound(conj, True, "degree at most 4", conj)
    if n >= large_dimension_threshold(d):
        return TermLowerBound(conj, True, "large dimension", conj)
    candidates = {
        "staircase": 4 * n - 3,
        "general bound": math.ceil((Fraction(d * (3 * n * n - 3 * n - 2), 2 * n) + 3) / 2),
        "veronese pullback": math.ceil(Fraction(d * (n - 1) + 3, 2)),
    }
    source = max(candidates, key=lambda k: candidates[k])
    return TermLowerBound(candidates[source], True, source, conj)


# -- per-polynomial report --------------------------------------------------------


@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: Fraction
    observed: int
    relation: str  # "<=": observed <= value, ">=": observed >= value
    applicable: bool
    satisfied: bool
    binding: bool = True
    witness: Optional[Monomial] = None

    @property
    def violated(self) -> bool:
        return self.applicable and self.binding and not self.satisfied


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    N: int
    entries: tuple = field(default_factory=tuple)

    @property
    def violations(self) -> list:
        return [e for e in self.entries if e.violated]

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json_obj(self) -> dict:
        from planepoly.serialize import format_rational

        return {
            "n": self.n,
            "d": self.d,
            "N": self.N,
            "entries": [
                {
                    "name": e.name,
                    "value": format_rational(e.value),
                    "observed": e.observed,
                    "relation": e.relation,
                    "applicable": e.applicable,
                    "satisfied": e.satisfied,
                    "binding": e.binding,
                    "witness": list(e.witness) if e.witness is not None else None,
                }
                for e in self.entries
            ],
            "violations": [e.name for e in self.violations],
        }


def _entry(name, value, observed, relation, applicable, binding=True, witness=None) -> BoundEntry:
    value = Fraction(value)
    ok = observed <= value if relation == "<=" else observed >= value
    return BoundEntry(name, value, observed, relation, applicable, ok, binding, witness)


def bound_report(p: Polynomial) -> BoundReport:
    require_H(p)
    n, d, N = p.n, p.degree, p.num_terms
    if n < 2:
        raise ValueError("bounds need n >= 2")
    positive = d >= 1
    db = degree_bounds(n, N)
    support = p.support
    top = [m for m in support if sum(m) == d]
    entries = []

    if n == 2:
        entries.append(_entry("two_variable", db.two_variable, d, "<=", positive))
        mixed = sum(1 for m in support if not is_pure(m))
        pure = sum(1 for m in support if is_pure(m) and any(m))
        entries.append(_entry("two_variable_mixed", math.ceil(Fraction(d - 1, 2)), mixed, ">=", positive))
        entries.append(_entry("two_variable_pure", 2, pure, ">=", positive))

    entries.append(_entry("veronese", db.veronese, d, "<=", positive))

    few = [m for m in top if sum(1 for a in m if a) <= 2]
    entries.append(_entry("two_variable_top", db.two_variable_top, d, "<=", positive and bool(few), witness=few[0] if few else None))

    multi = [m for m in top if sum(1 for a in m if a) >= 2]
    if positive and multi:
        bv = min(multi, key=lambda m: bound_top_monomial(n, N, m).by_variables)
        be = min(multi, key=lambda m: bound_top_monomial(n, N, m).by_excess)
        entries.append(_entry("top_variables", bound_top_monomial(n, N, bv).by_variables, d, "<=", True, witness=bv))
        entries.append(_entry("top_excess", bound_top_monomial(n, N, be).by_excess, d, "<=", True, witness=be))
    else:
        entries.append(_entry("top_variables", 0, d, "<=", False))
        entries.append(_entry("top_excess", 0, d, "<=", False))

    entries.append(_entry("general", db.general, d, "<=", positive))

    if n >= 3:
        stair = staircase_max_degree(n, N)
        entries.append(_entry("staircase", stair if stair is not None else 0, d, "<=", stair is not None))

    entries.append(_entry("top_terms", n, len(top), ">=", positive))

    if n >= 3:
        entries.append(
            _entry("conjecture", db.conjecture, d, "<=", positive, binding=conjecture_proved(n, d, N))
        )
    return BoundReport(n=n, d=d, N=N, entries=tuple(entries))
