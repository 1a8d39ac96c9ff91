"""Maps from the plane that send the line ``u + v = 1`` into the hyperplane.

Pulling an element of J(n) back along such a map gives an element of J(2),
where the two-variable degree bound applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from planepoly.classes import in_J, require_H
from planepoly.polynomial import Polynomial, substitute


@dataclass(frozen=True)
class HyperplaneMap:
    """``n`` component polynomials in ``(u, v)`` whose sum lies in J(2)."""

    components: tuple
    provenance: str

    def __post_init__(self):
        if not self.components:
            raise ValueError("a map needs at least one component")
        if any(c.n != 2 for c in self.components):
            raise ValueError("components must be polynomials in two variables")
        if any(not c.is_nonnegative() for c in self.components):
            raise ValueError("components must have nonnegative coefficients")
        if not in_J(self.component_sum()):
            raise ValueError("component sum is not 1 on u + v = 1")

    @property
    def n(self) -> int:
        return len(self.components)

    def component_sum(self) -> Polynomial:
        return sum(self.components, Polynomial.zero(2))


def veronese_map(n: int) -> HyperplaneMap:
    """``(u^{n-1}, ..., C(n-1, j) u^j v^{n-1-j}, ..., v^{n-1})``."""
    if n < 2:
        raise ValueError("need n >= 2")
    k = n - 1
    comps = tuple(Polynomial(2, {(j, k - j): comb(k, j)}) for j in range(k, -1, -1))
    return HyperplaneMap(comps, f"veronese({k})")


def map_from_h2(q: Polynomial, n: int) -> HyperplaneMap:
    """One component per term of ``q``, padded with zeros to length ``n``.

    The pure ``u`` term goes first, the pure ``v`` term second, and mixed
    terms follow in canonical order.  Coefficients stay rational: a term
    ``c u^a v^b`` becomes the component ``c u^a v^b``.
    """
    if q.n != 2:
        raise ValueError("q must be a polynomial in two variables")
    require_H(q, "q")
    if q.num_terms > n:
        raise ValueError(f"q has {q.num_terms} terms, more than n = {n}")
    terms = list(q.terms)
    u_pure = [t for t in terms if t[0][1] == 0 and t[0][0] > 0]
    v_pure = [t for t in terms if t[0][0] == 0 and t[0][1] > 0]
    rest = [t for t in terms if t not in u_pure and t not in v_pure]
    ordered = u_pure + v_pure + rest
    comps = [Polynomial(2, {m: c}) for m, c in ordered]
    comps += [Polynomial.zero(2)] * (n - len(comps))
    return HyperplaneMap(tuple(comps), f"from_h2({q.degree})")


def pullback(p: Polynomial, phi: HyperplaneMap) -> Polynomial:
    if p.n != phi.n:
        raise ValueError(f"map has {phi.n} components, polynomial has {p.n} variables")
    return substitute(p, phi.components)


def linear_collapse(p: Polynomial, u_group: Sequence[int], v_group: Sequence[int]) -> Polynomial:
    """Set the ``u_group`` variables to ``u/k``, the ``v_group`` ones to ``v/l``, the rest to 0."""
    u_group, v_group = list(u_group), list(v_group)
    if not u_group or not v_group:
        raise ValueError("both groups must be nonempty")
    if len(set(u_group) | set(v_group)) != len(u_group) + len(v_group):
        raise ValueError("groups overlap or repeat an index")
    if any(not 0 <= i < p.n for i in u_group + v_group):
        raise ValueError("variable index out of range")
    u = Polynomial.variable(2, 0)
    v = Polynomial.variable(2, 1)
    images = [Polynomial.zero(2)] * p.n
    for i in u_group:
        images[i] = u * Fraction(1, len(u_group))
    for i in v_group:
        images[i] = v * Fraction(1, len(v_group))
    return substitute(p, images)


def linear_map(n: int, u_group: Sequence[int], v_group: Sequence[int]) -> HyperplaneMap:
    u = Polynomial.variable(2, 0)
    v = Polynomial.variable(2, 1)
    comps = [Polynomial.zero(2)] * n
    for i in u_group:
        comps[i] = u * Fraction(1, len(u_group))
    for i in v_group:
        comps[i] = v * Fraction(1, len(v_group))
    return HyperplaneMap(tuple(comps), f"linear({list(u_group)}|{list(v_group)})")


def restrict(p: Polynomial, pinned: Sequence[int], kept: Sequence[int]) -> Polynomial:
    """Set the ``pinned`` variables to ``xi/k`` (``k = len(pinned)``), zero the rest.

    The result has ``1 + len(kept)`` variables ordered ``(xi, kept...)``.
    """
    pinned, kept = list(pinned), list(kept)
    if set(pinned) & set(kept):
        raise ValueError("pinned and kept variables overlap")
    if len(set(pinned)) != len(pinned) or len(set(kept)) != len(kept):
        raise ValueError("repeated variable index")
    if any(not 0 <= i < p.n for i in pinned + kept):
        raise ValueError("variable index out of range")
    if not pinned:
        raise ValueError("need at least one pinned variable")
    m = 1 + len(kept)
    xi = Polynomial.variable(m, 0)
    images = [Polynomial.zero(m)] * p.n
    for i in pinned:
        images[i] = xi * Fraction(1, len(pinned))
    for pos, i in enumerate(kept, start=1):
        images[i] = Polynomial.variable(m, pos)
    return substitute(p, images)

