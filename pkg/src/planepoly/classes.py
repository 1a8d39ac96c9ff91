"""Membership in J(n), P(n), H(n) and the quotient Q(p) = (p - 1)/(s - 1).

J(n) holds the polynomials equal to 1 on the hyperplane ``x1 + ... + xn = 1``,
P(n) those with nonnegative coefficients, and H(n) their intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from planepoly.polynomial import Polynomial, ZERO_DEGREE, s_form


class MembershipError(ValueError):
    """A polynomial is not in the class an operation requires."""


@dataclass(frozen=True)
class Membership:
    in_J: bool
    in_P: bool
    in_H: bool
    degree: object
    quotient: Optional[Polynomial]


def _split_first_variable(p: Polynomial) -> dict:
    """Group ``p`` by the power of ``x1``: ``{k: coefficient polynomial}``."""
    groups: dict = {}
    for m, c in p.as_dict().items():
        rest = (0,) + m[1:]
        groups.setdefault(m[0], {})[rest] = c
    return {k: Polynomial(p.n, v) for k, v in groups.items()}


def quotient_q(p: Polynomial):
    """Divide ``p - 1`` by ``s - 1`` treating it as a polynomial in ``x1``.

    Synthetic division against ``x1 - a`` with ``a = 1 - (x2 + ... + xn)``.
    Returns ``(Q, remainder)`` with ``p - 1 = (s - 1) Q + remainder``; the
    remainder is free of ``x1`` and vanishes exactly when ``p`` is in J(n).
    """
    n = p.n
    a = Polynomial.constant(n, 1) - Polynomial.linear_sum(n, range(1, n))
    groups = _split_first_variable(p - 1)
    if not groups:
        return Polynomial.zero(n), Polynomial.zero(n)
    top = max(groups)
    zero = Polynomial.zero(n)
    # Horner: b_{k-1} = C_k + a * b_k
    carry = zero
    quotient_parts = {}
    for k in range(top, 0, -1):
        carry = groups.get(k, zero) + a * carry
        quotient_parts[k - 1] = carry
    remainder = groups.get(0, zero) + a * carry
    x1 = Polynomial.variable(n, 0)
    q = zero
    for k, coeff in quotient_parts.items():
        if not coeff.is_zero():
            q = q + coeff * x1**k
    return q, remainder


def in_J(p: Polynomial) -> bool:
    return quotient_q(p)[1].is_zero()


def in_P(p: Polynomial) -> bool:
    return p.is_nonnegative()


def membership(p: Polynomial) -> Membership:
    q, rem = quotient_q(p)
    j = rem.is_zero()
    pos = p.is_nonnegative()
    return Membership(in_J=j, in_P=pos, in_H=j and pos, degree=p.degree, quotient=q if j else None)


def in_H(p: Polynomial) -> bool:
    return p.is_nonnegative() and in_J(p)


def require_H(p: Polynomial, what: str = "polynomial") -> None:
    if not p.is_nonnegative():
        raise MembershipError(f"{what} has a negative coefficient, not in H({p.n})")
    if not in_J(p):
        raise MembershipError(f"{what} is not identically 1 on the hyperplane, not in H({p.n})")


def require_J(p: Polynomial, what: str = "polynomial") -> None:
    if not in_J(p):
        raise MembershipError(f"{what} is not identically 1 on the hyperplane, not in J({p.n})")


def is_subpolynomial(g: Polynomial, p: Polynomial) -> bool:
    """``g`` and ``p - g`` both have nonnegative coefficients."""
    if g.n != p.n:
        raise ValueError(f"variable count mismatch: {g.n} vs {p.n}")
    return g.is_nonnegative() and (p - g).is_nonnegative()


def convex_combination(ps: Sequence[Polynomial], weights: Sequence) -> Polynomial:
    if len(ps) != len(weights) or not ps:
        raise ValueError("need one weight per polynomial")
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws) or sum(ws) != 1:
        raise ValueError("weights must be nonnegative and sum to 1")
    n = ps[0].n
    out = Polynomial.zero(n)
    for p, w in zip(ps, ws):
        if p.n != n:
            raise ValueError("polynomials do not share a variable count")
        out = out + p * w
    return out


def is_homogeneous_unit(h: Polynomial) -> bool:
    """A homogeneous ``h`` of degree d is in J exactly when ``h == s**d``."""
    if not h.is_homogeneous() or h.degree == ZERO_DEGREE:
        return False
    return h == s_form(h.n) ** h.degree
