"""Exact sparse multivariate polynomials over the rationals.

A monomial is a tuple of nonnegative exponents, one per variable.  A
:class:`Polynomial` maps monomials to nonzero :class:`~fractions.Fraction`
coefficients and never changes after construction.

Terms are listed in graded lexicographic order, descending, with
``x1 > x2 > ... > xn``::

    >>> p = Polynomial(2, {(3, 0): 1, (1, 1): 3, (0, 3): 1})
    >>> [e for e, _ in p.terms]
    [(3, 0), (0, 3), (1, 1)]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]

# Degree of the zero polynomial.  Compares below every integer degree.
ZERO_DEGREE = -math.inf


def grlex_key(m: Monomial) -> tuple:
    return (sum(m), m)


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def is_pure(m: Monomial) -> bool:
    """True when at most one variable occurs (constants count as pure)."""
    return sum(1 for a in m if a) <= 1


def variables_of(m: Monomial) -> frozenset:
    return frozenset(i for i, a in enumerate(m) if a)


def monomial_distance(m1: Monomial, m2: Monomial) -> int:
    """L1 distance between exponent vectors."""
    if len(m1) != len(m2):
        raise ValueError(f"monomials over {len(m1)} and {len(m2)} variables")
    return sum(abs(a - b) for a, b in zip(m1, m2))


def _check_monomial(m: Sequence[int], n: int) -> Monomial:
    m = tuple(m)
    if len(m) != n:
        raise ValueError(f"exponent vector {m} does not have length {n}")
    for a in m:
        if not isinstance(a, int) or isinstance(a, bool) or a < 0:
            raise ValueError(f"bad exponent {a!r} in {m}")
    return m


class Polynomial:
    """Immutable polynomial in ``n`` variables with rational coefficients."""

    __slots__ = ("_n", "_coeffs", "_hash")

    def __init__(self, n: int, coeffs: Mapping[Sequence[int], Coefficient] = ()):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"variable count must be a positive integer, got {n!r}")
        table: dict = {}
        for m, c in dict(coeffs).items():
            m = _check_monomial(m, n)
            c = Fraction(c)
            if c:
                table[m] = table.get(m, 0) + c
        self._n = n
        self._coeffs = {m: c for m, c in table.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: dict) -> "Polynomial":
        # Trusted constructor: keys are valid monomials, values nonzero Fractions.
        p = cls.__new__(cls)
        p._n = n
        p._coeffs = coeffs
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: Coefficient = 1) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The coordinate ``x_{i+1}`` (``i`` is zero-based)."""
        if not 0 <= i < n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, m: Sequence[int], c: Coefficient = 1) -> "Polynomial":
        return cls(len(m), {tuple(m): c})

    @classmethod
    def linear_sum(cls, n: int, indices: Iterable[int] | None = None) -> "Polynomial":
        """Sum of the given coordinates; all of them by default (the form ``s``)."""
        idx = range(n) if indices is None else indices
        out = {}
        for i in idx:
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = Fraction(1)
        return cls._raw(n, out)

    # -- inspection -------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> tuple:
        """``(monomial, coefficient)`` pairs in canonical order."""
        return tuple(sorted(self._coeffs.items(), key=lambda t: grlex_key(t[0]), reverse=True))

    @property
    def support(self) -> tuple:
        return tuple(sorted(self._coeffs, key=grlex_key, reverse=True))

    def as_dict(self) -> dict:
        return dict(self._coeffs)

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self._coeffs.get(tuple(m), Fraction(0))

    @property
    def num_terms(self) -> int:
        return len(self._coeffs)

    @property
    def degree(self):
        """Total degree; :data:`ZERO_DEGREE` for the zero polynomial."""
        if not self._coeffs:
            return ZERO_DEGREE
        return max(sum(m) for m in self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._coeffs)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._coeffs}) <= 1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._coeffs.values())

    def degree_in(self, i: int) -> int:
        if not self._coeffs:
            return -1
        return max(m[i] for m in self._coeffs)

    # -- arithmetic -------------------------------------------------------

    def _same_ring(self, other: "Polynomial") -> None:
        if self._n != other._n:
            raise ValueError(f"variable count mismatch: {self._n} vs {other._n}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self._n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self._n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._n, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self._n)
            return Polynomial._raw(self._n, {m: c * v for m, v in self._coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self._n, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self._n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Coefficient) -> "Polynomial":
        return self * Fraction(c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._n == other._n and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self._n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._coeffs.items())))
        return self._hash

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self):
        return f"Polynomial({self._n}, {self})"

    def __str__(self):
        from planepoly.serialize import to_text

        return to_text(self)

    # -- structure --------------------------------------------------------

    def homogeneous_part(self, j: int) -> "Polynomial":
        return Polynomial._raw(self._n, {m: c for m, c in self._coeffs.items() if sum(m) == j})

    def top_part(self) -> "Polynomial":
        if not self._coeffs:
            return self
        return self.homogeneous_part(self.degree)

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """Rename variables: ``x_i`` becomes ``x_{perm[i]}``."""
        if sorted(perm) != list(range(self._n)):
            raise ValueError(f"{perm} is not a permutation of 0..{self._n - 1}")
        out = {}
        for m, c in self._coeffs.items():
            e = [0] * self._n
            for i, a in enumerate(m):
                e[perm[i]] = a
            out[tuple(e)] = c
        return Polynomial._raw(self._n, out)

    def restrict_to(self, keep: Iterable[int]) -> "Polynomial":
        """Set every variable outside ``keep`` to zero (same variable count)."""
        keep = set(keep)
        return Polynomial._raw(
            self._n,
            {m: c for m, c in self._coeffs.items() if all(a == 0 or i in keep for i, a in enumerate(m))},
        )


# -- free functions mirroring the operation list ------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._same_ring(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._same_ring(q)
    return p * q


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Compose ``p`` with the polynomial map ``x_i -> images[i]``.

    Expands term by term; powers of each image are cached for the duration
    of the call only.
    """
    if len(images) != p.n:
        raise ValueError(f"need {p.n} images, got {len(images)}")
    if not images:
        raise ValueError("no images")
    m = images[0].n
    if any(q.n != m for q in images):
        raise ValueError("images do not share a variable count")
    powers = [[Polynomial.constant(m, 1)] for _ in images]

    def power(i: int, k: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * images[i])
        return cache[k]

    total: dict = {}
    for e, c in p.as_dict().items():
        term = Polynomial.constant(m, c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        for mono, v in term.as_dict().items():
            total[mono] = total.get(mono, 0) + v
    return Polynomial._raw(m, {k: v for k, v in total.items() if v})


def evaluate(p: Polynomial, point: Sequence[Coefficient]) -> Fraction:
    if len(point) != p.n:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.n} variables")
    pt = [Fraction(v) for v in point]
    total = Fraction(0)
    for e, c in p.as_dict().items():
        v = c
        for x, a in zip(pt, e):
            if a:
                v *= x**a
        total += v
    return total


@dataclass(frozen=True)
class HomogeneousParts:
    """Parts ``p_0, ..., p_d`` of a polynomial, indexed by degree."""

    parts: tuple

    def __getitem__(self, j: int) -> Polynomial:
        return self.parts[j]

    def __len__(self) -> int:
        return len(self.parts)

    def total(self) -> Polynomial:
        out = self.parts[0]
        for q in self.parts[1:]:
            out = out + q
        return out


def homogeneous_parts(p: Polynomial) -> HomogeneousParts:
    d = p.degree
    if d == ZERO_DEGREE:
        return HomogeneousParts((Polynomial.zero(p.n),))
    buckets: list = [dict() for _ in range(d + 1)]
    for m, c in p.as_dict().items():
        buckets[sum(m)][m] = c
    return HomogeneousParts(tuple(Polynomial._raw(p.n, b) for b in buckets))


@dataclass(frozen=True)
class Measure:
    n: int
    d: int
    N: int
    pure_count: int
    mixed_count: int
    top_degree_term_count: int


def measure(p: Polynomial) -> Measure:
    if p.is_zero():
        raise ValueError("measure of the zero polynomial is undefined")
    support = p.support
    d = p.degree
    pure = sum(1 for m in support if is_pure(m))
    return Measure(
        n=p.n,
        d=d,
        N=len(support),
        pure_count=pure,
        mixed_count=len(support) - pure,
        top_degree_term_count=sum(1 for m in support if sum(m) == d),
    )


def s_form(n: int) -> Polynomial:
    """``x_1 + ... + x_n``."""
    return Polynomial.linear_sum(n)


def divide_exact(p: Polynomial, q: Polynomial):
    """Exact quotient ``p / q`` or ``None`` when ``q`` does not divide ``p``.

    Multivariate division by leading terms in graded lex order; the remainder
    is zero exactly when ``q`` divides ``p``.
    """
    p._same_ring(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_m, lead_c = q.terms[0]
    rest = p
    quotient: dict = {}
    while not rest.is_zero():
        m, c = rest.terms[0]
        if any(a < b for a, b in zip(m, lead_m)):
            return None
        qm = tuple(a - b for a, b in zip(m, lead_m))
        qc = c / lead_c
        quotient[qm] = quotient.get(qm, 0) + qc
        rest = rest - Polynomial._raw(p.n, {qm: qc}) * q
    return Polynomial(p.n, quotient)
