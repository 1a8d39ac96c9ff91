"""Exhaustive minimal-term search over H(n, d) at desk scale.

A support ``S`` (a set of monomials) is realizable when some element of
H(n, d) has exactly ``S`` as its set of monomials.  Substituting
``x1 = 1 - (x2 + ... + xn)`` turns "equal to 1 on the hyperplane" into a
linear system ``A c = b`` in the coefficients, and realizability is the
existence of a strictly positive solution.  We decide it by maximizing the
smallest coefficient with an exact simplex; an infeasible support also gets
a Farkas vector so the verdict can be checked without the solver.

Supports are enumerated one per orbit of the variable permutations, with
pruning by necessary conditions that any element of H(n, d) satisfies:

``top_terms``
    at least ``n`` monomials of top degree.
``pure_terms``
    every variable has a pure monomial of positive degree.
``face_count``
    every two-variable coordinate face (other variables set to zero) of
    positive degree ``e`` has at least ``(e + 3)/2`` monomials, of which at
    least ``(e - 1)/2`` are mixed.
``face_parity``
    the top part of a two-variable face is divisible by ``x_i + x_j``, so it
    vanishes at ``(1, -1)``; with positive coefficients its monomials must
    include both parities of the ``x_j`` exponent.
``face_feasible``
    every proper coordinate face with at least two variables is itself a
    realizable support.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from planepoly import lp
from planepoly.bounds import binom_bound, min_term_lower_bound
from planepoly.polynomial import Monomial, Polynomial, grlex_key

PRUNE_RULES = ("top_terms", "pure_terms", "face_count", "face_parity", "face_feasible")

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "PLANEPOLY_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_BUDGET


class BudgetExhausted(RuntimeError):
    pass


# -- monomials and supports ---------------------------------------------------------


@lru_cache(maxsize=None)
def all_monomials(n: int, d: int) -> tuple:
    """Every monomial of degree at most ``d``, canonical order."""
    out = []
    for k in range(d + 1):
        for cut in itertools.combinations(range(k + n - 1), n - 1):
            prev = -1
            e = []
            for c in cut:
                e.append(c - prev - 1)
                prev = c
            e.append(k + n - 1 - prev - 1)
            out.append(tuple(e))
    return tuple(sorted(out, key=grlex_key, reverse=True))


def _permute_monomial(m: Monomial, perm: Sequence[int]) -> Monomial:
    e = [0] * len(m)
    for i, a in enumerate(m):
        e[perm[i]] = a
    return tuple(e)


def canonical_support(monomials, n: int) -> tuple:
    """Lexicographically smallest sorted image of the support under variable permutations."""
    best = None
    for perm in itertools.permutations(range(n)):
        image = tuple(sorted(_permute_monomial(m, perm) for m in monomials))
        if best is None or image < best:
            best = image
    return best


def is_canonical(monomials, n: int) -> bool:
    return tuple(sorted(monomials)) == canonical_support(monomials, n)


@dataclass(frozen=True)
class Support:
    n: int
    d: int
    monomials: tuple

    @classmethod
    def of(cls, monomials, n: Optional[int] = None) -> "Support":
        monomials = tuple(sorted(set(tuple(m) for m in monomials)))
        if not monomials:
            raise ValueError("empty support")
        n = n if n is not None else len(monomials[0])
        return cls(n, max(sum(m) for m in monomials), monomials)

    @property
    def N(self) -> int:
        return len(self.monomials)

    def canonical(self) -> "Support":
        return Support(self.n, self.d, canonical_support(self.monomials, self.n))


@lru_cache(maxsize=None)
def _variables(m: Monomial) -> frozenset:
    return frozenset(i for i, a in enumerate(m) if a)


def _face(monomials, face: Sequence[int]) -> tuple:
    """Restriction to a coordinate face, projected to the face's coordinates."""
    fs = set(face)
    return tuple(sorted(tuple(m[i] for i in face) for m in monomials if _variables(m) <= fs))


# -- the linear system ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _one_minus_rest_power(n: int, a: int) -> Polynomial:
    base = Polynomial.constant(n, 1) - Polynomial.linear_sum(n, range(1, n))
    return base**a


@lru_cache(maxsize=None)
def _expanded(m: Monomial) -> dict:
    # x^m with x1 replaced by 1 - (x2 + ... + xn)
    n = len(m)
    rest = Polynomial.monomial((0,) + tuple(m[1:]))
    return (_one_minus_rest_power(n, m[0]) * rest).as_dict()


def hyperplane_system(monomials: Sequence[Monomial]):
    """``(A, b, row_keys)`` with ``A c = b`` iff ``sum c_m x^m`` is 1 on the hyperplane."""
    monomials = list(monomials)
    n = len(monomials[0])
    expansions = [_expanded(tuple(m)) for m in monomials]
    const = (0,) * n
    keys = {const}
    for e in expansions:
        keys.update(e)
    row_keys = sorted(keys, key=grlex_key, reverse=True)
    A = [[e.get(k, Fraction(0)) for e in expansions] for k in row_keys]
    b = [Fraction(1) if k == const else Fraction(0) for k in row_keys]
    return A, b, row_keys


@dataclass(frozen=True)
class FeasibilityOutcome:
    feasible: bool
    witness: Optional[Polynomial]
    max_min_coeff: Optional[Fraction]


def lp_feasible(support) -> FeasibilityOutcome:
    """Decide whether some element of H has exactly this support.

    Maximizes the smallest coefficient ``t`` subject to the hyperplane
    identity; feasible exactly when ``t > 0``.  The witness is the optimal
    vertex, so every coefficient is at least ``t``.
    """
    monomials = support.monomials if isinstance(support, Support) else tuple(support)
    A, b, _ = hyperplane_system(monomials)
    t, coeffs = lp.max_min_positive(A, b)
    if t is None or t <= 0:
        return FeasibilityOutcome(False, None, t)
    witness = Polynomial(len(monomials[0]), dict(zip(monomials, coeffs)))
    return FeasibilityOutcome(True, witness, t)


def infeasibility_certificate(monomials) -> Optional[tuple]:
    A, b, _ = hyperplane_system(list(monomials))
    return lp.farkas_certificate(A, b)


def _face_realizable(projected: tuple) -> bool:
    # realizability is permutation invariant, so cache one LP per orbit
    return _orbit_realizable(canonical_support(projected, len(projected[0])))


@lru_cache(maxsize=None)
def _orbit_realizable(canonical: tuple) -> bool:
    return lp_feasible(canonical).feasible


# -- pruning rules --------------------------------------------------------------------


def _two_face_ok(monomials, face) -> bool:
    r = _face(monomials, face)
    if not r:
        return True
    e = max(sum(m) for m in r)
    if e < 1:
        return True
    mixed = sum(1 for m in r if m[0] and m[1])
    # ceil((e + 3) / 2) terms, ceil((e - 1) / 2) of them mixed
    return len(r) >= (e + 4) // 2 and mixed >= e // 2


def _two_face_parity_ok(monomials, face) -> bool:
    r = _face(monomials, face)
    if not r:
        return True
    e = max(sum(m) for m in r)
    if e < 1:
        return True
    parities = {m[1] % 2 for m in r if sum(m) == e}
    return len(parities) == 2


def rejection_reason(monomials, n: int, d: int, rules: Sequence[str] = PRUNE_RULES) -> Optional[str]:
    """First pruning rule the full support fails, or ``None``."""
    monomials = tuple(monomials)
    if d >= 1:
        if "top_terms" in rules and sum(1 for m in monomials if sum(m) == d) < n:
            return "top_terms"
        if "pure_terms" in rules:
            for i in range(n):
                if not any(m[i] and _variables(m) == {i} for m in monomials):
                    return "pure_terms"
        if "face_count" in rules and n >= 2:
            for face in itertools.combinations(range(n), 2):
                if not _two_face_ok(monomials, face):
                    return "face_count"
        if "face_parity" in rules and n >= 2:
            for face in itertools.combinations(range(n), 2):
                if not _two_face_parity_ok(monomials, face):
                    return "face_parity"
        if "face_feasible" in rules:
            for k in range(2, n):
                for face in itertools.combinations(range(n), k):
                    r = _face(monomials, face)
                    if r and not _face_realizable(r):
                        return "face_feasible"
    return None


# -- enumeration ------------------------------------------------------------------------


def _groups(n: int, d: int) -> list:
    by_vars: dict = {}
    for m in all_monomials(n, d):
        by_vars.setdefault(_variables(m), []).append(m)
    order = sorted(by_vars, key=lambda f: (len(f), sorted(f)))
    return [(f, tuple(by_vars[f])) for f in order]


@dataclass
class PruneLog:
    counts: dict = field(default_factory=dict)

    def hit(self, rule: str) -> None:
        self.counts[rule] = self.counts.get(rule, 0) + 1


def enumerate_supports(
    n: int,
    d: int,
    N: int,
    rules: Sequence[str] = PRUNE_RULES,
    log: Optional[PruneLog] = None,
) -> Iterator[Support]:
    """One canonical representative per orbit of admissible size-``N`` supports.

    Monomials are decided one variable-set group at a time, smallest groups
    first, so that each coordinate face is complete (and can be checked)
    as soon as its own group has been chosen.
    """
    if N > binom_bound(n, d):
        raise ValueError(f"N = {N} exceeds the number of monomials of degree <= {d}")
    if N < 1:
        return
    log = log if log is not None else PruneLog()
    groups = _groups(n, d)
    room = [0] * (len(groups) + 1)
    for gi in range(len(groups) - 1, -1, -1):
        room[gi] = room[gi + 1] + len(groups[gi][1])

    chosen: list = []

    def face_checks(face) -> Optional[str]:
        k = len(face)
        if d < 1:
            return None
        if k == 1 and "pure_terms" in rules:
            (i,) = face
            if not any(_variables(m) == {i} for m in chosen):
                return "pure_terms"
        if k == 2 and "face_count" in rules and not _two_face_ok(chosen, sorted(face)):
            return "face_count"
        if k == 2 and "face_parity" in rules and not _two_face_parity_ok(chosen, sorted(face)):
            return "face_parity"
        if 2 <= k < n and "face_feasible" in rules:
            r = _face(chosen, sorted(face))
            if r and not _face_realizable(r):
                return "face_feasible"
        return None

    def rec(gi: int) -> Iterator[Support]:
        if gi == len(groups):
            if len(chosen) != N or max(sum(m) for m in chosen) != d:
                return
            if "top_terms" in rules and d >= 1 and sum(1 for m in chosen if sum(m) == d) < n:
                log.hit("top_terms")
                return
            if is_canonical(chosen, n):
                yield Support(n, d, tuple(sorted(chosen)))
            return
        face, mons = groups[gi]
        need = N - len(chosen)
        for size in range(0, min(len(mons), need) + 1):
            if need - size > room[gi + 1]:
                continue
            for subset in itertools.combinations(mons, size):
                chosen.extend(subset)
                reason = face_checks(face)
                if reason is None:
                    yield from rec(gi + 1)
                else:
                    log.hit(reason)
                del chosen[len(chosen) - size :]

    yield from rec(0)


def brute_force_supports(n: int, d: int, N: int, rules: Sequence[str] = ()) -> list:
    """Independent enumerator: every N-subset, filtered by ``rules``, one per orbit."""
    seen = set()
    out = []
    for subset in itertools.combinations(all_monomials(n, d), N):
        if max(sum(m) for m in subset) != d:
            continue
        if rules and rejection_reason(subset, n, d, rules) is not None:
            continue
        canon = canonical_support(subset, n)
        if canon not in seen:
            seen.add(canon)
            out.append(Support(n, d, canon))
    return sorted(out, key=lambda s: s.monomials)


# -- certificates ---------------------------------------------------------------------------

TOOL_VERSION = "planepoly 0.1.0"


@dataclass
class NonexistenceRecord:
    n: int
    d: int
    N: int
    orbits: list  # (monomials, farkas vector) pairs
    prune_log: dict

    @property
    def orbits_checked(self) -> int:
        return len(self.orbits)


@dataclass
class SearchCertificate:
    kind: str  # "optimum", "existence", "nonexistence", or "unknown" when cut short
    n: int
    d: int
    N: Optional[int]
    witnesses: list = field(default_factory=list)
    exhaustion: list = field(default_factory=list)  # NonexistenceRecord per excluded N
    partial: bool = False
    lp_solves: int = 0
    lower_bound: Optional[int] = None
    lower_bound_source: Optional[str] = None
    rules: tuple = PRUNE_RULES
    seed: Optional[int] = None
    wall_time: float = 0.0
    tool_version: str = TOOL_VERSION

    @property
    def witness_orbits(self) -> set:
        return {canonical_support(w.support, self.n) for w in self.witnesses}


def _solve_one(monomials: tuple):
    out = lp_feasible(monomials)
    if out.feasible:
        return monomials, out, None
    return monomials, out, infeasibility_certificate(monomials)


def _solve_all(supports: list, jobs: int):
    items = [s.monomials for s in supports]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_solve_one, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [_solve_one(m) for m in items]


class _Clock:
    def __init__(self, budget: int, time_limit: Optional[float]):
        self.budget = budget
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.used = 0

    def charge(self, k: int) -> bool:
        self.used += k
        if self.used > self.budget:
            return False
        return self.deadline is None or time.monotonic() <= self.deadline


def _exhaust_level(n, d, N, rules, clock, jobs):
    """Solve every admissible orbit at size N; returns ``(witnesses, record, complete)``."""
    log = PruneLog()
    if rules:
        supports = list(enumerate_supports(n, d, N, rules, log))
    else:
        supports = brute_force_supports(n, d, N)
    if not clock.charge(len(supports)):
        return [], None, False
    results = _solve_all(supports, jobs)
    witnesses = [out.witness for _, out, _ in results if out.feasible]
    if witnesses:
        return witnesses, None, True
    orbits = []
    for monomials, _, farkas in results:
        if farkas is None:
            raise ArithmeticError(f"no Farkas vector for infeasible support {monomials}")
        orbits.append((monomials, farkas))
    return [], NonexistenceRecord(n, d, N, orbits, dict(log.counts)), True


def min_terms(
    n: int,
    d: int,
    budget: Optional[int] = None,
    prune: bool = True,
    jobs: int = 1,
    time_limit: Optional[float] = None,
) -> SearchCertificate:
    """Smallest N for which H(n, d) has an element with N terms, with all witness orbits.

    With ``prune=False`` the search starts at N = 1 and tries every subset:
    the brute-force oracle for the pruned search.
    """
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    budget = budget if budget is not None else default_budget()
    start_time = time.monotonic()
    clock = _Clock(budget, time_limit)
    rules = PRUNE_RULES if prune else ()
    lower = min_term_lower_bound(n, d)
    start = lower.value if prune else 1
    cert = SearchCertificate(
        "optimum",
        n,
        d,
        None,
        lower_bound=start,
        lower_bound_source=lower.source if prune else "none",
        rules=tuple(rules),
    )
    for N in range(start, binom_bound(n, d) + 1):
        witnesses, record, complete = _exhaust_level(n, d, N, rules, clock, jobs)
        if not complete:
            cert.partial = True
            break
        if witnesses:
            cert.N = N
            cert.witnesses = witnesses
            break
        cert.exhaustion.append(record)
    cert.lp_solves = clock.used
    cert.wall_time = time.monotonic() - start_time
    return cert


def exists_with_terms(
    n: int,
    d: int,
    N: int,
    budget: Optional[int] = None,
    prune: bool = True,
    jobs: int = 1,
    time_limit: Optional[float] = None,
) -> SearchCertificate:
    """Whether some element of H(n, d) has exactly N terms; all witness orbits if so."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    budget = budget if budget is not None else default_budget()
    start_time = time.monotonic()
    clock = _Clock(budget, time_limit)
    rules = PRUNE_RULES if prune else ()
    witnesses, record, complete = _exhaust_level(n, d, N, rules, clock, jobs)
    if not complete:
        kind = "unknown"
    elif witnesses:
        kind = "existence"
    else:
        kind = "nonexistence"
    cert = SearchCertificate(kind, n, d, N, witnesses=witnesses, rules=tuple(rules), partial=not complete)
    if record is not None:
        cert.exhaustion.append(record)
    cert.lp_solves = clock.used
    cert.wall_time = time.monotonic() - start_time
    return cert
