"""Exact two-phase simplex over the rationals with Bland's rule.

Problems are ``maximize c.x  subject to  A_eq x = b_eq, A_ub x <= b_ub,
x >= 0``.  All arithmetic uses :class:`~fractions.Fraction`; there are no
tolerances.  Bland's rule (lowest-index entering and leaving variable)
guarantees termination, and makes the returned vertex a deterministic
function of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    value: Optional[Fraction] = None
    pivots: int = 0


def _pivot(T, obj, basis, r, c):
    row = T[r]
    piv = row[c]
    if piv != 1:
        inv = 1 / piv
        row = [v * inv for v in row]
        T[r] = row
    nz = [(j, v) for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                for j, v in nz:
                    other[j] -= f * v
    f = obj[c]
    if f:
        for j, v in nz:
            obj[j] -= f * v
    basis[r] = c


def _run(T, obj, basis, allowed, max_pivots):
    pivots = 0
    while True:
        enter = next((j for j in allowed if obj[j] > 0), None)
        if enter is None:
            return OPTIMAL, pivots
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED, pivots
        _pivot(T, obj, basis, best[1], enter)
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")


def maximize(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    max_pivots: Optional[int] = None,
) -> LPResult:
    nvar = len(c)
    rows = []
    rhs = []
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [Fraction(0)] * len(A_ub))
        rhs.append(Fraction(b))
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * len(A_ub)
        slack[k] = Fraction(1)
        rows.append([Fraction(v) for v in a] + slack)
        rhs.append(Fraction(b))
    for r in rows:
        if len(r) != nvar + len(A_ub):
            raise ValueError("constraint row has the wrong length")
    ncols = nvar + len(A_ub)
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: one artificial per row, columns ncols .. ncols+m-1
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(rows[i] + art + [rhs[i]])
    basis = [ncols + i for i in range(m)]
    obj = [Fraction(0)] * (ncols + m + 1)
    for row in T:
        for j in range(ncols):
            obj[j] += row[j]
        obj[-1] += row[-1]
    status, p1 = _run(T, obj, basis, range(ncols), max_pivots)
    infeasibility = sum(T[i][-1] for i in range(m) if basis[i] >= ncols)
    if infeasibility > 0:
        return LPResult(INFEASIBLE, pivots=p1)

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= ncols:
            col = next((j for j in range(ncols) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, [Fraction(0)] * (ncols + m + 1), basis, i, col)
        i += 1

    # phase 2
    cc = [Fraction(v) for v in c] + [Fraction(0)] * (len(A_ub) + m + 1)
    obj = list(cc)
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            for j, v in enumerate(T[i]):
                obj[j] -= f * v
    status, p2 = _run(T, obj, basis, range(ncols), max_pivots)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=p1 + p2)
    x = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x=tuple(x[:nvar]), value=value, pivots=p1 + p2)


def max_min_positive(A_eq: Sequence[Sequence], b_eq: Sequence):
    """Maximize ``t`` over ``A c = b`` with every ``c_i >= t`` (``t`` free).

    Returns ``(t, c)`` at an optimal vertex, ``(None, None)`` when ``A c = b``
    has no nonnegative-shifted solution at all.  The positive orthant part
    of the solution set is nonempty exactly when ``t > 0``.
    """
    k = len(A_eq[0]) if A_eq else 0
    # c = c' + t+ - t-, c' >= 0
    rows = []
    for a in A_eq:
        tot = sum((Fraction(v) for v in a), Fraction(0))
        rows.append(list(a) + [tot, -tot])
    obj = [0] * k + [1, -1]
    res = maximize(obj, rows, b_eq)
    if res.status == INFEASIBLE:
        return None, None
    if res.status == UNBOUNDED:
        raise ArithmeticError("max-min coefficient is unbounded")
    t = res.x[k] - res.x[k + 1]
    coeffs = tuple(v + t for v in res.x[:k])
    return t, coeffs


def farkas_certificate(A_eq: Sequence[Sequence], b_eq: Sequence):
    """Find ``y`` proving ``A c = b`` has no strictly positive solution.

    A valid ``y`` has ``A^T y >= 0``, ``b.y <= 0`` and not both zero; then
    any ``c > 0`` with ``A c = b`` would give ``0 <= c.(A^T y) = b.y <= 0``
    with one side strict.  Returns ``None`` when no such ``y`` exists, which
    by Stiemke's alternative means a positive solution does.
    """
    m = len(A_eq)
    k = len(A_eq[0]) if A_eq else 0
    # variables: y+ (m), y- (m), w (k), z (1)
    nv = 2 * m + k + 1
    rows, rhs = [], []
    for j in range(k):
        row = [0] * nv
        for i in range(m):
            row[i] = A_eq[i][j]
            row[m + i] = -A_eq[i][j]
        row[2 * m + j] = -1
        rows.append(row)
        rhs.append(0)
    row = [0] * nv
    for i in range(m):
        row[i] = b_eq[i]
        row[m + i] = -b_eq[i]
    row[-1] = 1
    rows.append(row)
    rhs.append(0)
    row = [0] * nv
    for j in range(k):
        row[2 * m + j] = 1
    row[-1] = 1
    rows.append(row)
    rhs.append(1)
    res = maximize([0] * nv, rows, rhs)
    if res.status != OPTIMAL:
        return None
    return tuple(res.x[i] - res.x[m + i] for i in range(m))


def check_farkas(A_eq: Sequence[Sequence], b_eq: Sequence, y: Sequence) -> bool:
    m = len(A_eq)
    if len(y) != m:
        return False
    k = len(A_eq[0]) if A_eq else 0
    aty = [sum((Fraction(A_eq[i][j]) * Fraction(y[i]) for i in range(m)), Fraction(0)) for j in range(k)]
    by = sum((Fraction(b) * Fraction(v) for b, v in zip(b_eq, y)), Fraction(0))
    if any(v < 0 for v in aty) or by > 0:
        return False
    return any(aty) or by < 0
