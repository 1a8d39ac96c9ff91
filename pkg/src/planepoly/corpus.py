"""Deterministic random elements of H(n, d) built from closure operations.

Every element comes from 1, ``s`` and the named families through W steps,
products, convex combinations, variable permutations and compositions
with maps that send the hyperplane into itself.  Each emitted element is
re-checked for membership before it is returned.
"""

from __future__ import annotations

import random
from fractions import Fraction

from planepoly.classes import in_H
from planepoly.constructions import family_gd, family_pd, op_w, whitney_chain
from planepoly.polynomial import Polynomial, s_form, substitute

_WEIGHTS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4))
_PARTS = (Fraction(1), Fraction(1, 2), Fraction(1, 3))


def _random_sub(g: Polynomial, rng: random.Random, need_top: bool, allow_top: bool = True) -> Polynomial:
    d = g.degree
    terms = list(g.terms)
    top = [t for t in terms if sum(t[0]) == d]
    low = [t for t in terms if sum(t[0]) < d]
    chosen = {}
    if need_top:
        m, c = rng.choice(top)
        chosen[m] = c * rng.choice(_PARTS)
    pool = terms if allow_top else low
    for m, c in pool:
        if m not in chosen and rng.random() < 0.35:
            chosen[m] = c * rng.choice(_PARTS)
    if not chosen and low:
        m, c = rng.choice(low)
        chosen[m] = c * rng.choice(_PARTS)
    return Polynomial(g.n, chosen)


def _self_map(n: int, rng: random.Random):
    """Images of the variables under a map sending the hyperplane into itself.

    The terms of a small element of H(n) are dealt out to the n variables;
    any such grouping keeps the image sum equal to that element.
    """
    q = rng.choice([s_form(n), whitney_chain(n, 1, "random", seed=rng.randrange(10**9)).result])
    if rng.random() < 0.3:
        q = whitney_chain(n, 2, "random", seed=rng.randrange(10**9)).result
    images = [dict() for _ in range(n)]
    for m, c in q.terms:
        images[rng.randrange(n)][m] = c
    return [Polynomial(n, im) for im in images]


def corpus_generate(n: int, d_max: int, seed: int, size: int) -> list:
    """``size`` elements of H(n) of degree exactly ``d_max``, reproducible from ``seed``."""
    if n < 1 or d_max < 0 or size < 0:
        raise ValueError("need n >= 1, d_max >= 0, size >= 0")
    rng = random.Random(seed)
    one = Polynomial.constant(n, 1)
    pool: dict = {0: [one]}
    if d_max == 0:
        return [one] * size
    pool[1] = [s_form(n)]
    for k in range(1, d_max + 1):
        if n >= 2:
            pool.setdefault(k, []).append(family_gd(n, k))
        if n == 2 and k % 2 == 1:
            pool.setdefault(k, []).append(family_pd(k))
        pool.setdefault(k, []).append(whitney_chain(n, k, "random", seed=rng.randrange(10**9)).result)

    def pick(k: int) -> Polynomial:
        return rng.choice(pool[k])

    out: list = []
    seen: set = set()
    attempts = 0
    while len(out) < size:
        attempts += 1
        op = rng.random()
        k = rng.randint(1, d_max)
        if op < 0.25:
            g = pick(k - 1)
            cand = op_w(g, _random_sub(g, rng, need_top=True))
        elif op < 0.4:
            g = pick(k)
            cand = op_w(g, _random_sub(g, rng, need_top=False, allow_top=False)) if g.degree > 0 else g
            if cand.degree != g.degree:
                continue
        elif op < 0.55:
            a = rng.randint(0, k)
            cand = pick(a) * pick(k - a)
        elif op < 0.75:
            lam = rng.choice(_WEIGHTS)
            cand = pick(k) * lam + pick(rng.randint(0, k)) * (1 - lam)
        elif op < 0.85:
            perm = list(range(n))
            rng.shuffle(perm)
            cand = pick(k).permute(perm)
        else:
            base_deg = rng.randint(1, k)
            g = pick(base_deg)
            images = _self_map(n, rng)
            cand = substitute(g, images)
            if cand.degree > d_max:
                continue
        if cand.degree > d_max or cand.is_zero():
            continue
        if not in_H(cand):
            raise AssertionError("closure operation produced a polynomial outside H")
        deg = cand.degree
        bucket = pool.setdefault(deg, [])
        if len(bucket) < 200:
            bucket.append(cand)
        if deg == d_max and (cand not in seen or attempts > 50 * size):
            seen.add(cand)
            out.append(cand)
    return out
