"""The ten acceptance criteria, each timed against its own limit.

A line ``criterion k: PASS|FAIL`` is printed for each one, both inline (visible
with ``-s``) and in the terminal summary.
"""
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from planepoly import certificate
from planepoly.bounds import bound_report
from planepoly.classes import in_H, in_J, membership, quotient_q
from planepoly.constructions import (
    IN_W,
    NOT_IN_W,
    family_eq2,
    family_gd,
    family_pd,
    family_pd_recurrence,
    homogenize_to_sd,
    op_x,
    replay,
    chain_decompose,
    symmetric_cubic,
    undo_top,
    w_membership,
    whitney_chain,
)
from planepoly.corpus import corpus_generate
from planepoly.polynomial import Polynomial, evaluate, homogeneous_parts, s_form
from planepoly.pullback import HyperplaneMap, map_from_h2, pullback, veronese_map
from planepoly.search import canonical_support, exists_with_terms, min_terms
from planepoly.serialize import to_text

import conftest
from conftest import (
    AFFINE_CUBIC,
    CHAIN_CUBIC,
    CHAIN_CUBIC_MISQUOTED,
    CUBIC_NOT_W,
    P3,
    QUARTIC,
    SEPTIC,
    SEPTIC_TOP_STEP,
    poly,
)


@contextmanager
def criterion(k, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = time.perf_counter() - start < limit
    finally:
        seconds = time.perf_counter() - start
        conftest.ACCEPTANCE_RESULTS[k] = (ok, seconds, limit)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({seconds:.2f} s)")
    assert seconds < limit, f"criterion {k} took {seconds:.1f} s (limit {limit} s)"


def orbit(text):
    p = poly(text)
    return canonical_support(p.support, p.n)


def test_criterion_1_sharp_family():
    with criterion(1, 1.0):
        for d in range(1, 22, 2):
            p = family_pd(d)
            assert in_H(p) and p.degree == d
            assert p.num_terms == (d + 3) // 2
            assert d == 2 * p.num_terms - 3
            assert p == family_pd_recurrence(d)
            assert p.terms == family_pd_recurrence(d).terms


def test_criterion_2_group_invariance():
    with criterion(2, 1.0):
        for d in range(1, 22, 2):
            for (a, b), _ in family_pd(d).terms:
                assert (a + 2 * b) % d == 0


def test_criterion_3_worked_examples():
    with criterion(3, 5.0):
        # three W steps from 1
        chain = whitney_chain(2, 3)
        assert chain.is_valid() and replay(2, chain.steps) == poly(AFFINE_CUBIC)
        # p3 as three X steps, the last one leaving P
        s = s_form(2)
        assert op_x(s * s, s * s - poly("3*x*y")) == poly(P3)
        steps = chain_decompose(poly(P3))
        assert replay(2, steps) == poly(P3)
        assert w_membership(poly(P3)).status == NOT_IN_W
        # sharp septic without cyclic symmetry, and its top step
        p = poly(SEPTIC)
        assert in_H(p) and p.degree == 7 and p.num_terms == 5
        lower, r = undo_top(p)
        assert to_text(r) == SEPTIC_TOP_STEP
        assert any(c < 0 for _, c in r.terms)
        assert op_x(lower, r) == p
        # the three-variable last-monomial chain replays to CHAIN_CUBIC,
        # not to the misquoted display
        chain = whitney_chain(3, 3)
        assert chain.result == poly(CHAIN_CUBIC) and in_H(chain.result)
        assert not in_J(poly(CHAIN_CUBIC_MISQUOTED))
        q = poly(CUBIC_NOT_W)
        assert in_H(q) and q.degree == 3 and q.num_terms == 7
        assert w_membership(q).status == NOT_IN_W
        q = poly(QUARTIC)
        assert in_H(q) and q.degree == 4 and q.num_terms == 9
        assert evaluate(q, [Fraction(1, 3)] * 3) == 1
        for n in range(1, 7):
            for d in range(2, 11):
                q = family_eq2(n, d)
                m = membership(q)
                assert m.in_J and not m.in_P
                assert q.num_terms == n + 2
        cubic = symmetric_cubic(3)
        assert evaluate(cubic, [Fraction(1, 3)] * 3) == Fraction(10, 9)
        assert not in_J(cubic) and not quotient_q(cubic)[1].is_zero()


def test_criterion_4_homogenization(mixed_corpus):
    with criterion(4, 30.0):
        assert len(mixed_corpus) == 500
        assert {p.n for p in mixed_corpus} == {2, 3, 4}
        assert max(p.degree for p in mixed_corpus) <= 5
        for p in mixed_corpus:
            s = s_form(p.n)
            d = p.degree
            _, result = homogenize_to_sd(p)
            parts = homogeneous_parts(p)
            total = sum((parts[j] * s ** (d - j) for j in range(d + 1)), Polynomial.zero(p.n))
            assert result == s**d == total


def test_criterion_5_bounds(mixed_corpus):
    with criterion(5, 60.0):
        family = [family_pd(d) for d in range(1, 22, 2)]
        family += [family_gd(n, d) for n in range(2, 7) for d in range(1, 7)]
        family += [whitney_chain(n, d).result for n in range(2, 7) for d in range(1, 7)]
        family += [poly(t) for t in (AFFINE_CUBIC, SEPTIC, CHAIN_CUBIC, CUBIC_NOT_W, QUARTIC)]
        violations = []
        for p in list(mixed_corpus) + family:
            r = bound_report(p)
            violations += [(str(p), e.name) for e in r.violations]
            top = sum(1 for m in p.support if sum(m) == p.degree)
            if top < p.n:
                violations.append((str(p), "top_terms"))
        assert violations == []


def test_criterion_6_pullbacks():
    with criterion(6, 1.0):
        p = poly(CUBIC_NOT_W)
        q = pullback(p, veronese_map(3))
        assert in_H(q) and q.n == 2 and q.degree == 6 and q.num_terms == 7
        r = pullback(p, map_from_h2(poly(P3), 3))
        assert in_H(r) and r.degree == 9 and r.num_terms == 6 and r.degree == 2 * r.num_terms - 3
        u, v = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
        assert pullback(p, HyperplaneMap((u**3, 3 * u * v, v**3), "psi")) == r
        assert pullback(poly("y^2 - 4*x*z"), veronese_map(3)).is_zero()


def test_criterion_7_search(tmp_path):
    with criterion(7, 30 * 60.0):
        for d in (3, 5, 7):
            cert = min_terms(2, d)
            assert cert.kind == "optimum" and not cert.partial
            assert cert.N == (d + 3) // 2
        assert canonical_support(family_pd(7).support, 2) in cert.witness_orbits
        assert orbit(SEPTIC) in cert.witness_orbits

        cert = min_terms(3, 3)
        assert cert.kind == "optimum" and cert.N == 7
        assert orbit(CHAIN_CUBIC) in cert.witness_orbits
        assert orbit(CUBIC_NOT_W) in cert.witness_orbits

        none = exists_with_terms(3, 4, 8)
        assert none.kind == "nonexistence" and not none.partial
        some = exists_with_terms(3, 4, 9)
        assert some.kind == "existence" and orbit(QUARTIC) in some.witness_orbits

        for name, c in (("c33.json", cert), ("c348.json", none)):
            path = tmp_path / name
            path.write_text(certificate.dumps(c))
            start = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-m", "planepoly", "recheck", str(path)],
                capture_output=True,
                text=True,
                timeout=60,
            )
            assert proc.returncode == 0, proc.stdout + proc.stderr
            assert time.perf_counter() - start < 10


def test_criterion_8_oracle_equivalence():
    with criterion(8, 60.0):
        for d in (1, 2, 3):
            pruned = min_terms(2, d)
            brute = min_terms(2, d, prune=False)
            assert pruned.N == brute.N
            assert pruned.witness_orbits == brute.witness_orbits


def test_criterion_9_large_dimension():
    with criterion(9, 60.0):
        corpus = corpus_generate(12, 2, seed=12, size=50)
        assert len(corpus) == 50
        assert all(in_H(p) and p.num_terms >= 23 for p in corpus)
        chain = whitney_chain(12, 2)
        assert chain.result.num_terms == 23 and in_H(chain.result)
        verdict = w_membership(chain.result)
        assert verdict.status == IN_W and verdict.chain.result == chain.result
        for seed in range(5):
            p = whitney_chain(12, 2, "random", seed=seed).result
            assert p.num_terms >= 23


def test_criterion_10_product_with_s():
    with criterion(10, 30.0):
        rng = random.Random(10)
        done = 0
        while done < 10_000:
            n, d = rng.randint(1, 5), rng.randint(0, 6)
            terms = {}
            for _ in range(rng.randint(1, 6)):
                deg = rng.randint(0, d)
                e = [0] * n
                for _ in range(deg):
                    e[rng.randrange(n)] += 1
                terms[tuple(e)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            f = Polynomial(n, terms)
            if f.is_zero():
                continue
            assert (s_form(n) * f).num_terms >= n
            done += 1
