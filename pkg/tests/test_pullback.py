import pytest

from planepoly.classes import in_H, in_J
from planepoly.constructions import family_pd
from planepoly.polynomial import Polynomial, s_form
from planepoly.pullback import (
    HyperplaneMap,
    linear_collapse,
    linear_map,
    map_from_h2,
    pullback,
    restrict,
    veronese_map,
)

from conftest import CUBIC_NOT_W, P3, QUARTIC, poly

U = Polynomial.variable(2, 0)
V = Polynomial.variable(2, 1)


def test_veronese_examples():
    assert veronese_map(3).components == (U * U, 2 * U * V, V * V)
    assert veronese_map(2).components == (U, V)
    assert veronese_map(4).components == (U**3, 3 * U * U * V, 3 * U * V * V, V**3)
    for n in range(2, 7):
        assert veronese_map(n).component_sum() == (U + V) ** (n - 1)


def test_map_from_h2_examples():
    phi = map_from_h2(poly(P3), 3)
    assert phi.components == (U**3, V**3, 3 * U * V)
    assert map_from_h2(s_form(2), 2).components == (U, V)
    p5 = family_pd(5)
    phi = map_from_h2(p5, 4)
    assert phi.n == 4 and phi.component_sum() == p5
    padded = map_from_h2(poly(P3), 5)
    assert padded.components[3:] == (Polynomial.zero(2), Polynomial.zero(2))
    with pytest.raises(ValueError):
        map_from_h2(family_pd(7), 4)
    # p_D fits exactly when D <= 2n - 3
    for n in range(2, 7):
        for D in range(1, 2 * n + 2, 2):
            fits = D <= 2 * n - 3
            if fits:
                map_from_h2(family_pd(D), n)
            else:
                with pytest.raises(ValueError):
                    map_from_h2(family_pd(D), n)


def test_map_validation():
    with pytest.raises(ValueError):
        HyperplaneMap((U, U), "bad")
    with pytest.raises(ValueError):
        HyperplaneMap((U + V, -V + V * V), "bad")


def test_pullback_examples():
    p = poly(CUBIC_NOT_W)
    q = pullback(p, veronese_map(3))
    assert in_H(q) and q.degree == 6 and q.num_terms == 7
    # x -> u^3, y -> 3uv, z -> v^3
    psi = HyperplaneMap((U**3, 3 * U * V, V**3), "from_h2(3)")
    r = pullback(p, psi)
    assert in_H(r) and r.degree == 9 and r.num_terms == 6 and r.degree == 2 * r.num_terms - 3
    assert pullback(p, map_from_h2(poly(P3), 3)) == r  # p is symmetric in y and z
    for phi in (veronese_map(3), psi, linear_map(3, [0, 1], [2])):
        assert pullback(s_form(3), phi) == phi.component_sum()
        assert in_J(pullback(s_form(3), phi))
    with pytest.raises(ValueError):
        pullback(s_form(4), veronese_map(3))


def test_cancellation_without_positivity():
    assert pullback(poly("y^2 - 4*x*z"), veronese_map(3)).is_zero()


def test_pullback_on_corpus(mixed_corpus):
    for p in mixed_corpus[::3]:
        if p.n < 2:
            continue
        q = pullback(p, veronese_map(p.n))
        assert in_H(q)
        assert q.num_terms <= p.num_terms
        assert q.degree == (p.n - 1) * p.degree


def test_linear_collapse_examples():
    p = poly(QUARTIC)
    two = linear_collapse(p, [0], [1])
    assert two == poly("x^2*y + x*y^2 + x^2 + y", 2)
    assert in_H(two)
    assert linear_collapse(s_form(3), [0, 1], [2]) == U + V
    with pytest.raises(ValueError):
        linear_collapse(p, [0], [0])
    with pytest.raises(ValueError):
        linear_collapse(p, [], [1])


def test_restrict_examples():
    xi, x = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert restrict(s_form(3), [0, 1], [2]) == xi + x
    r = restrict(poly(QUARTIC), [0, 1], [2])
    assert in_J(r) and in_H(r)
    four = restrict(s_form(4), [0, 1], [2, 3])
    assert four == Polynomial.linear_sum(3, range(3))
    with pytest.raises(ValueError):
        restrict(s_form(3), [0, 1], [1])
