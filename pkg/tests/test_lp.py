from fractions import Fraction

from planepoly import lp

F = Fraction


def test_maximize_small_problem():
    # max x + y  s.t. x + 2y <= 4, 3x + y <= 6
    res = lp.maximize([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == lp.OPTIMAL
    assert res.x == (F(8, 5), F(6, 5)) and res.value == F(14, 5)


def test_infeasible_and_unbounded():
    assert lp.maximize([1], [[1]], [-1]).status == lp.INFEASIBLE
    assert lp.maximize([1, 0], A_ub=[[-1, 1]], b_ub=[0]).status == lp.UNBOUNDED


def test_redundant_equalities():
    res = lp.maximize([1, 1], [[1, 1], [2, 2]], [1, 2])
    assert res.status == lp.OPTIMAL and res.value == 1


def test_max_min_positive():
    # c1 + c2 = 1 and c1 - c2 = 0 force c = (1/2, 1/2)
    t, c = lp.max_min_positive([[1, 1], [1, -1]], [1, 0])
    assert t == F(1, 2) and c == (F(1, 2), F(1, 2))
    t, c = lp.max_min_positive([[1, 1]], [0])
    assert t <= 0


def test_farkas_certificate():
    A, b = [[1, 1]], [0]
    y = lp.farkas_certificate(A, b)
    assert y is not None and lp.check_farkas(A, b, y)
    assert lp.farkas_certificate([[1, 1]], [1]) is None
    assert not lp.check_farkas(A, b, (F(0),))


def test_deterministic():
    args = ([[1, 2, 1], [2, 0, 1]], [3, 2])
    assert lp.max_min_positive(*args) == lp.max_min_positive(*args)
