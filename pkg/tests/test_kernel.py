import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tightfan.errors import NotAHyperplane
from tightfan.kernel import (det, format_rat, forced_zero_coordinates, inverse, lp_positive_kernel,
                             matmul, matvec, nullspace, primitive, primitive_normal, qmat, rank,
                             rat, ratio, rref, simplex, solve)

from helpers import as_float, lp_max_coordinates, positive_kernel_feasible

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_rat_refuses_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == Fraction(1, 2)


def test_format_rat():
    assert format_rat(Fraction(4, 2)) == "2"
    assert format_rat(Fraction(-3, 6)) == "-1/2"


def test_nullspace_example():
    basis = nullspace([[1, 1, 0]], 3)
    assert len(basis) == 2
    assert all(b[0] + b[1] == 0 for b in basis)
    assert rank(basis) == 2


def test_nullspace_of_empty_matrix_is_everything():
    assert rank(nullspace([], 3)) == 3


def test_primitive():
    assert primitive((Fraction(2, 3), Fraction(-4, 3), 0)) == (1, -2, 0)


def test_primitive_normal_of_plane():
    n = primitive_normal([(1, 0, 0), (0, 1, 0)], 3)
    assert n in {(0, 0, 1), (0, 0, -1)}


def test_primitive_normal_rejects_lines():
    with pytest.raises(NotAHyperplane):
        primitive_normal([(1, 0, 0)], 3)


def test_ratio():
    assert ratio((2, 4), (1, 2)) == 2
    assert ratio((2, 3), (1, 2)) is None


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_rank_and_nullspace_match_sympy(rows):
    M = sympy.Matrix(rows)
    assert rank(qmat(rows)) == M.rank()
    basis = nullspace(qmat(rows), 4)
    assert len(basis) == 4 - M.rank()
    for b in basis:
        assert all(x == 0 for x in matvec(qmat(rows), b))


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_det_and_inverse_match_sympy(rows):
    A = qmat(rows)
    assert det(A) == sympy.Matrix(rows).det()
    if det(A) != 0:
        I = matmul(A, inverse(A))
        assert all(I[i][j] == (i == j) for i in range(3) for j in range(3))
        b = (1, 2, 3)
        assert matvec(A, solve(A, b)) == b


def test_rref_pivots():
    R, piv = rref([[0, 2, 4], [1, 1, 1]], 3)
    assert piv == [0, 1]


def test_simplex_matches_scipy():
    from scipy.optimize import linprog
    rng = random.Random(7)
    for _ in range(40):
        m, n = 2, 5
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        x0 = [rng.randint(0, 3) for _ in range(n)]
        b = [sum(a * x for a, x in zip(row, x0)) for row in A]
        c = [rng.randint(-3, 3) for _ in range(n)]
        ours = simplex(c, A, b)
        ref = linprog([-x for x in c], A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs")
        if ref.status == 3:
            assert ours.status == "unbounded"
        else:
            assert ours.status == "optimal"
            assert float(ours.value) == pytest.approx(-ref.fun, abs=1e-7)
            assert all(x >= 0 for x in ours.x)
            assert matvec(qmat(A), ours.x) == tuple(Fraction(v) for v in b)


def test_simplex_infeasible():
    assert simplex([1, 1], [[1, 1]], [-1]).status == "infeasible"


def test_lp_positive_kernel_examples():
    assert lp_positive_kernel([[1, -1]], 2) == (1, 1)
    assert lp_positive_kernel([[1, 1]], 2) is None


def test_lp_positive_kernel_matches_scipy():
    rng = random.Random(11)
    for _ in range(40):
        A = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(2)]
        t = lp_positive_kernel(A, 5)
        assert (t is not None) == positive_kernel_feasible(as_float(A))
        if t is not None:
            assert all(x >= 1 for x in t)
            assert not any(matvec(qmat(A), t))


def test_forced_zero_coordinates_match_scipy():
    rng = random.Random(5)
    for _ in range(30):
        A = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(2)]
        forced = forced_zero_coordinates(A, 4)
        maxima = lp_max_coordinates(as_float(A))
        if maxima is None:
            assert forced == frozenset(range(4))
        else:
            assert forced == frozenset(k for k in range(4) if maxima[k] < 1e-9)
