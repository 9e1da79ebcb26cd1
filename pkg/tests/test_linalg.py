from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from critchar.linalg import bareiss_determinant, bareiss_rank, independent_rows, inverse, solve

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, max_size=5):
    r = draw(st.integers(1, max_size))
    c = draw(st.integers(1, max_size))
    # low-rank products make rank deficiency common
    k = draw(st.integers(1, max(r, c)))
    A = [[draw(small) for _ in range(k)] for _ in range(r)]
    B = [[draw(small) for _ in range(c)] for _ in range(k)]
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(c)] for i in range(r)]


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert bareiss_rank(M) == sympy.Matrix(M).rank()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_sympy(M):
    assert bareiss_determinant(M) == sympy.Rational(sympy.Matrix(M).det())


def test_known_ranks():
    assert bareiss_rank([[1]]) == 1
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert bareiss_rank([[-8, 4, 0], [4, 0, -8], [0, -8, 32]]) == 2
    assert bareiss_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_solve_and_inverse():
    M = [[2, 1], [1, 3]]
    assert solve(M, [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    inv = inverse(M)
    assert inv == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]
    assert independent_rows([[1, 2], [2, 4], [0, 1]]) == [0, 2]
