from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from bellpoly.simplex import solve_equality_feasibility

small_int = st.integers(min_value=-5, max_value=5)


def test_trivial_feasible():
    result = solve_equality_feasibility([[1, 1]], [1])
    assert result.feasible
    assert sum(result.solution) == 1


def test_trivial_infeasible():
    # x1 + x2 = -1 has no nonnegative solution
    result = solve_equality_feasibility([[1, 1]], [-1])
    assert not result.feasible
    assert result.certificate is not None


def test_degenerate_system():
    # duplicated constraints, zero rhs
    result = solve_equality_feasibility([[1, -1], [1, -1], [2, -2]], [0, 0, 0])
    assert result.feasible


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda m: st.integers(min_value=1, max_value=5).flatmap(
            lambda n: st.tuples(
                st.lists(st.lists(small_int, min_size=n, max_size=n),
                         min_size=m, max_size=m),
                st.lists(st.integers(min_value=0, max_value=4),
                         min_size=n, max_size=n),
            ))))
def test_feasible_by_construction(data):
    # b := A x0 for a nonnegative x0, so the system must be feasible and the
    # returned solution must reproduce b exactly
    matrix, x0 = data
    rhs = [sum(row[j] * x0[j] for j in range(len(x0))) for row in matrix]
    result = solve_equality_feasibility(matrix, rhs)
    assert result.feasible
    x = result.solution
    assert all(v >= 0 for v in x)
    for row, b in zip(matrix, rhs):
        assert sum(r * v for r, v in zip(row, x)) == b


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda m: st.integers(min_value=1, max_value=5).flatmap(
            lambda n: st.tuples(
                st.lists(st.lists(small_int, min_size=n, max_size=n),
                         min_size=m, max_size=m),
                st.lists(small_int, min_size=m, max_size=m),
            ))))
def test_verdicts_are_certified(data):
    # whatever the verdict, the certificate it carries proves it exactly
    # (the solver itself re-verifies internally and raises otherwise)
    matrix, rhs = data
    result = solve_equality_feasibility(matrix, rhs)
    if result.feasible:
        x = result.solution
        assert all(v >= 0 for v in x)
        for row, b in zip(matrix, rhs):
            assert sum(Fraction(r) * v for r, v in zip(row, x)) == b
    else:
        y = result.certificate
        n = len(matrix[0])
        for j in range(n):
            assert sum(y[i] * matrix[i][j] for i in range(len(matrix))) <= 0
        assert sum(y[i] * rhs[i] for i in range(len(matrix))) > 0
