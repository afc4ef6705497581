from fractions import Fraction

from ksmooth.lp import LPStatus, lp_feasible, solve_lp
from ksmooth.scalars import FieldTag, QuadScalar

Q = FieldTag.RATIONAL
K = FieldTag.QUAD_SQRT2


def test_convex_combination_feasible():
    # weights summing to one with zero mean against (1, -1)
    sol = lp_feasible([[1, 1], [1, -1]], [1, 0], Q)
    assert sol == (Fraction(1, 2), Fraction(1, 2))


def test_infeasible_detected():
    assert lp_feasible([[1, 1], [1, 1]], [1, 0], Q) is None


def test_redundant_rows_handled():
    sol = lp_feasible([[1, 1], [2, 2]], [1, 2], Q)
    assert sol is not None and sum(sol) == 1


def test_maximize_slack():
    # x free (split u-v), slack s shared under x+s<=1 and -x+s<=1: optimum 1
    rows = [[1, -1, 1, 1, 0], [-1, 1, 1, 0, 1]]
    result = solve_lp(rows, [1, 1], [0, 0, 1, 0, 0], Q, maximize=True)
    assert result.status is LPStatus.OPTIMAL
    assert result.objective == 1


def test_unbounded_detected():
    result = solve_lp([[1, -1]], [0], [-1, 0], Q)
    assert result.status is LPStatus.UNBOUNDED


def test_quadratic_field_pivoting():
    rows = [[QuadScalar(1), QuadScalar(1)],
            [QuadScalar(0, 1), QuadScalar(0, -1)]]
    sol = lp_feasible(rows, [QuadScalar(1), QuadScalar(0)], K)
    assert sol == (QuadScalar(Fraction(1, 2)), QuadScalar(Fraction(1, 2)))


def test_degenerate_cycling_terminates():
    # classic degenerate vertex; Bland's rule must still terminate
    rows = [
        [Fraction(1, 4), -8, -1, 9, 1, 0, 0],
        [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    c = [Fraction(-3, 4), 20, Fraction(-1, 2), 6, 0, 0, 0]
    result = solve_lp(rows, [0, 0, 1], c, Q)
    assert result.status is LPStatus.OPTIMAL
    assert result.objective == Fraction(-5, 4)
