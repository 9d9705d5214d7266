import math
import pickle
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.solvers.diophantine.diophantine import diop_DN

from pellwalls import exceptions
from pellwalls.arith import (
    EQUAL,
    floor_sqrt,
    GREATER,
    is_perfect_square,
    LESS,
    pell_bruteforce_oracle,
    pell_minimal,
    pell_next,
    pell_solutions,
    PellSolution,
    qn_compare,
    QuadraticNumber,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
non_square = st.integers(min_value=2, max_value=200).filter(
    lambda d: not is_perfect_square(d)
)


@pytest.mark.parametrize('n,expected', [
    (0, 0),
    (1, 1),
    (3, 1),
    (4, 2),
    (99, 9),
    (10 ** 40, 10 ** 20),
    (10 ** 40 - 1, 10 ** 20 - 1),
])
def test_floor_sqrt(n, expected):
    assert floor_sqrt(n) == expected


def test_perfect_square():
    assert [n for n in range(30) if is_perfect_square(n)] == [0, 1, 4, 9, 16,
                                                              25]


def test_perfect_square_radicand_folds():
    n = QuadraticNumber(1, 2, 9)
    assert n.is_rational
    assert n == 7
    assert hash(n) == hash(Fraction(7))


def test_quadratic_arithmetic():
    root = QuadraticNumber.sqrt(2)
    assert root * root == 2
    assert (1 + root) * (1 - root) == -1
    assert 1 / root == root / 2
    assert (root + 1) ** 2 == 3 + 2 * root
    assert (root + 1).norm() == -1
    assert str(-root / 2) == '-1/2*sqrt(2)'


def test_immutable():
    n = QuadraticNumber(1, 1, 3)
    with pytest.raises(AttributeError):
        n.a = 2


def test_pickle():
    n = QuadraticNumber(Fraction(1, 3), Fraction(-2, 5), 7)
    assert pickle.loads(pickle.dumps(n)) == n


def test_mismatched_radicands():
    with pytest.raises(exceptions.MismatchedRadicand):
        qn_compare(QuadraticNumber.sqrt(2), QuadraticNumber.sqrt(3))
    with pytest.raises(exceptions.MismatchedRadicand):
        sorted([QuadraticNumber.sqrt(2), QuadraticNumber.sqrt(3)])


def test_mismatched_radicands_are_unequal():
    assert QuadraticNumber.sqrt(2) != QuadraticNumber.sqrt(3)
    assert not QuadraticNumber.sqrt(2) == QuadraticNumber.sqrt(3)
    assert QuadraticNumber(1, 0, 2) == QuadraticNumber(1, 0, 3)


def test_rationals_fit_any_context():
    assert qn_compare(Fraction(1, 2), QuadraticNumber.sqrt(2)) == LESS
    assert qn_compare(QuadraticNumber.sqrt(5), 2) == GREATER
    assert qn_compare(QuadraticNumber(3, 0, 2), 3) == EQUAL


def test_compare_close_values():
    # 99/70 is a convergent of sqrt(2) and lies above it by less than 1e-4.
    root = QuadraticNumber.sqrt(2)
    assert root < Fraction(99, 70)
    assert root > Fraction(140, 99)
    assert math.floor(QuadraticNumber(0, 10 ** 12, 2)) == 1414213562373


@given(rationals, rationals, rationals, rationals, non_square)
def test_compare_matches_sign_of_difference(a, b, c, e, d):
    p = QuadraticNumber(a, b, d)
    q = QuadraticNumber(c, e, d)
    difference = float(p - q)
    result = qn_compare(p, q)
    if abs(difference) > 1e-9:
        assert result == (LESS if difference < 0 else GREATER)
    assert qn_compare(q, p) == -result
    assert (p == q) == (result == EQUAL)


@given(rationals, rationals, non_square)
def test_floor_is_exact(a, b, d):
    n = QuadraticNumber(a, b, d)
    k = math.floor(n)
    assert k <= n < k + 1


@pytest.mark.parametrize('d,x,y', [
    (2, 3, 1),
    (3, 7, 2),
    (5, 9, 2),
    (6, 5, 1),
    (7, 127, 24),
])
def test_pell_minimal_spot_values(d, x, y):
    assert pell_minimal(d) == PellSolution(x, y, d)


def test_pell_minimal_squares():
    for d in (1, 4, 9, 16, 25):
        assert pell_minimal(d) is None


def test_pell_minimal_rejects_nonpositive():
    with pytest.raises(ValueError):
        pell_minimal(0)


def test_invalid_solution():
    with pytest.raises(exceptions.InvalidPellSolution) as excinfo:
        PellSolution(4, 1, 2)
    assert 'x^2 - 4*2*y^2 = 1' in str(excinfo.value)


@pytest.mark.parametrize('d', [
    d for d in range(2, 51) if not is_perfect_square(d)
])
def test_pell_minimal_matches_oracle(d):
    solution = pell_minimal(d)
    if solution.y <= 10 ** 4:
        assert pell_bruteforce_oracle(d, solution.y)[0] == solution


@given(non_square)
def test_pell_minimal_matches_sympy(d):
    solution = pell_minimal(d, certify_bound=0)
    x, y = diop_DN(4 * d, 1)[0]
    assert (solution.x, solution.y) == (x, y)


def test_pell_next():
    minimal = pell_minimal(7)
    assert pell_next(minimal) == PellSolution(32257, 6096, 7)
    assert pell_next(PellSolution.identity(7)) == minimal


def test_pell_solutions_are_increasing():
    solutions = pell_solutions(2)
    assert [(s.x, s.y) for s in (next(solutions) for _ in range(3))] == [
        (3, 1), (17, 6), (99, 35),
    ]


def test_pell_solutions_square():
    with pytest.raises(exceptions.NoPellSolution):
        next(pell_solutions(9))


def test_oracle_lists_every_solution():
    assert pell_bruteforce_oracle(2, 40) == [
        PellSolution(3, 1, 2),
        PellSolution(17, 6, 2),
        PellSolution(99, 35, 2),
    ]
