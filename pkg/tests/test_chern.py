import pickle
from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pellwalls import chern, walls
from pellwalls.arith import is_perfect_square, pell_solutions
from pellwalls.chern import ChernVector


def test_ideal_point_class():
    v = chern.ideal_point_class(7)
    assert tuple(v) == (14, 0, -1, 7)
    assert v.discriminant == 28
    assert chern.slope(v) == 0


def test_ideal_point_class_rejects_nonpositive():
    with pytest.raises(ValueError):
        chern.ideal_point_class(0)


def test_half_integer_v2():
    v = ChernVector(4, -2, Fraction(1, 2), 1)
    assert v.v2 == Fraction(1, 2)
    with pytest.raises(ValueError):
        ChernVector(Fraction(1, 2), 0, 0, 1)


def test_arithmetic():
    u = ChernVector(8, -4, 1, 2)
    w = ChernVector(-4, 4, -2, 2)
    assert u + w == chern.ideal_point_class(2)
    assert u - u == ChernVector(0, 0, 0, 2)
    assert -w == ChernVector(4, -4, 2, 2)
    assert u.scaled(3) == ChernVector(24, -12, 3, 2)
    assert len({u, ChernVector(8, -4, 1, 2)}) == 1


def test_mixed_polarizations():
    with pytest.raises(ValueError):
        chern.ideal_point_class(2) + chern.ideal_point_class(3)


def test_immutable_and_picklable():
    v = ChernVector(8, -4, 1, 2)
    with pytest.raises(AttributeError):
        v.v0 = 1
    assert pickle.loads(pickle.dumps(v)) == v


def test_slope_of_rank_zero():
    assert chern.slope(ChernVector(0, 2, 1, 1)) is chern.INFINITY


def test_chi_polynomial():
    v = chern.ideal_point_class(5)
    assert chern.chi_polynomial(v) == (5, 0, -1)
    assert chern.chi_twist(v, Fraction(1, 2)) == Fraction(1, 4)
    assert chern.chi_twist(v, 0) == -1


def test_tilt_nu():
    v = chern.ideal_point_class(2)
    # (-1 + ((1 - 1)/2)*4) / (0 + 4) at beta = -1, t = 1
    assert chern.tilt_nu(v, -1, 1) == Fraction(-1, 4)
    assert chern.tilt_nu(ChernVector(0, 0, 1, 2), 0, 1) is chern.INFINITY
    assert chern.tilt_nu(v, 0, Fraction(1, 2)) is chern.INFINITY


def test_tilt_nu_degenerate():
    v = ChernVector(2, 0, 1, 1)
    # Numerator 1 + (0 - 1)*2/2 vanishes together with the denominator.
    assert chern.tilt_nu(v, 0, 1) is chern.DEGENERATE


def test_tilt_nu_rejects_negative_t():
    with pytest.raises(ValueError):
        chern.tilt_nu(chern.ideal_point_class(2), 0, -1)


@given(
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.fractions(min_value=-50, max_value=50, max_denominator=2),
    st.fractions(min_value=-5, max_value=5, max_denominator=10),
    st.fractions(min_value=0, max_value=5, max_denominator=10),
)
def test_tilt_charge_is_linear(v0, v1, v2, beta, t):
    u = ChernVector(v0, v1, v2, 3)
    w = chern.ideal_point_class(3)
    total = chern.tilt_charge(*tuple(u + w)[:3], beta, t)
    parts = [chern.tilt_charge(*tuple(v)[:3], beta, t) for v in (u, w)]
    assert total == (parts[0][0] + parts[1][0], parts[0][1] + parts[1][1])


def test_divisibility():
    assert chern.satisfies_divisibility(ChernVector(8, -4, 1, 2))
    assert not chern.satisfies_divisibility(ChernVector(8, -2, 1, 2))


@given(
    st.integers(min_value=-10 ** 6, max_value=10 ** 6),
    st.integers(min_value=-10 ** 6, max_value=10 ** 6),
    st.integers(min_value=-10 ** 6, max_value=10 ** 6),
    st.integers(min_value=-1000, max_value=1000),
    st.integers(min_value=1, max_value=1000),
)
def test_discriminant_is_quadratic(v0, v1, twice_v2, k, d):
    v = ChernVector(v0, v1, Fraction(twice_v2, 2), d)
    assert chern.discriminant(v.scaled(k)) == k * k * chern.discriminant(v)


@pytest.mark.parametrize('d', range(1, 51))
def test_discriminant_divisible_by_4d(d):
    classes = [chern.ideal_point_class(d)]
    if not is_perfect_square(d):
        for solution in islice(pell_solutions(d), 3):
            pair = walls.pell_to_pair(d, solution)
            classes.extend([pair.sub, pair.quot])
    for v in classes:
        assert chern.satisfies_divisibility(v)
        assert chern.discriminant(v) % (4 * d) == 0
