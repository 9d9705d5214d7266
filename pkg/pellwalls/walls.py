"""
Walls for the ideal sheaf of a point in the ``(beta, t = alpha^2)`` plane.

Every wall is a semicircle centred on the ``beta`` axis. For the ideal-point
class the walls come from Pell solutions and their endpoints are rational.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from itertools import islice

import sympy

from pellwalls import chern
from pellwalls import exceptions
from pellwalls.arith import (
    DEFAULT_CERTIFY_BOUND,
    PellSolution,
    QuadraticNumber,
    floor_sqrt,
    is_perfect_square,
    pell_solutions,
)

logger = logging.getLogger(name=__name__)

BETA, T = sympy.symbols('beta t')

# Monomials (beta, t) allowed in the expanded wall equation.
_SEMICIRCLE_MONOMIALS = {(0, 0), (1, 0), (2, 0), (0, 1)}


def _sqrt_rational(value):
    """Returns ``sqrt(p/q)`` as ``(1/q)*sqrt(p*q)``."""
    return QuadraticNumber(
        0,
        Fraction(1, value.denominator),
        value.numerator * value.denominator,
    )


class Wall(namedtuple('Wall', ['center_beta', 'radius_sq', 'endpoints'])):
    """
    A semicircular wall ``(beta - center)^2 + t = radius_sq``.

    ``endpoints`` is ``(p_quot, p_sub)``, the two roots at ``t = 0``. They are
    :class:`~pellwalls.arith.QuadraticNumber` instances, rational for every
    Pell wall.
    """

    __slots__ = ()

    def __new__(cls, center_beta, radius_sq):
        center_beta, radius_sq = Fraction(center_beta), Fraction(radius_sq)
        if radius_sq <= 0:
            raise ValueError(
                'Radius squared must be positive, got {}.'.format(radius_sq)
            )
        root = _sqrt_rational(radius_sq)
        p_quot, p_sub = center_beta - root, center_beta + root

        if (
            p_quot + p_sub != 2 * center_beta or
            (p_sub - center_beta) ** 2 != radius_sq
        ):
            raise exceptions.InvariantViolation(
                'endpoints {} and {} disagree with center {} and radius '
                'squared {}'.format(p_quot, p_sub, center_beta, radius_sq)
            )

        return super().__new__(cls, center_beta, radius_sq, (p_quot, p_sub))

    def __getnewargs__(self):
        return (self.center_beta, self.radius_sq)

    @property
    def p_quot(self):
        return self.endpoints[0]

    @property
    def p_sub(self):
        return self.endpoints[1]

    def t_at(self, beta):
        """Height ``t = alpha^2`` of the wall above ``beta``."""
        return self.radius_sq - (Fraction(beta) - self.center_beta) ** 2

    def contains(self, other):
        """Whether ``other`` is strictly nested inside this wall."""
        return self.p_quot < other.p_quot and other.p_sub < self.p_sub


class DestabilizingPair(namedtuple('DestabilizingPair', ['sub', 'quot',
                                                         'solution'])):
    """
    The classes of a destabilizing subobject and its quotient.

    The invariants are checked on construction.
    """

    __slots__ = ()

    def __new__(cls, sub, quot, solution):
        pair = super().__new__(cls, sub, quot, solution)
        ideal = chern.ideal_point_class(sub.d)
        if sub + quot != ideal:
            raise exceptions.InvariantViolation(
                '{} + {} is not the ideal-point class {}'.format(
                    sub, quot, ideal
                )
            )
        if sub.discriminant != 0 or quot.discriminant != 0:
            raise exceptions.InvariantViolation(
                'discriminants of {} and {} must vanish'.format(sub, quot)
            )
        if sub.v0 <= 0 or sub.v1 >= 0:
            raise exceptions.InvariantViolation(
                'sub class {} must have positive rank and negative '
                'slope'.format(sub)
            )
        return pair


def _as_sympy(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _charge(v):
    return chern.tilt_charge(
        _as_sympy(v.v0), _as_sympy(v.v1), _as_sympy(v.v2), BETA, T
    )


def _proportional(u, w):
    return (
        u.v0 * w.v1 == u.v1 * w.v0 and
        u.v0 * w.v2 == u.v2 * w.v0 and
        u.v1 * w.v2 == u.v2 * w.v1
    )


def wall_between(u, w):
    """
    The locus where ``u`` and ``w`` have equal tilt slope.

    The cross-multiplied equality is expanded symbolically and solved for
    ``t`` as a quadratic in ``beta``. It must describe a semicircle
    ``t = -(beta - center)^2 + radius_sq`` with positive ``radius_sq``.
    """
    if _proportional(u, w):
        raise exceptions.ProportionalClasses(u, w)

    numerator_u, denominator_u = _charge(u)
    numerator_w, denominator_w = _charge(w)
    locus = sympy.Poly(
        sympy.expand(
            numerator_u * denominator_w - numerator_w * denominator_u
        ),
        BETA,
        T,
    )
    coefficients = {
        monomial: Fraction(int(value.p), int(value.q))
        for monomial, value in locus.terms()
        if value != 0
    }
    logger.debug('Wall equation for %s and %s: %s', u, w, coefficients)

    if set(coefficients) - _SEMICIRCLE_MONOMIALS:
        raise exceptions.NotASemicircle(u, w, 'is not a semicircle')
    t_coefficient = coefficients.get((0, 1), 0)
    if t_coefficient == 0:
        raise exceptions.NotASemicircle(u, w, 'does not depend on alpha')

    # t = a*beta^2 + b*beta + c
    a = -coefficients.get((2, 0), 0) / t_coefficient
    b = -coefficients.get((1, 0), 0) / t_coefficient
    c = -coefficients.get((0, 0), 0) / t_coefficient
    if a != -1:
        raise exceptions.NotASemicircle(u, w, 'is not a semicircle')

    center = b / 2
    radius_sq = c + center * center
    if radius_sq <= 0:
        raise exceptions.NotASemicircle(u, w, 'is empty in alpha > 0')

    return Wall(center, radius_sq)


def pell_to_pair(d, solution):
    """
    The destabilizing pair attached to a positive Pell solution.
    """
    x, y = solution.x, solution.y
    if solution.d != d:
        raise exceptions.InvariantViolation(
            'solution {} does not belong to d={}'.format(solution, d)
        )
    if solution.is_trivial:
        raise exceptions.InvariantViolation(
            'the trivial solution does not define a wall'
        )
    if x % 2 == 0:
        raise exceptions.InvariantViolation(
            'x={} is even in {}'.format(x, solution)
        )
    sub = chern.ChernVector(d * (x + 1), -2 * d * y, Fraction(x - 1, 2), d)
    quot = chern.ChernVector((1 - x) * d, 2 * d * y, Fraction(-(x + 1), 2), d)
    return DestabilizingPair(sub, quot, solution)


def wall_endpoints_formula(solution):
    """``(p_quot, p_sub) = (-2y/(x-1), -2y/(x+1))``."""
    x, y = solution.x, solution.y
    return Fraction(-2 * y, x - 1), Fraction(-2 * y, x + 1)


def accumulation_point(d):
    """``-sqrt(d)/d``, the point the walls accumulate towards."""
    return QuadraticNumber(0, Fraction(-1, d), d)


def enumerate_walls(d, n, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Walls for the first ``n`` positive solutions, largest first.

    Each wall is computed with :func:`wall_between`, compared with the
    closed-form endpoints, checked to be nested in the previous one and to
    straddle the accumulation point.
    """
    if n <= 0:
        return []
    if is_perfect_square(d):
        raise exceptions.NoPellSolution(d)

    ideal = chern.ideal_point_class(d)
    accumulation = accumulation_point(d)
    walls = []
    previous = None

    for solution in islice(pell_solutions(d, certify_bound), n):
        pair = pell_to_pair(d, solution)
        wall = wall_between(ideal, pair.sub)
        expected = wall_endpoints_formula(solution)
        if wall.endpoints != expected:
            raise exceptions.InvariantViolation(
                'wall endpoints {} for {} differ from {}'.format(
                    wall.endpoints, solution, expected
                )
            )
        if not wall.p_quot < accumulation < wall.p_sub:
            raise exceptions.InvariantViolation(
                'wall for {} does not straddle {}'.format(
                    solution, accumulation
                )
            )
        if wall.p_sub >= 0:
            raise exceptions.InvariantViolation(
                'wall for {} reaches beta >= 0'.format(solution)
            )
        if previous is not None and not previous.contains(wall):
            raise exceptions.InvariantViolation(
                'wall for {} is not nested in the previous one'.format(
                    solution
                )
            )
        walls.append((solution, wall))
        previous = wall

    return walls


def bruteforce_wall_scan(d, c_bound):
    """
    Exhaustive search for pairs of discriminant zero classes.

    For ``-c_bound <= c < 0`` the sub class is ``(2dr, 2dc, chi)``. Both
    discriminants vanish exactly when ``r = chi + 1`` and
    ``(2chi + 1)^2 - 4d*c^2 = 1``, so ``chi`` is read off an integer square
    root and every survivor is re-checked on the classes themselves.

    The result must agree with :func:`pell_to_pair` on every solution with
    ``y <= c_bound``.
    """
    ideal = chern.ideal_point_class(d)
    found = []

    for c in range(-1, -c_bound - 1, -1):
        root = floor_sqrt(1 + 4 * d * c * c)
        for chi in ((root - 1) // 2, (-root - 1) // 2):
            r = chi + 1
            if r <= 0:
                continue
            sub = chern.ChernVector(2 * d * r, 2 * d * c, chi, d)
            quot = ideal - sub
            if sub.discriminant == 0 and quot.discriminant == 0:
                found.append(DestabilizingPair(
                    sub, quot, PellSolution(2 * chi + 1, -c, d)
                ))

    expected = []
    if not is_perfect_square(d):
        for solution in pell_solutions(d):
            if solution.y > c_bound:
                break
            expected.append(pell_to_pair(d, solution))

    if found != expected:
        raise exceptions.InvariantViolation(
            'wall scan for d={} found {} pairs, the Pell parametrization '
            'gives {}'.format(d, len(found), len(expected))
        )
    logger.debug('Wall scan for d=%d up to c=%d found %d pairs.', d, c_bound,
                 len(found))
    return found
