"""
Exact scalars and the Pell equation ``x^2 - 4d*y^2 = 1``.

Rationals are plain :class:`fractions.Fraction` instances, which are always
kept in lowest terms with a positive denominator. Elements of ``Q(sqrt(d))``
are :class:`QuadraticNumber` instances.
"""
import logging
import math
from collections import namedtuple
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from sympy import integer_nthroot

from pellwalls import exceptions

logger = logging.getLogger(name=__name__)

Rational = Fraction

LESS = -1
EQUAL = 0
GREATER = 1

# Minimal solutions with y0 up to this bound are double-checked by an
# exhaustive scan.
DEFAULT_CERTIFY_BOUND = 10 ** 6


def floor_sqrt(n):
    """Returns the exact integer square root of a non-negative integer."""
    if n < 0:
        raise ValueError('Cannot take the square root of {}.'.format(n))
    root, _exact = integer_nthroot(n, 2)
    return int(root)


def is_perfect_square(n):
    if n < 0:
        raise ValueError('Negative numbers are not squares: {}.'.format(n))
    _root, exact = integer_nthroot(n, 2)
    return bool(exact)


def _sign(value):
    return (value > 0) - (value < 0)


def _sign_of(a, b, d):
    """Sign of ``a + b*sqrt(d)``, squaring only when the terms disagree."""
    sign_a, sign_b = _sign(a), _sign(b)
    if sign_b == 0:
        return sign_a
    if sign_a == 0 or sign_a == sign_b:
        return sign_b
    return sign_a * _sign(a * a - b * b * d)


class QuadraticNumber:
    """
    The real number ``a + b*sqrt(d)`` with ``a`` and ``b`` rational.

    ``d`` is the radicand context and is kept exactly as given (it is not
    reduced to its square-free part). When ``d`` is a perfect square the value
    is folded into ``a``, so rational values always have ``b == 0``.

    Instances are immutable.
    """

    __slots__ = ('a', 'b', 'd')

    def __init__(self, a, b=0, d=1):
        a, b = Fraction(a), Fraction(b)
        if d < 1:
            raise ValueError('Radicand must be positive, got {}.'.format(d))
        if b and is_perfect_square(d):
            a += b * floor_sqrt(d)
            b = Fraction(0)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'd', d)

    def __setattr__(self, name, value):
        raise AttributeError('QuadraticNumber is immutable.')

    def __reduce__(self):
        return (QuadraticNumber, (self.a, self.b, self.d))

    @classmethod
    def sqrt(cls, d):
        return cls(0, 1, d)

    @classmethod
    def coerce(cls, value, d=1):
        if isinstance(value, QuadraticNumber):
            return value
        return cls(value, 0, d)

    @property
    def is_rational(self):
        return self.b == 0

    def as_rational(self):
        if self.b:
            raise ValueError('{} is not rational.'.format(self))
        return self.a

    def _pair(self, other):
        """
        Brings both operands into a common radicand context.

        Rational values fit in any context; two irrational values must share
        their radicand.
        """
        if isinstance(other, (int, Fraction)):
            return self, QuadraticNumber(other, 0, self.d)
        if not isinstance(other, QuadraticNumber):
            return None
        if self.d == other.d:
            return self, other
        if self.b and other.b:
            raise exceptions.MismatchedRadicand(self.d, other.d)
        d = other.d if other.b else self.d
        return (
            QuadraticNumber(self.a, self.b, d),
            QuadraticNumber(other.a, other.b, d),
        )

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        p, q = pair
        return QuadraticNumber(p.a + q.a, p.b + q.b, p.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        p, q = pair
        return QuadraticNumber(p.a - q.a, p.b - q.b, p.d)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        p, q = pair
        return QuadraticNumber(q.a - p.a, q.b - p.b, p.d)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        p, q = pair
        return QuadraticNumber(
            p.a * q.a + p.b * q.b * p.d,
            p.a * q.b + p.b * q.a,
            p.d,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        p, q = pair
        norm = q.norm()
        if norm == 0:
            raise ZeroDivisionError('Division of {} by zero.'.format(p))
        numerator = p * q.conjugate()
        return QuadraticNumber(numerator.a / norm, numerator.b / norm, p.d)

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        p, q = pair
        return q / p

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = QuadraticNumber(1, 0, self.d)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        # Irrationals over different radicands are never equal; only the
        # orderings refuse to compare them.
        try:
            if self._pair(other) is None:
                return NotImplemented
            return qn_compare(self, other) == EQUAL
        except exceptions.MismatchedRadicand:
            return False

    def __lt__(self, other):
        if self._pair(other) is None:
            return NotImplemented
        return qn_compare(self, other) == LESS

    def __le__(self, other):
        if self._pair(other) is None:
            return NotImplemented
        return qn_compare(self, other) != GREATER

    def __gt__(self, other):
        if self._pair(other) is None:
            return NotImplemented
        return qn_compare(self, other) == GREATER

    def __ge__(self, other):
        if self._pair(other) is None:
            return NotImplemented
        return qn_compare(self, other) != LESS

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _approximation(self, digits):
        magnitude = len(str(abs(math.floor(self.a)) + 1)) + len(str(
            (abs(math.floor(self.b)) + 1) * (floor_sqrt(self.d) + 1)
        ))
        with localcontext() as ctx:
            ctx.prec = digits + magnitude + 10
            a = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            b = Decimal(self.b.numerator) / Decimal(self.b.denominator)
            return a + b * Decimal(self.d).sqrt()

    def __floor__(self):
        if not self.b:
            return math.floor(self.a)
        estimate = math.floor(self._approximation(10))
        while self < estimate:
            estimate -= 1
        while self >= estimate + 1:
            estimate += 1
        return estimate

    def __float__(self):
        return float(self._approximation(20))

    def __str__(self):
        if not self.b:
            return str(self.a)
        radical = 'sqrt({})'.format(self.d)
        if self.b != 1:
            radical = '{}*{}'.format(self.b, radical)
        if not self.a:
            return radical
        return '{} + {}'.format(self.a, radical)

    def __repr__(self):
        return 'QuadraticNumber({!r}, {!r}, {!r})'.format(
            self.a, self.b, self.d
        )


def qn_compare(p, q):
    """
    Compares two elements of ``Q(sqrt(d))`` exactly.

    Returns ``LESS``, ``EQUAL`` or ``GREATER``. Plain rationals are accepted
    on either side.
    """
    p = QuadraticNumber.coerce(p, getattr(q, 'd', 1))
    pair = p._pair(q)
    if pair is None:
        raise TypeError('Cannot compare {!r} with {!r}.'.format(p, q))
    p, q = pair
    return _sign_of(p.a - q.a, p.b - q.b, p.d)


class PellSolution(namedtuple('PellSolution', ['x', 'y', 'd'])):
    """
    A non-negative solution of ``x^2 - 4d*y^2 = 1``.

    Only the identity ``(1, 0)`` has ``y == 0``; every other instance is a
    positive solution.
    """

    __slots__ = ()

    def __new__(cls, x, y, d):
        if x <= 0 or y < 0 or x * x - 4 * d * y * y != 1:
            raise exceptions.InvalidPellSolution(x, y, d)
        return super().__new__(cls, x, y, d)

    @classmethod
    def identity(cls, d):
        return cls(1, 0, d)

    @property
    def is_trivial(self):
        return self.y == 0


def _continued_fraction_solution(n):
    """
    Fundamental solution of ``x^2 - n*y^2 = 1`` for non-square ``n``.

    Walks the convergents of the continued fraction of ``sqrt(n)`` until one
    of them solves the equation.
    """
    a0 = floor_sqrt(n)
    m, q, a = 0, 1, a0
    p_prev, p = 1, a0
    r_prev, r = 0, 1
    while p * p - n * r * r != 1:
        m = a * q - m
        q = (n - m * m) // q
        a = (a0 + m) // q
        p_prev, p = p, a * p + p_prev
        r_prev, r = r, a * r + r_prev
    return p, r


@lru_cache(maxsize=None)
def pell_minimal(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Returns the minimal positive solution for ``d``, or None when ``d`` is a
    perfect square.

    :param int certify_bound: When the solution has ``y <= certify_bound``,
        minimality is re-checked with :func:`pell_bruteforce_oracle`.
    """
    if d < 1:
        raise ValueError('d must be positive, got {}.'.format(d))
    if is_perfect_square(d):
        logger.debug('d=%d is a perfect square: only trivial solutions.', d)
        return None

    x, y = _continued_fraction_solution(4 * d)
    solution = PellSolution(x, y, d)
    logger.debug('Continued fractions give %s for d=%d.', solution, d)

    if y <= certify_bound:
        found = pell_bruteforce_oracle(d, y)
        if not found or found[0] != solution:
            raise exceptions.InvariantViolation(
                'continued fractions gave {} for d={} but the exhaustive '
                'scan found {}'.format(solution, d, found[:1])
            )
        logger.debug('Certified minimality of %s by exhaustive scan.',
                     solution)

    return solution


def pell_next(solution, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Composes ``solution`` with the minimal solution of the same ``d``.

    Starting from the identity this enumerates every positive solution in
    increasing order.
    """
    minimal = pell_minimal(solution.d, certify_bound)
    if minimal is None:
        raise exceptions.NoPellSolution(solution.d)
    x0, y0, d = minimal
    return PellSolution(
        x0 * solution.x + 4 * d * y0 * solution.y,
        x0 * solution.y + y0 * solution.x,
        d,
    )


def pell_solutions(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """Yields the positive solutions for ``d`` in increasing order."""
    if pell_minimal(d, certify_bound) is None:
        raise exceptions.NoPellSolution(d)
    solution = PellSolution.identity(d)
    while True:
        solution = pell_next(solution, certify_bound)
        yield solution


def pell_bruteforce_oracle(d, y_bound):
    """
    All positive solutions with ``y <= y_bound``, by exhaustive scan.

    Independent of the continued fraction solver: every ``y`` is tried and
    ``4d*y^2 + 1`` is tested for being a perfect square.
    """
    if is_perfect_square(d):
        raise ValueError('d={} is a perfect square.'.format(d))
    found = []
    for y in range(1, y_bound + 1):
        value = 4 * d * y * y + 1
        root = floor_sqrt(value)
        if root * root == value:
            found.append(PellSolution(root, y, d))
    return found
