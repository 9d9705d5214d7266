"""
Numerical classes on a (1, d)-polarized abelian surface.

A class is stored as ``v = (l^2*ch0, l*ch1, ch2)`` with ``l^2 = 2d``.
"""
import logging
from fractions import Fraction

logger = logging.getLogger(name=__name__)


class _Symbol:
    """A named sentinel value, compared by identity."""

    __slots__ = ('name',)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    __str__ = __repr__


#: Slope of a class whose defining quotient has a zero denominator.
INFINITY = _Symbol('+infinity')
#: Reported by :func:`tilt_nu` when both parts of the charge vanish.
DEGENERATE = _Symbol('degenerate')


class ChernVector:
    """
    The numerical class ``(v0, v1, v2)`` for polarization type ``d``.

    ``v0`` and ``v1`` are integers; ``v2`` may be a half-integer, so it is
    kept as a :class:`~fractions.Fraction`.
    """

    __slots__ = ('v0', 'v1', 'v2', 'd')

    def __init__(self, v0, v1, v2, d):
        if Fraction(v0).denominator != 1 or Fraction(v1).denominator != 1:
            raise ValueError(
                'v0 and v1 must be integers, got {} and {}.'.format(v0, v1)
            )
        if d < 1:
            raise ValueError('d must be positive, got {}.'.format(d))
        object.__setattr__(self, 'v0', int(v0))
        object.__setattr__(self, 'v1', int(v1))
        object.__setattr__(self, 'v2', Fraction(v2))
        object.__setattr__(self, 'd', d)

    def __setattr__(self, name, value):
        raise AttributeError('ChernVector is immutable.')

    def __reduce__(self):
        return (ChernVector, (self.v0, self.v1, self.v2, self.d))

    def _check_context(self, other):
        if not isinstance(other, ChernVector):
            return False
        if other.d != self.d:
            raise ValueError(
                'Classes for d={} and d={} cannot be combined.'.format(
                    self.d, other.d
                )
            )
        return True

    def __add__(self, other):
        if not self._check_context(other):
            return NotImplemented
        return ChernVector(
            self.v0 + other.v0,
            self.v1 + other.v1,
            self.v2 + other.v2,
            self.d,
        )

    def __sub__(self, other):
        if not self._check_context(other):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ChernVector(-self.v0, -self.v1, -self.v2, self.d)

    def scaled(self, k):
        return ChernVector(k * self.v0, k * self.v1, k * self.v2, self.d)

    def __eq__(self, other):
        if not isinstance(other, ChernVector):
            return NotImplemented
        return tuple(self) == tuple(other)

    def __hash__(self):
        return hash(tuple(self))

    def __iter__(self):
        return iter((self.v0, self.v1, self.v2, self.d))

    def __str__(self):
        return '({}, {}, {})'.format(self.v0, self.v1, self.v2)

    def __repr__(self):
        return 'ChernVector({}, {}, {!r}, d={})'.format(
            self.v0, self.v1, self.v2, self.d
        )

    @property
    def discriminant(self):
        return discriminant(self)


def discriminant(v):
    """Returns ``v1^2 - 2*v0*v2``."""
    return v.v1 * v.v1 - 2 * v.v0 * v.v2


def ideal_point_class(d):
    """The class of the ideal sheaf of a point: ``(2d, 0, -1)``."""
    if d < 1:
        raise ValueError('d must be positive, got {}.'.format(d))
    return ChernVector(2 * d, 0, -1, d)


def slope(v):
    if v.v0 == 0:
        return INFINITY
    return Fraction(v.v1, v.v0)


def chi_polynomial(v):
    """
    Coefficients ``(a2, a1, a0)`` of ``x -> chi(v, x)``.

    By Riemann-Roch on an abelian surface the Euler characteristic of the
    class twisted by ``x*l`` is ``(x^2/2)*v0 + x*v1 + v2``.
    """
    return Fraction(v.v0, 2), Fraction(v.v1), v.v2


def chi_twist(v, x):
    a2, a1, a0 = chi_polynomial(v)
    return (a2 * x + a1) * x + a0


def tilt_charge(v0, v1, v2, beta, t):
    """
    Numerator and denominator of the tilt slope, with ``t = alpha^2``.

    The slope is ``(v2 - beta*v1 + ((beta^2 - t)/2)*v0) / (v1 - beta*v0)``.
    Only ring operations are used, so the arguments may be any exact scalars
    (including symbolic ones).
    """
    numerator = v2 - beta * v1 + (beta * beta - t) * v0 / 2
    denominator = v1 - beta * v0
    return numerator, denominator


def tilt_nu(v, beta, t):
    """
    Returns the tilt slope of ``v`` at ``(beta, t)``.

    The result is a :class:`~fractions.Fraction`, :data:`INFINITY` when only
    the denominator vanishes, or :data:`DEGENERATE` when both do.
    """
    beta, t = Fraction(beta), Fraction(t)
    if t < 0:
        raise ValueError('t = alpha^2 must be non-negative, got {}.'.format(t))
    numerator, denominator = tilt_charge(v.v0, v.v1, v.v2, beta, t)
    if denominator == 0:
        return DEGENERATE if numerator == 0 else INFINITY
    return numerator / denominator


def satisfies_divisibility(v):
    """Whether ``2d`` divides both ``v0`` and ``v1``."""
    return v.v0 % (2 * v.d) == 0 and v.v1 % (2 * v.d) == 0
