"""
Candidate cohomological rank functions of the ideal sheaf of a point.

Each candidate is a continuous piecewise quadratic ``h0`` on ``x >= 0``,
identically zero up to its first breakpoint and equal to ``chi(x) = d*x^2 - 1``
after its last one.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from itertools import islice

from sympy import factorint, isprime

from pellwalls import chern
from pellwalls import exceptions
from pellwalls import walls
from pellwalls.arith import (
    DEFAULT_CERTIFY_BOUND,
    QuadraticNumber,
    is_perfect_square,
    pell_minimal,
    pell_solutions,
)

logger = logging.getLogger(name=__name__)

PERFECT_SQUARE = 'perfect-square'
TRIVIAL = 'trivial'
PELL = 'pell'


class QuadraticPolynomial(namedtuple('QuadraticPolynomial',
                                     ['a2', 'a1', 'a0'])):
    """``a2*x^2 + a1*x + a0`` with rational coefficients."""

    __slots__ = ()

    def __new__(cls, a2=0, a1=0, a0=0):
        return super().__new__(cls, Fraction(a2), Fraction(a1), Fraction(a0))

    def __call__(self, x):
        return (self.a2 * x + self.a1) * x + self.a0

    def __sub__(self, other):
        if not isinstance(other, QuadraticPolynomial):
            return NotImplemented
        return QuadraticPolynomial(
            self.a2 - other.a2, self.a1 - other.a1, self.a0 - other.a0
        )

    def __neg__(self):
        return QuadraticPolynomial(-self.a2, -self.a1, -self.a0)

    def derivative(self):
        return QuadraticPolynomial(0, 2 * self.a2, self.a1)

    @property
    def is_zero(self):
        return not (self.a2 or self.a1 or self.a0)

    def __str__(self):
        terms = []
        for coefficient, power in ((self.a2, 'x^2'), (self.a1, 'x'),
                                   (self.a0, '')):
            if not coefficient:
                continue
            if power and coefficient == 1:
                terms.append(power)
            elif power:
                terms.append('{}*{}'.format(coefficient, power))
            else:
                terms.append(str(coefficient))
        return ' + '.join(terms).replace('+ -', '- ') or '0'


ZERO = QuadraticPolynomial()


class PiecewisePolynomial:
    """
    A continuous piecewise quadratic function on ``x >= 0``.

    Piece ``i`` is used on ``[breakpoints[i - 1], breakpoints[i])``; the first
    piece starts at 0 and the last one is unbounded.
    """

    __slots__ = ('breakpoints', 'pieces')

    def __init__(self, breakpoints, pieces):
        breakpoints = tuple(breakpoints)
        pieces = tuple(pieces)
        if len(pieces) != len(breakpoints) + 1:
            raise ValueError(
                '{} pieces cannot fit between {} breakpoints.'.format(
                    len(pieces), len(breakpoints)
                )
            )
        for left, right in zip(breakpoints, breakpoints[1:]):
            if not left < right:
                raise exceptions.InvariantViolation(
                    'breakpoints {} and {} are not increasing'.format(
                        left, right
                    )
                )
        for index, point in enumerate(breakpoints):
            if pieces[index](point) != pieces[index + 1](point):
                raise exceptions.InvariantViolation(
                    'discontinuity at {}'.format(point)
                )
        object.__setattr__(self, 'breakpoints', breakpoints)
        object.__setattr__(self, 'pieces', pieces)

    def __setattr__(self, name, value):
        raise AttributeError('PiecewisePolynomial is immutable.')

    def __reduce__(self):
        return (PiecewisePolynomial, (self.breakpoints, self.pieces))

    def piece_index(self, x):
        if x < 0:
            raise ValueError('Only x >= 0 is supported, got {}.'.format(x))
        return sum(1 for point in self.breakpoints if point <= x)

    def __call__(self, x):
        return self.pieces[self.piece_index(x)](x)

    def __sub__(self, polynomial):
        return PiecewisePolynomial(
            self.breakpoints, [piece - polynomial for piece in self.pieces]
        )

    def breakpoint_index(self, x0):
        for index, point in enumerate(self.breakpoints):
            if point == x0:
                return index
        raise exceptions.NotABreakpoint(x0)

    def intervals(self):
        """Yields ``(start, end, piece)``; ``end`` is None for the last one."""
        starts = (Fraction(0),) + self.breakpoints
        ends = self.breakpoints + (None,)
        yield from zip(starts, ends, self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return (
            self.breakpoints == other.breakpoints and
            self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.breakpoints, self.pieces))

    def __repr__(self):
        return 'PiecewisePolynomial({!r}, {!r})'.format(
            self.breakpoints, self.pieces
        )


class Shape(namedtuple('Shape', ['kind', 'solution'])):
    __slots__ = ()

    def __str__(self):
        if self.kind == PELL:
            return 'pell({}, {})'.format(self.solution.x, self.solution.y)
        return self.kind


def ideal_chi(d):
    """``x -> d*x^2 - 1``, the Euler characteristic of the ideal sheaf."""
    return QuadraticPolynomial(
        *chern.chi_polynomial(chern.ideal_point_class(d))
    )


def _check_candidate(d, h0):
    if h0.pieces[0] != ZERO:
        raise exceptions.InvariantViolation(
            'h0 must vanish up to its first breakpoint'
        )
    if h0.pieces[-1] != ideal_chi(d):
        raise exceptions.InvariantViolation(
            'h0 must agree with chi after its last breakpoint'
        )
    for piece in h0.pieces:
        if piece.a2 < 0:
            raise exceptions.InvariantViolation(
                'piece {} is not convex'.format(piece)
            )
    for index, point in enumerate(h0.breakpoints):
        left = h0.pieces[index].derivative()(point)
        right = h0.pieces[index + 1].derivative()(point)
        if left > right:
            raise exceptions.InvariantViolation(
                'h0 is not convex at {}'.format(point)
            )


class CrfCandidate(namedtuple('CrfCandidate', ['d', 'shape', 'h0'])):
    """
    A possible ``h0`` for the ideal sheaf of a point.

    Nonnegativity, monotonicity and convexity are checked on construction:
    the first piece is zero and the derivative only jumps upwards.
    """

    __slots__ = ()

    def __new__(cls, d, shape, h0):
        _check_candidate(d, h0)
        return super().__new__(cls, d, shape, h0)


def h0_square_shape(d):
    """Zero up to ``sqrt(d)/d``, then ``d*x^2 - 1``."""
    kind = PERFECT_SQUARE if is_perfect_square(d) else TRIVIAL
    threshold = QuadraticNumber(0, Fraction(1, d), d)
    h0 = PiecewisePolynomial([threshold], [ZERO, ideal_chi(d)])
    return CrfCandidate(d, Shape(kind, None), h0)


def _pell_breakpoints(d, solution):
    x, y = solution.x, solution.y
    return (
        QuadraticNumber(Fraction(2 * y, x + 1), 0, d),
        QuadraticNumber(Fraction(2 * y, x - 1), 0, d),
    )


def h0_pell_shape(d, solution):
    x, y = solution.x, solution.y
    middle = QuadraticPolynomial(
        Fraction(d * (x + 1), 2), -2 * d * y, Fraction(x - 1, 2)
    )
    h0 = PiecewisePolynomial(
        _pell_breakpoints(d, solution), [ZERO, middle, ideal_chi(d)]
    )
    return CrfCandidate(d, Shape(PELL, solution), h0)


def h0_from_pair(d, pair):
    """
    Rebuilds ``h0`` from the wall cut by ``pair``.

    ``h0`` vanishes up to ``-p_sub``, follows the Euler characteristic of the
    sub class up to ``-p_quot`` and that of the ideal sheaf afterwards.
    """
    wall = walls.wall_between(chern.ideal_point_class(d), pair.sub)
    middle = QuadraticPolynomial(*chern.chi_polynomial(pair.sub))
    h0 = PiecewisePolynomial(
        [-wall.p_sub, -wall.p_quot], [ZERO, middle, ideal_chi(d)]
    )
    return CrfCandidate(d, Shape(PELL, pair.solution), h0)


def h1_of(candidate):
    """``h1 = h0 - chi``, which vanishes from the threshold on."""
    h1 = candidate.h0 - ideal_chi(candidate.d)
    if not h1.pieces[-1].is_zero:
        raise exceptions.InvariantViolation(
            'h1 of {} does not vanish after its last breakpoint'.format(
                candidate.shape
            )
        )
    return h1


def epsilon1_of(candidate):
    """The basepoint-freeness threshold of a candidate."""
    return candidate.h0.breakpoints[-1]


def is_c1_at(function, x0):
    """Whether ``function`` is differentiable at its breakpoint ``x0``."""
    index = function.breakpoint_index(x0)
    left, right = function.pieces[index], function.pieces[index + 1]
    return (
        left(x0) == right(x0) and
        left.derivative()(x0) == right.derivative()(x0)
    )


def positivity_lower_bound(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    ``2*y0/x0``: the true ``h0`` is positive for every larger ``x``.
    """
    minimal = pell_minimal(d, certify_bound)
    if minimal is None:
        raise exceptions.NoPellSolution(d)
    return Fraction(2 * minimal.y, minimal.x)


def candidates(d, n_solutions, apply_char_narrowing=False,
               certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    The possible ``h0`` for polarization type ``d``.

    Without narrowing these are the trivial shape followed by the shapes of
    the first ``n_solutions`` Pell solutions. Narrowing keeps only the shapes
    that do not vanish anywhere past :func:`positivity_lower_bound`; first
    breakpoints increase towards ``sqrt(d)/d`` along the Pell solutions, so
    exactly the first two Pell shapes survive.
    """
    if is_perfect_square(d):
        return [h0_square_shape(d)]

    count = max(n_solutions, 3) if apply_char_narrowing else n_solutions
    pell = [
        h0_pell_shape(d, solution)
        for solution in islice(pell_solutions(d, certify_bound), count)
    ]
    trivial = h0_square_shape(d)

    if not apply_char_narrowing:
        return [trivial] + pell[:n_solutions]

    bound = positivity_lower_bound(d, certify_bound)
    survivors = [
        candidate for candidate in [trivial] + pell
        if candidate.h0.breakpoints[0] <= bound
    ]
    if [c.shape for c in survivors] != [c.shape for c in pell[:2]]:
        raise exceptions.InvariantViolation(
            'narrowing for d={} kept {}'.format(
                d, ', '.join(str(c.shape) for c in survivors)
            )
        )
    logger.debug('Narrowed candidates for d=%d: %s', d,
                 [str(c.shape) for c in survivors])
    return survivors


def excluded_characteristics(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Primes dividing ``x0`` or ``x0^2 - 1``.

    Narrowing is only valid when the characteristic of the base field avoids
    all of them.
    """
    minimal = pell_minimal(d, certify_bound)
    if minimal is None:
        raise exceptions.NoPellSolution(d)
    primes = set()
    for factor in (minimal.x, minimal.x - 1, minimal.x + 1):
        primes.update(int(p) for p in factorint(factor))
    for p in primes:
        if not isprime(p):
            raise exceptions.InvariantViolation(
                'factorization of x0={} produced {}'.format(minimal.x, p)
            )
    return frozenset(primes)


SecondSolutionIdentities = namedtuple('SecondSolutionIdentities', [
    'x1_formula', 'y1_formula', 'breakpoint_identity', 'square_middle_piece',
])


def second_solution_identities(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Checks how the second Pell shape is built from the minimal solution.

    ``x1 = x0^2 + 4d*y0^2``, ``y1 = 2*x0*y0``, ``2*y0/x0 = 2*y1/(x1 + 1)`` and
    the middle piece of the second shape is ``d*x0^2*(x - 2*y0/x0)^2``.
    """
    first, second = islice(pell_solutions(d, certify_bound), 2)
    x0, y0 = first.x, first.y
    x1, y1 = second.x, second.y
    middle = h0_pell_shape(d, second).h0.pieces[1]
    square = QuadraticPolynomial(
        d * x0 * x0, -4 * d * x0 * y0, 4 * d * y0 * y0
    )
    return SecondSolutionIdentities(
        x1_formula=x1 == x0 * x0 + 4 * d * y0 * y0,
        y1_formula=y1 == 2 * x0 * y0,
        breakpoint_identity=Fraction(2 * y0, x0) == Fraction(2 * y1, x1 + 1),
        square_middle_piece=middle == square,
    )


def sample_points(xmax, samples):
    """``samples`` equally spaced rationals from 0 to ``xmax`` inclusive."""
    xmax = Fraction(xmax)
    if samples < 1:
        raise ValueError('At least one sample is needed.')
    if xmax < 0:
        raise ValueError('xmax must be non-negative, got {}.'.format(xmax))
    if samples == 1:
        return [Fraction(0)]
    return [xmax * i / (samples - 1) for i in range(samples)]


def sample(candidate, xmax, samples):
    """Yields ``(x, h0(x), h1(x))`` at :func:`sample_points`."""
    h1 = h1_of(candidate)
    for x in sample_points(xmax, samples):
        yield x, candidate.h0(x), h1(x)
