"""
Regularity of rational twists of the ideal sheaf of a point, and the
syzygy statements that follow from it.
"""
import enum
import logging
from collections import namedtuple
from fractions import Fraction

from pellwalls import crf
from pellwalls import exceptions
from pellwalls.arith import (
    DEFAULT_CERTIFY_BOUND,
    floor_sqrt,
    is_perfect_square,
    pell_minimal,
)

logger = logging.getLogger(name=__name__)

NS_HYPOTHESIS = 'D.l is a multiple of l^2 for every divisor class D'


class RegularityStatus(enum.IntEnum):
    """Ordered from weakest to strongest; exactly one holds at each twist."""

    NOT_GV = 0
    GV_NOT_M_REGULAR = 1
    M_REGULAR_NOT_IT0 = 2
    IT0 = 3

    def __str__(self):
        return self.name.lower().replace('_', '-')


class Verdict(enum.Enum):
    YES = 'yes'
    NO = 'no'
    NOT_GUARANTEED = 'not-guaranteed'
    CANDIDATE_DEPENDENT = 'candidate-dependent'

    def __str__(self):
        return self.value


SyzygyVerdict = namedtuple('SyzygyVerdict', [
    'd',
    'basepoint_free',
    'projectively_normal',
    'np_guaranteed',
    'epsilon1_candidates',
    'caveats',
])


def status_at(candidate, x):
    """
    Regularity of the twist by ``x*l`` if ``candidate`` is the true ``h0``.

    GV means ``h1(x) = 0``; M-regular additionally needs ``h1`` to be
    differentiable at ``x``; IT(0) needs ``h1`` to vanish on a left
    neighbourhood of ``x``, that is ``x`` strictly past the threshold.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError('Twists must be positive, got {}.'.format(x))

    h1 = crf.h1_of(candidate)
    if h1(x) > 0:
        return RegularityStatus.NOT_GV

    threshold = crf.epsilon1_of(candidate)
    if x > threshold:
        return RegularityStatus.IT0
    if x == threshold and crf.is_c1_at(h1, threshold):
        return RegularityStatus.M_REGULAR_NOT_IT0
    return RegularityStatus.GV_NOT_M_REGULAR


def mregular_fraction_test(d, m):
    """Whether the twist by ``l/m`` is M-regular, which happens iff m^2 < d."""
    if m < 1:
        raise ValueError('m must be positive, got {}.'.format(m))
    return m * m < d


def np_from_formula(d):
    """Largest ``p >= 1`` with ``(p + 2)^2 < d``, or None."""
    p = floor_sqrt(d) - 2
    while p >= 1 and (p + 2) ** 2 >= d:
        p -= 1
    return p if p >= 1 else None


def basepoint_free_from_threshold(thresholds):
    """
    The line bundle is base point free iff epsilon1 < 1, and every
    threshold is at most 1.
    """
    if any(threshold > 1 for threshold in thresholds):
        raise exceptions.InvariantViolation(
            'a threshold exceeds 1: {}'.format(
                ', '.join(str(t) for t in thresholds)
            )
        )
    if all(threshold < 1 for threshold in thresholds):
        return Verdict.YES
    if all(threshold == 1 for threshold in thresholds):
        return Verdict.NO
    return Verdict.CANDIDATE_DEPENDENT


def _projectively_normal(d, unconditional, narrowed):
    half = Fraction(1, 2)
    if all(status_at(c, half) == RegularityStatus.IT0 for c in unconditional):
        result = Verdict.YES
    elif any(status_at(c, half) == RegularityStatus.IT0 for c in narrowed):
        result = Verdict.CANDIDATE_DEPENDENT
    else:
        result = Verdict.NOT_GUARANTEED

    if (result == Verdict.YES) != (d >= 7):
        raise exceptions.InvariantViolation(
            'projective normality for d={} derived as {} from the '
            'candidates'.format(d, result)
        )
    return result


def _np_guaranteed(d, unconditional):
    found = None
    for p in range(1, floor_sqrt(d) + 1):
        x = Fraction(1, p + 2)
        if all(
            status_at(c, x) >= RegularityStatus.M_REGULAR_NOT_IT0
            for c in unconditional
        ):
            found = p

    expected = np_from_formula(d)
    if found != expected:
        raise exceptions.InvariantViolation(
            'property N_p for d={}: candidates give p={}, expected '
            'p={}'.format(d, found, expected)
        )
    return found


def verdict(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    What the candidate functions say about the linear system of ``l``.

    Projective normality and property (N_p) are derived from the candidate
    set without narrowing, so they hold in every characteristic; the
    basepoint-freeness verdict uses the narrowed candidates and lists the
    characteristics it excludes.
    """
    caveats = [NS_HYPOTHESIS]

    if is_perfect_square(d):
        unconditional = narrowed = crf.candidates(d, 1)
    else:
        unconditional = crf.candidates(d, 2, certify_bound=certify_bound)
        narrowed = crf.candidates(
            d, 2, apply_char_narrowing=True, certify_bound=certify_bound
        )
        excluded = crf.excluded_characteristics(d, certify_bound)
        caveats.append('candidates narrowed assuming char(K) is not in {{{}}}'
                       .format(', '.join(str(p) for p in sorted(excluded))))

    thresholds = [crf.epsilon1_of(c) for c in narrowed]
    basepoint_free = basepoint_free_from_threshold(thresholds)
    projectively_normal = _projectively_normal(d, unconditional, narrowed)
    np_guaranteed = _np_guaranteed(d, unconditional)

    if basepoint_free == Verdict.CANDIDATE_DEPENDENT:
        caveats.append(
            'basepoint-freeness depends on which candidate occurs'
        )
    if projectively_normal == Verdict.CANDIDATE_DEPENDENT:
        caveats.append(
            'projective normality depends on which candidate occurs'
        )

    logger.debug('Verdict for d=%d: basepoint free %s, projectively normal '
                 '%s, N_p up to %s', d, basepoint_free, projectively_normal,
                 np_guaranteed)

    return SyzygyVerdict(
        d=d,
        basepoint_free=basepoint_free,
        projectively_normal=projectively_normal,
        np_guaranteed=np_guaranteed,
        epsilon1_candidates=tuple(thresholds),
        caveats=tuple(caveats),
    )


def exclusion_steps(d):
    """
    Values of ``y0`` ruled out without solving the Pell equation.

    With ``m = floor(sqrt(d))`` and ``k = d - m^2``, every ``j >= 1`` with
    ``j*k < m`` satisfies ``(2jm)^2 < 4d*j^2 + 1 < (2jm + 1)^2``, so ``j`` is
    not the ``y`` of any solution.
    """
    if is_perfect_square(d):
        raise exceptions.NoPellSolution(d)
    m = floor_sqrt(d)
    k = d - m * m
    steps = []
    j = 1
    while j * k < m:
        value = 4 * d * j * j + 1
        if not (2 * j * m) ** 2 < value < (2 * j * m + 1) ** 2:
            raise exceptions.InvariantViolation(
                '4*{}*{}^2 + 1 is not strictly between consecutive '
                'squares'.format(d, j)
            )
        steps.append(j)
        j += 1
    return steps


FloorSqrtRecord = namedtuple('FloorSqrtRecord', [
    'd', 'm', 'k', 'x0', 'y0', 'excluded', 'product_holds',
    'threshold_holds',
])


def verify_floor_sqrt_inequality(d, certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Checks ``k*y0 >= m`` and the equivalent ``2*y0/(x0 - 1) <= 1/m``.
    """
    if is_perfect_square(d):
        raise exceptions.NoPellSolution(d)
    m = floor_sqrt(d)
    k = d - m * m
    minimal = pell_minimal(d, certify_bound)
    excluded = exclusion_steps(d)

    if excluded and minimal.y <= excluded[-1]:
        raise exceptions.InvariantViolation(
            'y0={} for d={} was excluded'.format(minimal.y, d)
        )

    product_holds = k * minimal.y >= m
    threshold_holds = Fraction(2 * minimal.y, minimal.x - 1) <= Fraction(1, m)
    if product_holds != threshold_holds:
        raise exceptions.InvariantViolation(
            'k*y0 >= m and 2*y0/(x0 - 1) <= 1/m disagree for d={}'.format(d)
        )

    return FloorSqrtRecord(
        d=d,
        m=m,
        k=k,
        x0=minimal.x,
        y0=minimal.y,
        excluded=tuple(excluded),
        product_holds=product_holds,
        threshold_holds=threshold_holds,
    )
