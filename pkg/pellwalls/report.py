"""
Everything known about a single polarization type, gathered for output.
"""
import logging
from collections import namedtuple
from itertools import islice

from pellwalls import crf, syzygy, theta, walls
from pellwalls.arith import (
    DEFAULT_CERTIFY_BOUND,
    is_perfect_square,
    pell_solutions,
)

logger = logging.getLogger(name=__name__)

Report = namedtuple('Report', [
    'd',
    'pell',
    'walls',
    'candidates',
    'narrowed',
    'verdict',
    'theta',
    'excluded_characteristics',
])


def build_report(d, solutions=2, cap=theta.DEFAULT_ENUMERATION_CAP,
                 certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Builds the :class:`Report` for ``d``.

    ``pell`` holds the minimal and the next solution. ``candidates`` is the
    list without narrowing (``solutions`` Pell shapes) and ``narrowed`` the
    shapes that survive narrowing.
    """
    if d < 1:
        raise ValueError('d must be positive, got {}.'.format(d))
    logger.debug('Building report for d=%d with %d solutions.', d, solutions)

    if is_perfect_square(d):
        candidates = crf.candidates(d, solutions)
        return Report(
            d=d,
            pell=(),
            walls=[],
            candidates=candidates,
            narrowed=[candidate.shape for candidate in candidates],
            verdict=syzygy.verdict(d, certify_bound),
            theta=None,
            excluded_characteristics=frozenset(),
        )

    narrowed = crf.candidates(
        d, solutions, apply_char_narrowing=True, certify_bound=certify_bound
    )
    return Report(
        d=d,
        pell=tuple(islice(pell_solutions(d, certify_bound), 2)),
        walls=walls.enumerate_walls(d, solutions, certify_bound),
        candidates=crf.candidates(d, solutions, certify_bound=certify_bound),
        narrowed=[candidate.shape for candidate in narrowed],
        verdict=syzygy.verdict(d, certify_bound),
        theta=theta.invariant_curve_certificate(d, cap, certify_bound),
        excluded_characteristics=crf.excluded_characteristics(
            d, certify_bound
        ),
    )
