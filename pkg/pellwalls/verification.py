"""
Batch checks behind the ``verify`` command.

Each suite walks a range of ``d`` and runs one check per value. A check
fails by raising :class:`AssertionError` or any
:class:`~pellwalls.exceptions.PellwallsException`; the first failure stops
the suite.
"""
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from itertools import count, islice, takewhile
from math import gcd

from pellwalls import crf, syzygy, theta, walls
from pellwalls import exceptions
from pellwalls.arith import (
    is_perfect_square,
    pell_bruteforce_oracle,
    pell_minimal,
    pell_next,
    pell_solutions,
    PellSolution,
    QuadraticNumber,
)

logger = logging.getLogger(name=__name__)

DEEP_FLOOR_SQRT_COUNT = 10 ** 4

#: Largest d walked by the suites that are expensive per case.
PELL_LIMIT = 50
WALL_SCAN_LIMIT = 10
WALL_SCAN_C_BOUND = 50
IDENTITIES_LIMIT = 200
THETA_LIMIT = 30
SOLUTIONS_PER_D = 5

KNOWN_MINIMAL = {
    2: (3, 1),
    3: (7, 2),
    5: (9, 2),
    6: (5, 1),
    7: (127, 24),
}
KNOWN_NP = {10: 1, 17: 2, 26: 3}

SuiteResult = namedtuple('SuiteResult', ['name', 'cases', 'failure'])
Options = namedtuple('Options', ['certify_bound', 'cap'])


def non_squares(n, limit=None):
    """The first ``n`` non-square ``d >= 2``, stopping past ``limit``."""
    values = (d for d in count(2) if not is_perfect_square(d))
    if limit is not None:
        values = takewhile(lambda d: d <= limit, values)
    return list(islice(values, n))


def squares(limit):
    """Perfect squares ``4 <= d <= limit``."""
    return [k * k for k in range(2, limit + 1) if k * k <= limit]


def check_pell_oracle(options, d):
    solution = pell_minimal(d, options.certify_bound)
    assert solution.x ** 2 - 4 * d * solution.y ** 2 == 1
    if d in KNOWN_MINIMAL:
        assert (solution.x, solution.y) == KNOWN_MINIMAL[d], solution
    if solution.y <= options.certify_bound:
        found = pell_bruteforce_oracle(d, solution.y)
        assert found and found[0] == solution, found[:1]


def check_pell_iterates(options, d):
    previous = PellSolution.identity(d)
    minimal = pell_minimal(d, options.certify_bound)
    iterates = islice(pell_solutions(d, options.certify_bound),
                      SOLUTIONS_PER_D)
    for solution in iterates:
        assert solution == pell_next(previous, options.certify_bound)
        assert solution.x > previous.x and solution.y > previous.y
        previous = solution
    second = pell_next(minimal, options.certify_bound)
    assert second.x == minimal.x ** 2 + 4 * d * minimal.y ** 2
    assert second.y == 2 * minimal.x * minimal.y


def check_wall_geometry(options, d):
    found = walls.enumerate_walls(d, SOLUTIONS_PER_D, options.certify_bound)
    assert len(found) == SOLUTIONS_PER_D
    for solution, wall in found:
        x, y = solution.x, solution.y
        assert wall.p_quot == Fraction(-2 * y, x - 1), wall
        assert wall.p_sub == Fraction(-2 * y, x + 1), wall
    if d == 2:
        first = found[0][1]
        assert first.center_beta == Fraction(-3, 4), first
        assert first.radius_sq == Fraction(1, 16), first


def check_wall_scan(options, d):
    found = walls.bruteforce_wall_scan(d, WALL_SCAN_C_BOUND)
    if is_perfect_square(d):
        assert not found, found


def check_square_shape(options, d):
    candidates = crf.candidates(d, SOLUTIONS_PER_D)
    assert len(candidates) == 1
    candidate, = candidates
    threshold = crf.epsilon1_of(candidate)
    assert threshold == 1 / QuadraticNumber.sqrt(d), threshold
    assert candidate.h0.pieces[-1] == crf.ideal_chi(d)
    assert not crf.is_c1_at(crf.h1_of(candidate), threshold)
    if d == 9:
        status = syzygy.status_at(candidate, Fraction(1, 3))
        assert status == syzygy.RegularityStatus.GV_NOT_M_REGULAR, status


def check_pell_shapes(options, d):
    solutions = islice(pell_solutions(d, options.certify_bound),
                       SOLUTIONS_PER_D)
    for solution in solutions:
        candidate = crf.h0_pell_shape(d, solution)
        h0, h1 = candidate.h0, crf.h1_of(candidate)
        first, threshold = h0.breakpoints
        for point in h0.breakpoints:
            assert crf.is_c1_at(h0, point), (solution, point)
            assert crf.is_c1_at(h1, point), (solution, point)
        for start, piece in zip(h0.breakpoints, h0.pieces[1:]):
            assert piece.derivative()(start) >= 0, piece
        assert h1(0) > 0 and h1(first) > 0
        assert h1((first + threshold) / 2) > 0
        assert h1(threshold) == 0 and h1.pieces[-1].is_zero
        rebuilt = crf.h0_from_pair(d, walls.pell_to_pair(d, solution))
        assert rebuilt.h0 == h0, solution


def check_narrowing(options, d):
    narrowed = crf.candidates(
        d, 2, apply_char_narrowing=True, certify_bound=options.certify_bound
    )
    first_two = list(islice(pell_solutions(d, options.certify_bound), 2))
    assert [c.shape.solution for c in narrowed] == first_two
    bound = crf.positivity_lower_bound(d, options.certify_bound)
    for candidate in narrowed:
        assert candidate.h0.breakpoints[0] <= bound
    x0 = first_two[0].x
    for p in crf.excluded_characteristics(d, options.certify_bound):
        assert x0 * (x0 * x0 - 1) % p == 0, p


def check_second_solution_identities(options, d):
    identities = crf.second_solution_identities(d, options.certify_bound)
    assert all(identities), identities


def check_floor_sqrt(options, d):
    record = syzygy.verify_floor_sqrt_inequality(d, options.certify_bound)
    assert record.product_holds and record.threshold_holds, record


def check_verdict(options, d):
    verdict = syzygy.verdict(d, options.certify_bound)
    if d >= 7:
        assert verdict.projectively_normal == syzygy.Verdict.YES, verdict
    if d in KNOWN_NP:
        assert verdict.np_guaranteed == KNOWN_NP[d], verdict
    assert verdict.np_guaranteed == syzygy.np_from_formula(d)


def check_theta(options, d):
    solution = pell_minimal(d, options.certify_bound)
    x0, y0 = solution.x, solution.y
    certificate = theta.invariant_curve_certificate(
        d, options.cap, options.certify_bound
    )
    assert certificate.eigenspace_dimension == 4 * d * y0 * y0
    assert certificate.invariant_dimension == 2 * d * y0 * y0 + 2
    assert certificate.anti_invariant_dimension == 2 * d * y0 * y0 - 2
    assert certificate.commutator_phases == (
        (2 * y0) % x0, (2 * d * y0) % x0
    )
    for phase in certificate.commutator_phases:
        assert gcd(phase, x0) == 1, phase
    assert certificate.label_orbits == 1
    assert certificate.invariant_dimension > certificate.conditions
    assert certificate.h0_lower_bound == x0 * x0

    partition = theta.eigenspace_partition(d, solution, options.cap)
    if partition is not None:
        assert len(partition) == x0 * x0
        assert set(partition.values()) == {x0 * x0 - 1}


def _theta_fits(options, d):
    solution = pell_minimal(d, options.certify_bound)
    return 4 * d * solution.y ** 2 <= options.cap


def _run_case(check, options, d):
    try:
        check(options, d)
    except (exceptions.PellwallsException, AssertionError) as e:
        return 'd={}: {}'.format(d, str(e) or type(e).__name__)
    return None


def run_suite(name, check, values, options, jobs=1):
    """
    Runs ``check`` on every value, fanning out to ``jobs`` processes.

    Results come back in the order of ``values`` whatever order they finish
    in, so the first failure reported is always the one with smallest d.
    """
    logger.info('Running %s on %d cases.', name, len(values))
    case = partial(_run_case, check, options)
    if jobs > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(case, values))
    else:
        outcomes = []
        for d in values:
            outcomes.append(case(d))
            if outcomes[-1] is not None:
                break

    for d, failure in zip(values, outcomes):
        if failure is not None:
            logger.debug('%s failed at d=%d.', name, d)
            return SuiteResult(name, values.index(d) + 1, failure)
    return SuiteResult(name, len(values), None)


def suites(dmax, options, deep=False):
    """``(name, check, values)`` for every suite, in running order."""
    covered = non_squares(dmax)
    largest = covered[-1] if covered else 0
    floor_sqrt_count = max(dmax, DEEP_FLOOR_SQRT_COUNT) if deep else dmax

    return [
        ('pell-oracle', check_pell_oracle,
         non_squares(dmax, PELL_LIMIT)),
        ('pell-iterates', check_pell_iterates,
         non_squares(dmax, PELL_LIMIT)),
        ('wall-geometry', check_wall_geometry,
         non_squares(dmax, PELL_LIMIT)),
        ('wall-scan', check_wall_scan,
         list(range(1, min(largest, WALL_SCAN_LIMIT) + 1))),
        ('square-shapes', check_square_shape, squares(largest)),
        ('pell-shapes', check_pell_shapes,
         non_squares(dmax, PELL_LIMIT)),
        ('narrowing', check_narrowing, non_squares(dmax, PELL_LIMIT)),
        ('second-solution-identities', check_second_solution_identities,
         non_squares(dmax, IDENTITIES_LIMIT)),
        ('floor-sqrt', check_floor_sqrt, non_squares(floor_sqrt_count)),
        ('syzygy-verdicts', check_verdict,
         non_squares(dmax, PELL_LIMIT)),
        ('theta-bookkeeping', check_theta, [
            d for d in non_squares(dmax, THETA_LIMIT)
            if _theta_fits(options, d)
        ]),
    ]


def verify(dmax, certify_bound, cap=theta.DEFAULT_ENUMERATION_CAP,
           deep=False, jobs=1):
    """
    Runs every suite and returns the list of :class:`SuiteResult`.

    Suites keep running after a failure so the summary is complete.
    """
    if dmax < 1:
        raise ValueError('dmax must be positive, got {}.'.format(dmax))
    options = Options(certify_bound=certify_bound, cap=cap)
    return [
        run_suite(name, check, values, options, jobs)
        for name, check, values in suites(dmax, options, deep)
    ]


def first_failure(results):
    for result in results:
        if result.failure is not None:
            return result
    return None
