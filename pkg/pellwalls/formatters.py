import csv
import io
import json
import math
import os
from fractions import Fraction
from functools import lru_cache

import humanize
import jsonschema
from tabulate import tabulate

from pellwalls import exceptions
from pellwalls.arith import PellSolution, QuadraticNumber
from pellwalls.crf import (
    CrfCandidate,
    PiecewisePolynomial,
    QuadraticPolynomial,
    Shape,
)
from pellwalls.report import Report
from pellwalls.syzygy import SyzygyVerdict, Verdict
from pellwalls.theta import ThetaCertificate
from pellwalls.walls import accumulation_point, Wall

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), 'report.schema.json')


def decimal_string(value, digits=12):
    """
    Rounds an exact value to ``digits`` decimals.

    The rounding itself is exact: halves go up, and irrational values are
    never halves.
    """
    value = QuadraticNumber.coerce(value)
    scale = 10 ** digits
    rounded = math.floor(value * scale + Fraction(1, 2))
    sign = '-' if rounded < 0 else ''
    whole, fraction = divmod(abs(rounded), scale)
    return '{}{}.{}'.format(sign, whole, str(fraction).zfill(digits))


def exact_string(value):
    return str(value)


def rational_to_json(value):
    value = Fraction(value)
    return {'num': str(value.numerator), 'den': str(value.denominator)}


def rational_from_json(data):
    return Fraction(int(data['num']), int(data['den']))


def quadratic_to_json(value):
    value = QuadraticNumber.coerce(value)
    return {
        'a': rational_to_json(value.a),
        'b': rational_to_json(value.b),
        'rad': value.d,
    }


def quadratic_from_json(data):
    return QuadraticNumber(
        rational_from_json(data['a']),
        rational_from_json(data['b']),
        data['rad'],
    )


def _solution_as_dict(solution):
    if solution is None:
        return None
    return {'x': str(solution.x), 'y': str(solution.y)}


def _wall_as_dict(solution, wall):
    return {
        'solution': _solution_as_dict(solution),
        'center_beta': rational_to_json(wall.center_beta),
        'radius_sq': rational_to_json(wall.radius_sq),
        'p_quot': rational_to_json(wall.p_quot.as_rational()),
        'p_sub': rational_to_json(wall.p_sub.as_rational()),
    }


def _candidate_as_dict(candidate, survives):
    return {
        'shape': candidate.shape.kind,
        'solution': _solution_as_dict(candidate.shape.solution),
        'breakpoints': [
            quadratic_to_json(point) for point in candidate.h0.breakpoints
        ],
        'pieces': [
            {
                'a2': rational_to_json(piece.a2),
                'a1': rational_to_json(piece.a1),
                'a0': rational_to_json(piece.a0),
            }
            for piece in candidate.h0.pieces
        ],
        'epsilon1': quadratic_to_json(candidate.h0.breakpoints[-1]),
        'survives_narrowing': survives,
    }


def _verdict_as_dict(verdict):
    return {
        'basepoint_free': str(verdict.basepoint_free),
        'projectively_normal': str(verdict.projectively_normal),
        'np_guaranteed': verdict.np_guaranteed,
        'epsilon1_candidates': [
            quadratic_to_json(value) for value in verdict.epsilon1_candidates
        ],
        'caveats': list(verdict.caveats),
    }


def _certificate_as_dict(certificate):
    if certificate is None:
        return None
    return {
        'x0': str(certificate.x0),
        'y0': str(certificate.y0),
        'eigenspace_dimension': str(certificate.eigenspace_dimension),
        'invariant_dimension': str(certificate.invariant_dimension),
        'anti_invariant_dimension': str(
            certificate.anti_invariant_dimension
        ),
        'conditions': str(certificate.conditions),
        'has_invariant_curve': certificate.has_invariant_curve,
        'label_orbits': certificate.label_orbits,
        'commutator_phases': [
            str(phase) for phase in certificate.commutator_phases
        ],
        'phases_are_units': certificate.phases_are_units,
        'h0_lower_bound': str(certificate.h0_lower_bound),
        'strengthening_proved': certificate.strengthening_proved,
        'enumerated': certificate.enumerated,
    }


def report_as_dict(report):
    return {
        'd': report.d,
        'pell': [_solution_as_dict(solution) for solution in report.pell],
        'walls': [
            _wall_as_dict(solution, wall) for solution, wall in report.walls
        ],
        'candidates': [
            _candidate_as_dict(candidate, candidate.shape in report.narrowed)
            for candidate in report.candidates
        ],
        'verdict': _verdict_as_dict(report.verdict),
        'theta': _certificate_as_dict(report.theta),
        'excluded_characteristics': sorted(report.excluded_characteristics),
    }


def _solution_from_dict(data, d):
    if data is None:
        return None
    return PellSolution(int(data['x']), int(data['y']), d)


def _wall_from_dict(data, d):
    wall = Wall(
        rational_from_json(data['center_beta']),
        rational_from_json(data['radius_sq']),
    )
    endpoints = (
        rational_from_json(data['p_quot']), rational_from_json(data['p_sub'])
    )
    if wall.endpoints != endpoints:
        raise exceptions.InvariantViolation(
            'wall endpoints {} do not match {}'.format(
                endpoints, wall.endpoints
            )
        )
    return _solution_from_dict(data['solution'], d), wall


def _candidate_from_dict(data, d):
    h0 = PiecewisePolynomial(
        [quadratic_from_json(point) for point in data['breakpoints']],
        [
            QuadraticPolynomial(
                rational_from_json(piece['a2']),
                rational_from_json(piece['a1']),
                rational_from_json(piece['a0']),
            )
            for piece in data['pieces']
        ],
    )
    shape = Shape(data['shape'], _solution_from_dict(data['solution'], d))
    return CrfCandidate(d, shape, h0)


def _verdict_from_dict(data, d):
    return SyzygyVerdict(
        d=d,
        basepoint_free=Verdict(data['basepoint_free']),
        projectively_normal=Verdict(data['projectively_normal']),
        np_guaranteed=data['np_guaranteed'],
        epsilon1_candidates=tuple(
            quadratic_from_json(value)
            for value in data['epsilon1_candidates']
        ),
        caveats=tuple(data['caveats']),
    )


def _certificate_from_dict(data, d):
    if data is None:
        return None
    return ThetaCertificate(
        d=d,
        x0=int(data['x0']),
        y0=int(data['y0']),
        eigenspace_dimension=int(data['eigenspace_dimension']),
        invariant_dimension=int(data['invariant_dimension']),
        anti_invariant_dimension=int(data['anti_invariant_dimension']),
        conditions=int(data['conditions']),
        has_invariant_curve=data['has_invariant_curve'],
        label_orbits=data['label_orbits'],
        commutator_phases=tuple(
            int(phase) for phase in data['commutator_phases']
        ),
        phases_are_units=data['phases_are_units'],
        h0_lower_bound=int(data['h0_lower_bound']),
        strengthening_proved=data['strengthening_proved'],
        enumerated=data['enumerated'],
    )


def report_from_dict(data):
    """
    Rebuilds a :class:`~pellwalls.report.Report` from its JSON form.

    ``data`` is validated first. Walls and candidates go through their usual
    constructors, so their invariants are checked again.
    """
    validate_report(data)
    d = data['d']
    candidates = [_candidate_from_dict(item, d) for item in data['candidates']]
    return Report(
        d=d,
        pell=tuple(_solution_from_dict(item, d) for item in data['pell']),
        walls=[_wall_from_dict(item, d) for item in data['walls']],
        candidates=candidates,
        narrowed=[
            candidate.shape
            for candidate, item in zip(candidates, data['candidates'])
            if item['survives_narrowing']
        ],
        verdict=_verdict_from_dict(data['verdict'], d),
        theta=_certificate_from_dict(data['theta'], d),
        excluded_characteristics=frozenset(data['excluded_characteristics']),
    )


@lru_cache(maxsize=1)
def load_schema():
    with open(SCHEMA_PATH) as f:
        return json.load(f)


def validate_report(data):
    """Raises :class:`jsonschema.ValidationError` if ``data`` is invalid."""
    jsonschema.validate(data, load_schema())
    return data


def _csv(header, rows):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return output.getvalue()


class DefaultFormatter:
    def __init__(self, decimal_digits=12):
        self.decimal_digits = decimal_digits

    def decimal(self, value):
        return decimal_string(value, self.decimal_digits)

    def _integer(self, value):
        return humanize.intcomma(value)

    def _solution(self, solution):
        if solution is None:
            return ''
        return '({}, {})'.format(
            self._integer(solution.x), self._integer(solution.y)
        )

    def report(self, report):
        sections = ['d = {}'.format(report.d)]

        if report.pell:
            sections.append(tabulate(
                [
                    (label, self._integer(s.x), self._integer(s.y))
                    for label, s in zip(('minimal', 'next'), report.pell)
                ],
                headers=('Pell solution', 'x', 'y'),
            ))
        else:
            sections.append(
                'Pell equation has only trivial solutions: no walls.'
            )

        if report.walls:
            sections.append(tabulate(
                [
                    (
                        self._solution(solution),
                        wall.center_beta,
                        wall.radius_sq,
                        wall.p_quot,
                        wall.p_sub,
                    )
                    for solution, wall in report.walls
                ],
                headers=('wall', 'center', 'radius^2', 'p_quot', 'p_sub'),
                disable_numparse=True,
            ))

        sections.append(tabulate(
            [
                (
                    index,
                    candidate.shape,
                    ', '.join(str(p) for p in candidate.h0.breakpoints),
                    candidate.h0.breakpoints[-1],
                    self.decimal(candidate.h0.breakpoints[-1]),
                    'yes' if candidate.shape in report.narrowed else 'no',
                )
                for index, candidate in enumerate(report.candidates)
            ],
            headers=('#', 'candidate', 'breakpoints', 'epsilon1',
                     'decimal', 'narrowed'),
            disable_numparse=True,
        ))

        verdict = report.verdict
        sections.append(tabulate(
            [
                ('basepoint free', verdict.basepoint_free),
                ('projectively normal', verdict.projectively_normal),
                ('N_p up to p =', verdict.np_guaranteed or '-'),
                ('epsilon1 candidates', ', '.join(
                    str(value) for value in verdict.epsilon1_candidates
                )),
            ] + [('caveat', caveat) for caveat in verdict.caveats],
            disable_numparse=True,
        ))

        if report.theta is not None:
            certificate = report.theta
            sections.append(tabulate(
                [
                    ('eigenspace dimension',
                     self._integer(certificate.eigenspace_dimension)),
                    ('invariant part',
                     self._integer(certificate.invariant_dimension)),
                    ('conditions', self._integer(certificate.conditions)),
                    ('commutator phases', ', '.join(
                        str(phase) for phase in certificate.commutator_phases
                    )),
                    ('label orbits', certificate.label_orbits),
                    ('h0 lower bound',
                     self._integer(certificate.h0_lower_bound)),
                    ('stronger bound proved',
                     'yes' if certificate.strengthening_proved else 'no'),
                ],
                disable_numparse=True,
            ))

        if report.excluded_characteristics:
            sections.append('excluded characteristics: {}'.format(
                ', '.join(
                    str(p) for p in sorted(report.excluded_characteristics)
                )
            ))

        return '\n\n'.join(sections)

    def verification(self, results):
        return tabulate(
            [
                (result.name, result.cases, result.failure or 'ok')
                for result in results
            ],
            headers=('suite', 'cases', 'result'),
        )

    def walls_csv(self, d, walls):
        header = ('solution_x', 'solution_y', 'center_beta', 'radius',
                  'p_quot', 'p_sub', 'radius_sq', 'center_beta_exact',
                  'p_quot_exact', 'p_sub_exact')
        rows = [
            (
                solution.x,
                solution.y,
                self.decimal(wall.center_beta),
                self.decimal(wall.p_sub - wall.center_beta),
                self.decimal(wall.p_quot),
                self.decimal(wall.p_sub),
                exact_string(wall.radius_sq),
                exact_string(wall.center_beta),
                exact_string(wall.p_quot),
                exact_string(wall.p_sub),
            )
            for solution, wall in walls
        ]
        if rows:
            point = accumulation_point(d)
            rows.append((
                '', '',
                self.decimal(point), self.decimal(0),
                self.decimal(point), self.decimal(point),
                '0', exact_string(point), exact_string(point),
                exact_string(point),
            ))
        return _csv(header, rows)

    def plot_csv(self, samples):
        header = ('x', 'h0', 'h1', 'x_exact', 'h0_exact', 'h1_exact')
        rows = [
            (
                self.decimal(x), self.decimal(h0), self.decimal(h1),
                exact_string(x), exact_string(h0), exact_string(h1),
            )
            for x, h0, h1 in samples
        ]
        return _csv(header, rows)


class PorcelainFormatter(DefaultFormatter):
    def report(self, report):
        data = validate_report(report_as_dict(report))
        return json.dumps(data, indent=4, sort_keys=True)

    def verification(self, results):
        data = [
            {'name': r.name, 'cases': r.cases, 'failure': r.failure}
            for r in results
        ]
        return json.dumps(data, indent=4, sort_keys=True)
