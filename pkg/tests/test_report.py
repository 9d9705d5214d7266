from fractions import Fraction

import pytest

from pellwalls import crf
from pellwalls.arith import PellSolution
from pellwalls.report import build_report
from pellwalls.syzygy import Verdict


def test_report_for_d7():
    report = build_report(7)

    assert report.pell == (
        PellSolution(127, 24, 7), PellSolution(32257, 6096, 7),
    )
    assert [solution for solution, _ in report.walls] == list(report.pell)
    assert [str(c.shape) for c in report.candidates] == [
        'trivial', 'pell(127, 24)', 'pell(32257, 6096)',
    ]
    assert [str(shape) for shape in report.narrowed] == [
        'pell(127, 24)', 'pell(32257, 6096)',
    ]
    assert report.verdict.projectively_normal == Verdict.YES
    assert report.verdict.epsilon1_candidates == (
        Fraction(8, 21), Fraction(127, 336),
    )
    assert report.theta.h0_lower_bound == 127 ** 2
    assert report.excluded_characteristics == {2, 3, 7, 127}


def test_report_for_square():
    report = build_report(4)

    assert report.pell == ()
    assert report.walls == []
    assert report.theta is None
    assert len(report.candidates) == 1
    assert report.candidates[0].shape.kind == crf.PERFECT_SQUARE
    assert report.narrowed == [report.candidates[0].shape]
    assert report.verdict.epsilon1_candidates == (Fraction(1, 2),)
    assert not report.excluded_characteristics


def test_report_solutions():
    report = build_report(2, solutions=4)
    assert len(report.walls) == 4
    assert len(report.candidates) == 5
    assert len(report.narrowed) == 2
    assert len(report.pell) == 2


def test_report_rejects_nonpositive():
    with pytest.raises(ValueError):
        build_report(0)
