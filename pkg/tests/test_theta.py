import functools
import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pellwalls import exceptions, theta
from pellwalls.arith import is_perfect_square, pell_minimal, PellSolution


def _small_d():
    for d in range(2, 31):
        if is_perfect_square(d):
            continue
        solution = pell_minimal(d)
        if solution.x ** 4 <= 10 ** 5:
            yield d


SMALL_D = list(_small_d())
GENERATORS = theta.generators(3, PellSolution(7, 2, 3))
CONTEXT = GENERATORS.a1.context
words = st.lists(st.sampled_from(GENERATORS._fields), min_size=1,
                 max_size=8)


def test_context():
    context = theta.context_for(2, PellSolution(3, 1, 2))
    assert (context.n1, context.n2) == (6, 12)
    assert context.size == 72

    with pytest.raises(ValueError):
        theta.context_for(2, PellSolution.identity(2))
    with pytest.raises(ValueError):
        theta.context_for(3, PellSolution(3, 1, 2))


def test_operator_reduces_its_data():
    context = theta.context_for(2, PellSolution(3, 1, 2))
    a = theta.MonomialOperator(context, shift=(7, -1), phase=(4, 5, 6))
    assert a.shift == (1, 11)
    assert a.phase == (1, 2, 0)


def test_compose_matches_apply():
    g = theta.generators(3, PellSolution(7, 2, 3))
    composed = g.a1.compose(g.a3).compose(g.inv)
    for index in [(0, 0), (3, 5), (27, 83)]:
        exponent, image = g.inv.apply(index)
        e3, image = g.a3.apply(image)
        e1, image = g.a1.apply(image)
        assert composed.apply(index) == ((exponent + e3 + e1) % 7, image)


def _operator(word):
    return functools.reduce(
        lambda result, name: result.compose(getattr(GENERATORS, name)),
        word,
        theta.identity(CONTEXT),
    )


@given(words, words, words)
def test_composition_is_associative(first, second, third):
    a, b, c = _operator(first), _operator(second), _operator(third)
    composed = a.compose(b)
    assert isinstance(composed, theta.MonomialOperator)
    assert composed.context == CONTEXT
    assert composed.compose(c) == a.compose(b.compose(c))


@given(words, st.integers(min_value=0), st.integers(min_value=0))
def test_composition_matches_applying_each_letter(word, j, k):
    index = (j % CONTEXT.n1, k % CONTEXT.n2)
    exponent, image = 0, index
    for name in reversed(word):
        step, image = getattr(GENERATORS, name).apply(image)
        exponent += step
    assert _operator(word).apply(index) == (exponent % CONTEXT.x0, image)


def test_power():
    g = theta.generators(2, PellSolution(3, 1, 2))
    one = theta.identity(g.a1.context)
    assert theta.power(g.a3, 3) == one
    assert theta.power(g.a3, 2) != one
    assert theta.power(g.inv, 0) == one
    with pytest.raises(ValueError):
        theta.power(g.a1, -1)


def test_commutator_phases():
    g = theta.generators(2, PellSolution(3, 1, 2))
    assert theta.commutator_phase(g.a1, g.a3) == 2
    assert theta.commutator_phase(g.a2, g.a4) == 4 % 3
    assert theta.commutator_phase(g.a1, g.a2) == 0
    assert theta.commutator_phase(g.a1, g.inv) == theta.NON_SCALAR


@pytest.mark.parametrize('d', SMALL_D)
def test_heisenberg_relations(d):
    relations = theta.heisenberg_relations(d, pell_minimal(d))
    assert all(relations.values()), relations


@pytest.mark.parametrize('d', SMALL_D)
def test_eigenspace_partition(d):
    solution = pell_minimal(d)
    x0 = solution.x
    partition = theta.eigenspace_partition(d, solution)
    assert len(partition) == x0 * x0
    assert set(partition.values()) == {4 * d * solution.y ** 2}
    assert 4 * d * solution.y ** 2 == x0 * x0 - 1


def test_eigenspace_partition_over_cap():
    assert theta.eigenspace_partition(2, PellSolution(3, 1, 2), cap=10) \
        is None


def test_eigenspace_dimension_strategies(caplog):
    caplog.set_level(logging.INFO)
    solution = PellSolution(7, 2, 3)
    full = theta.eigenspace_dimension(3, solution, (1, 2))
    marginal = theta.eigenspace_dimension(3, solution, (1, 2), cap=200)
    closed = theta.eigenspace_dimension(3, solution, (1, 2), cap=10)
    assert full == marginal == closed == 48
    assert 'using the closed form only' in caplog.text

    with pytest.raises(ValueError):
        theta.eigenspace_dimension(3, solution, (7, 0))


@pytest.mark.parametrize('d,split', [
    (2, (6, 2)),
    (3, (26, 22)),
    (5, (42, 38)),
])
def test_involution_split(d, split):
    result = theta.involution_split(d, pell_minimal(d))
    assert (result.dim_plus, result.dim_minus) == split
    assert len(result.fixed) == 4
    assert result.enumerated


def test_involution_split_fixed_indices():
    result = theta.involution_split(2, PellSolution(3, 1, 2))
    assert result.fixed == [(0, 0), (0, 6), (3, 0), (3, 6)]

    closed = theta.involution_split(2, PellSolution(3, 1, 2), cap=1)
    assert closed[:3] == result[:3]
    assert not closed.enumerated


def test_involution_eigenbasis():
    basis = theta.involution_eigenbasis(2, PellSolution(3, 1, 2))
    assert len(basis.plus) == 6
    assert len(basis.minus) == 2
    assert ((1, (0, 6)),) in basis.plus
    for vector in basis.minus:
        assert [c for c, _ in vector] == [1, -1]

    with pytest.raises(ValueError):
        theta.involution_eigenbasis(2, PellSolution(3, 1, 2), cap=1)


@pytest.mark.parametrize('d', SMALL_D)
def test_label_action_is_transitive(d):
    solution = pell_minimal(d)
    enumerated = theta.label_action_orbits(d, solution)
    closed = theta.label_action_orbits(d, solution, cap=1)
    assert enumerated.count == closed.count == 1
    assert enumerated.size == solution.x ** 2
    assert enumerated.enumerated and not closed.enumerated


def test_inversion_conditions():
    assert theta.inversion_conditions(3) == 5
    assert theta.inversion_conditions(9) == 41
    assert theta.inversion_conditions(9, cap=1) == 41
    with pytest.raises(ValueError):
        theta.inversion_conditions(4)


@pytest.mark.parametrize('d,dimension,conditions', [
    (2, 6, 5),
    (5, 42, 41),
])
def test_certificate(d, dimension, conditions):
    certificate = theta.invariant_curve_certificate(d)
    assert certificate.invariant_dimension == dimension
    assert certificate.conditions == conditions
    assert certificate.has_invariant_curve
    assert certificate.h0_lower_bound == certificate.x0 ** 2
    assert certificate.phases_are_units
    assert not certificate.strengthening_proved


def test_certificate_for_large_index_set():
    certificate = theta.invariant_curve_certificate(7, cap=1000)
    assert certificate.x0 == 127
    assert certificate.eigenspace_dimension == 127 ** 2 - 1
    assert not certificate.enumerated


def test_certificate_for_square():
    with pytest.raises(exceptions.NoPellSolution):
        theta.invariant_curve_certificate(9)
