"""
The theta group representation on functions over ``Z/n1 x Z/n2`` with
``n1 = 2*x0*y0`` and ``n2 = 2d*x0*y0``.

Operators are monomial: each basis function ``delta(j, k)`` is sent to a
root of unity times another basis function. Roots of unity are tracked by
their exponent modulo ``x0``, so everything here is integer arithmetic.
"""
import logging
from collections import Counter, deque, namedtuple
from math import gcd

from pellwalls import exceptions
from pellwalls.arith import DEFAULT_CERTIFY_BOUND, pell_minimal

logger = logging.getLogger(name=__name__)

DEFAULT_ENUMERATION_CAP = 10 ** 6

#: Returned by :func:`commutator_phase` when two operators do not commute
#: up to a scalar.
NON_SCALAR = 'non-scalar'


class ThetaContext(namedtuple('ThetaContext', ['d', 'x0', 'y0', 'n1', 'n2'])):
    """Moduli of the index set and the order of the phases."""

    __slots__ = ()

    @property
    def size(self):
        return self.n1 * self.n2


def context_for(d, solution):
    if solution.d != d:
        raise ValueError('{} is not a solution for d={}.'.format(solution, d))
    x0, y0 = solution.x, solution.y
    if x0 < 3:
        raise ValueError(
            'x0 must be at least 3, got {}: phases would be taken mod '
            '{}.'.format(x0, x0)
        )
    return ThetaContext(d, x0, y0, 2 * x0 * y0, 2 * d * x0 * y0)


class MonomialOperator(namedtuple('MonomialOperator', ['context', 'negate',
                                                       'shift', 'phase'])):
    """
    ``delta(j, k) -> xi^(p*j + q*k + c) * delta(e*j + s, e*k + u)``

    where ``e`` is -1 if ``negate`` is set and 1 otherwise, ``shift`` is
    ``(s, u)`` and ``phase`` is ``(p, q, c)``.
    """

    __slots__ = ()

    def __new__(cls, context, negate=False, shift=(0, 0), phase=(0, 0, 0)):
        s, u = shift
        p, q, c = phase
        return super().__new__(
            cls,
            context,
            bool(negate),
            (s % context.n1, u % context.n2),
            (p % context.x0, q % context.x0, c % context.x0),
        )

    @property
    def sign(self):
        return -1 if self.negate else 1

    def apply(self, index):
        """Returns ``(exponent, image)`` for the basis index ``(j, k)``."""
        j, k = index
        p, q, c = self.phase
        s, u = self.shift
        exponent = (p * j + q * k + c) % self.context.x0
        image = (
            (self.sign * j + s) % self.context.n1,
            (self.sign * k + u) % self.context.n2,
        )
        return exponent, image

    def compose(self, other):
        """``self`` after ``other``."""
        if other.context != self.context:
            raise ValueError('Operators act on different index sets.')
        p_a, q_a, c_a = self.phase
        p_b, q_b, c_b = other.phase
        s_b, u_b = other.shift
        return MonomialOperator(
            self.context,
            negate=self.negate != other.negate,
            shift=(
                self.sign * s_b + self.shift[0],
                self.sign * u_b + self.shift[1],
            ),
            phase=(
                p_b + p_a * other.sign,
                q_b + q_a * other.sign,
                c_b + c_a + p_a * s_b + q_a * u_b,
            ),
        )


def identity(context):
    return MonomialOperator(context)


def power(operator, n):
    if n < 0:
        raise ValueError('Only non-negative powers are supported.')
    result = identity(operator.context)
    base = operator
    while n:
        if n & 1:
            result = result.compose(base)
        base = base.compose(base)
        n >>= 1
    return result


Generators = namedtuple('Generators', ['a1', 'a2', 'a3', 'a4', 'inv'])


def generators(d, solution):
    """The shifts, the diagonal phases and the inversion."""
    context = context_for(d, solution)
    y0 = context.y0
    return Generators(
        a1=MonomialOperator(context, shift=(-2 * y0, 0)),
        a2=MonomialOperator(context, shift=(0, -2 * d * y0)),
        a3=MonomialOperator(context, phase=(1, 0, 0)),
        a4=MonomialOperator(context, phase=(0, 1, 0)),
        inv=MonomialOperator(context, negate=True),
    )


def commutator_phase(a, b):
    """
    The exponent ``e`` with ``a o b = xi^e * (b o a)``, or :data:`NON_SCALAR`.
    """
    ab = a.compose(b)
    ba = b.compose(a)
    if (
        ab.negate != ba.negate or
        ab.shift != ba.shift or
        ab.phase[:2] != ba.phase[:2]
    ):
        return NON_SCALAR
    return (ab.phase[2] - ba.phase[2]) % a.context.x0


def heisenberg_relations(d, solution):
    """Named relations between the generators, each True when it holds."""
    g = generators(d, solution)
    context = g.a1.context
    x0, y0 = context.x0, context.y0
    one = identity(context)
    commuting_pairs = [(g.a1, g.a2), (g.a1, g.a4), (g.a2, g.a3),
                       (g.a3, g.a4)]
    return {
        'a1_a3_phase': commutator_phase(g.a1, g.a3) == (2 * y0) % x0,
        'a2_a4_phase': commutator_phase(g.a2, g.a4) == (2 * d * y0) % x0,
        'other_pairs_commute': all(
            commutator_phase(a, b) == 0 for a, b in commuting_pairs
        ),
        'phases_are_units': (
            gcd(2 * y0, x0) == 1 and gcd(2 * d * y0, x0) == 1
        ),
        'generator_orders': (
            all(power(a, x0) == one for a in (g.a1, g.a2, g.a3, g.a4)) and
            power(g.inv, 2) == one
        ),
        'inversion_inverts_phases': (
            g.inv.compose(g.a3).compose(g.inv) == power(g.a3, x0 - 1) and
            g.inv.compose(g.a4).compose(g.inv) == power(g.a4, x0 - 1)
        ),
    }


def _label(g, index):
    """Eigenspace label of a basis index: the exponents of a3 and a4."""
    return g.a3.apply(index)[0], g.a4.apply(index)[0]


def eigenspace_dimension(d, solution, label,
                         cap=DEFAULT_ENUMERATION_CAP):
    """
    Dimension of the common eigenspace of a3 and a4 labelled ``label``.

    The closed form is ``(n1/x0)*(n2/x0) = 4d*y0^2``. It is cross-checked by
    counting the whole index set when it has at most ``cap`` elements, or by
    counting each coordinate separately when that fits.
    """
    g = generators(d, solution)
    context = g.a1.context
    x0 = context.x0
    row, col = label
    if not (0 <= row < x0 and 0 <= col < x0):
        raise ValueError('Label {} is not in (Z/{})^2.'.format(label, x0))

    closed = (context.n1 // x0) * (context.n2 // x0)

    if context.size <= cap:
        counted = sum(
            1
            for j in range(context.n1)
            for k in range(context.n2)
            if _label(g, (j, k)) == (row, col)
        )
    elif context.n1 + context.n2 <= cap:
        rows = sum(
            1 for j in range(context.n1) if g.a3.apply((j, 0))[0] == row
        )
        cols = sum(
            1 for k in range(context.n2) if g.a4.apply((0, k))[0] == col
        )
        counted = rows * cols
    else:
        logger.info('Index set for d=%d has %d elements, above the cap: '
                    'using the closed form only.', d, context.size)
        return closed

    if counted != closed:
        raise exceptions.InvariantViolation(
            'eigenspace {} for d={} has dimension {}, expected {}'.format(
                label, d, counted, closed
            )
        )
    return closed


def eigenspace_partition(d, solution, cap=DEFAULT_ENUMERATION_CAP):
    """
    Dimensions of all eigenspaces, by enumerating the index set once.

    Returns None when the index set has more than ``cap`` elements.
    """
    g = generators(d, solution)
    context = g.a1.context
    if context.size > cap:
        logger.info('Index set for d=%d has %d elements, above the cap.', d,
                    context.size)
        return None
    return Counter(
        _label(g, (j, k))
        for j in range(context.n1)
        for k in range(context.n2)
    )


InvolutionSplit = namedtuple('InvolutionSplit', [
    'dim_plus', 'dim_minus', 'fixed', 'enumerated',
])


def _base_eigenspace(context):
    """Indices ``(s*x0, t*x0)`` spanning the eigenspace labelled (0, 0)."""
    x0 = context.x0
    for s in range(context.n1 // x0):
        for t in range(context.n2 // x0):
            yield (s * x0, t * x0)


def involution_split(d, solution, cap=DEFAULT_ENUMERATION_CAP):
    """
    Dimensions of the +1 and -1 eigenspaces of the inversion on the
    eigenspace labelled (0, 0), and the indices it fixes.
    """
    g = generators(d, solution)
    context = g.a1.context
    x0, y0 = context.x0, context.y0
    dimension = (context.n1 // x0) * (context.n2 // x0)
    fixed = sorted(
        (s * x0, t * x0) for s in (0, y0) for t in (0, d * y0)
    )
    dim_plus = (dimension + len(fixed)) // 2
    dim_minus = (dimension - len(fixed)) // 2

    if dimension > cap:
        logger.info('Eigenspace for d=%d has dimension %d, above the cap: '
                    'using the closed form only.', d, dimension)
        return InvolutionSplit(dim_plus, dim_minus, fixed, False)

    counted_fixed = []
    pairs = 0
    for index in _base_eigenspace(context):
        exponent, image = g.inv.apply(index)
        if exponent != 0 or _label(g, image) != (0, 0):
            raise exceptions.InvariantViolation(
                'inversion does not preserve the eigenspace at {}'.format(
                    index
                )
            )
        if image == index:
            counted_fixed.append(index)
        elif index < image:
            pairs += 1

    if counted_fixed != fixed or pairs != dim_minus:
        raise exceptions.InvariantViolation(
            'inversion on d={} fixes {} and pairs {} indices, expected {} '
            'and {}'.format(d, counted_fixed, pairs, fixed, dim_minus)
        )
    return InvolutionSplit(dim_plus, dim_minus, fixed, True)


Eigenbasis = namedtuple('Eigenbasis', ['plus', 'minus'])


def involution_eigenbasis(d, solution, cap=DEFAULT_ENUMERATION_CAP):
    """
    Explicit eigenvectors of the inversion on the eigenspace labelled (0, 0).

    Each vector is a tuple of ``(coefficient, index)`` terms: the sum or
    difference of a basis function and its mirror image, or a single fixed
    basis function (which only appears in the +1 part).
    """
    g = generators(d, solution)
    context = g.a1.context
    dimension = (context.n1 // context.x0) * (context.n2 // context.x0)
    if dimension > cap:
        raise ValueError(
            'Eigenspace of dimension {} exceeds the enumeration cap '
            '{}.'.format(dimension, cap)
        )
    plus, minus = [], []
    for index in _base_eigenspace(context):
        _exponent, image = g.inv.apply(index)
        if image == index:
            plus.append(((1, index),))
        elif index < image:
            plus.append(((1, index), (1, image)))
            minus.append(((1, index), (-1, image)))
    return Eigenbasis(plus, minus)


LabelOrbits = namedtuple('LabelOrbits', ['count', 'size', 'enumerated'])


def label_action_orbits(d, solution, cap=DEFAULT_ENUMERATION_CAP):
    """
    Orbits of the shifts a1 and a2 acting on eigenspace labels.

    Breadth-first search over ``(Z/x0)^2`` when it has at most ``cap``
    elements, otherwise from the gcds of the label shifts.
    """
    g = generators(d, solution)
    x0 = g.a1.context.x0

    def move(label, operator):
        _exponent, image = operator.apply(label)
        return _label(g, image)

    if x0 * x0 > cap:
        step_l = g.a1.shift[0] % x0
        step_m = g.a2.shift[1] % x0
        count = gcd(step_l, x0) * gcd(step_m, x0)
        return LabelOrbits(count, x0 * x0 // count, False)

    seen = set()
    sizes = []
    for start in ((row, col) for row in range(x0) for col in range(x0)):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        size = 0
        while queue:
            label = queue.popleft()
            size += 1
            for operator in (g.a1, g.a2):
                image = move(label, operator)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        sizes.append(size)

    if len(set(sizes)) != 1:
        raise exceptions.InvariantViolation(
            'label orbits for d={} have sizes {}'.format(d, sorted(sizes))
        )
    return LabelOrbits(len(sizes), sizes[0], True)


def inversion_conditions(x0, cap=DEFAULT_ENUMERATION_CAP):
    """
    Number of pairs ``{P, -P}`` in ``(Z/x0)^2``.

    For odd ``x0`` only the origin is its own inverse, so this is
    ``(x0^2 - 1)/2 + 1``.
    """
    if x0 % 2 == 0:
        raise ValueError('x0 must be odd, got {}.'.format(x0))
    closed = (x0 * x0 - 1) // 2 + 1
    if x0 * x0 > cap:
        return closed
    counted = len({
        frozenset({(row, col), ((-row) % x0, (-col) % x0)})
        for row in range(x0)
        for col in range(x0)
    })
    if counted != closed:
        raise exceptions.InvariantViolation(
            '{} inversion orbits in (Z/{})^2, expected {}'.format(
                counted, x0, closed
            )
        )
    return closed


ThetaCertificate = namedtuple('ThetaCertificate', [
    'd',
    'x0',
    'y0',
    'eigenspace_dimension',
    'invariant_dimension',
    'anti_invariant_dimension',
    'conditions',
    'has_invariant_curve',
    'label_orbits',
    'commutator_phases',
    'phases_are_units',
    'h0_lower_bound',
    'strengthening_proved',
    'enumerated',
])


def invariant_curve_certificate(d, cap=DEFAULT_ENUMERATION_CAP,
                                certify_bound=DEFAULT_CERTIFY_BOUND):
    """
    Certifies that there are at least ``x0^2`` independent curves.

    The invariant part of the eigenspace labelled (0, 0) has more dimensions
    than the conditions imposed by the points of ``<a1, a2>`` paired by
    inversion, so it contains a curve through all of them; the shifts then
    carry it to one curve in each of the ``x0^2`` eigenspaces. Proving one
    more curve would settle which candidate occurs, so the certificate
    records that this stronger statement is not proved.
    """
    solution = pell_minimal(d, certify_bound)
    if solution is None:
        raise exceptions.NoPellSolution(d)
    x0, y0 = solution.x, solution.y

    relations = heisenberg_relations(d, solution)
    failed = sorted(name for name, holds in relations.items() if not holds)
    if failed:
        raise exceptions.InvariantViolation(
            'theta relations fail for d={}: {}'.format(d, ', '.join(failed))
        )

    dimension = eigenspace_dimension(d, solution, (0, 0), cap)
    if dimension != x0 * x0 - 1:
        raise exceptions.InvariantViolation(
            'eigenspace dimension {} for d={} is not x0^2 - 1'.format(
                dimension, d
            )
        )

    split = involution_split(d, solution, cap)
    if split.dim_plus != (x0 * x0 - 1) // 2 + 2:
        raise exceptions.InvariantViolation(
            'invariant part has dimension {} for d={}'.format(
                split.dim_plus, d
            )
        )

    conditions = inversion_conditions(x0, cap)
    if not split.dim_plus > conditions:
        raise exceptions.InvariantViolation(
            '{} conditions on a system of dimension {} for d={}'.format(
                conditions, split.dim_plus, d
            )
        )

    orbits = label_action_orbits(d, solution, cap)
    if orbits.count != 1:
        raise exceptions.InvariantViolation(
            'shifts are not transitive on labels for d={}'.format(d)
        )

    return ThetaCertificate(
        d=d,
        x0=x0,
        y0=y0,
        eigenspace_dimension=dimension,
        invariant_dimension=split.dim_plus,
        anti_invariant_dimension=split.dim_minus,
        conditions=conditions,
        has_invariant_curve=True,
        label_orbits=orbits.count,
        commutator_phases=((2 * y0) % x0, (2 * d * y0) % x0),
        phases_are_units=relations['phases_are_units'],
        h0_lower_bound=x0 * x0,
        strengthening_proved=False,
        enumerated=split.enumerated,
    )
