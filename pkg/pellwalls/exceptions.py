class PellwallsException(Exception):
    """
    Base class for all our exceptions.

    Should not be raised directly.
    """

    EXIT_CODE = 1


class MismatchedRadicand(PellwallsException):
    def __str__(self):
        return 'Cannot compare numbers in Q(sqrt({})) and Q(sqrt({})).'.format(
            *self.args
        )


class InvalidPellSolution(PellwallsException):
    def __str__(self):
        return '({}, {}) is not a solution of x^2 - 4*{}*y^2 = 1.'.format(
            *self.args
        )


class NoPellSolution(PellwallsException):
    EXIT_CODE = 3

    def __str__(self):
        return (
            'no walls: Pell equation has only trivial solutions (d={}).'
            .format(self.args[0])
        )


class WallError(PellwallsException):
    """
    Raised when two classes do not cut a semicircular wall.
    """

    EXIT_CODE = 2


class ProportionalClasses(WallError):
    def __str__(self):
        return 'Classes {} and {} are proportional, no wall.'.format(
            *self.args
        )


class NotASemicircle(WallError):
    def __str__(self):
        return 'The locus of equal tilt slope for {} and {} {}.'.format(
            *self.args
        )


class NotABreakpoint(PellwallsException):
    EXIT_CODE = 2

    def __str__(self):
        return '{} is not a breakpoint of this function.'.format(self.args[0])


class InvariantViolation(PellwallsException):
    """
    Raised when a construction-time check or an oracle cross-check fails.

    These should never happen; if they do, either the input was corrupted or
    one of the conventions in use is wrong.
    """

    def __str__(self):
        return 'Invariant violated: {}'.format(self.args[0])


class VerificationFailure(PellwallsException):
    def __str__(self):
        return 'Verification failed in suite {}: {}'.format(*self.args)
