"""Exception hierarchy shared by the evaluation, solver and verification layers."""


class QJacobiError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(QJacobiError, ValueError):
    """Non-finite or out-of-contract input."""


class DegenerateParameters(QJacobiError, ValueError):
    """A denominator of the recurrence (or of a derived formula) vanishes.

    The message names the failing guard.
    """


class UnresolvedRelation(QJacobiError):
    """A mixed relation was requested before its equality form was calibrated."""


class BracketFailure(QJacobiError):
    """A bracket that theory guarantees to contain a sign change does not."""


class ConvergenceFailure(QJacobiError):
    """Root refinement did not reach the residual tolerance."""


class OracleFailure(QJacobiError):
    """The sign-scan oracle found the wrong number of zeros."""


class LengthMismatch(QJacobiError, ValueError):
    pass


class UnsupportedShift(QJacobiError, ValueError):
    """Shift t outside the values for which interlacing is proved."""
