"""Exception taxonomy.

Every operation either returns finite values or raises one of these;
no NaN/Inf escapes silently.
"""


class StepScatterError(Exception):
    """Base class for all package errors."""


class DomainError(StepScatterError, ValueError):
    """Input outside an operation's mathematical domain."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole of the function.

    Carries the pole location in ``pole``.
    """

    def __init__(self, pole, message=None):
        self.pole = pole
        super().__init__(message or f"evaluation at pole z = {pole}")


class ThresholdError(DomainError):
    """Parameters sit on a scattering threshold where a formula degenerates.

    The caller should use the documented limiting branch instead.
    """


class AccuracyError(StepScatterError, ArithmeticError):
    """A series or iteration failed to meet its accuracy contract."""


class ResolutionError(StepScatterError, ValueError):
    """Integration grid too coarse for the requested wave numbers."""


class ResonantExponentError(StepScatterError, ValueError):
    """Frobenius indicial exponents differ by an integer (log case).

    The plain power-series construction does not apply; this
    configuration is outside the supported parameter set.
    """
