class SICError(Exception):
    """Base class for all errors raised by this package."""


class CurveError(SICError, ValueError):
    """Malformed input: bad curve, bad arguments, unparsable files."""


class NumericalError(SICError, ArithmeticError):
    """A fit or decomposition that cannot produce a finite answer."""


class RankDeficientError(NumericalError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"design matrix is rank deficient at k={k}")


class DegenerateFitError(NumericalError):
    """Zero residual or zero variance: the log-scale curve would be -inf."""
