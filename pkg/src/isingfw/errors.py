"""Exception hierarchy shared by every module of the package."""


class IsingSeriesError(Exception):
    """Base class for all package errors."""


class SeriesError(IsingSeriesError):
    pass


class DivisionByUnknownSeries(SeriesError):
    """Divisor has no known nonzero coefficient."""


class NonMonicBase(SeriesError):
    """Fractional power of a series whose leading coefficient is not 1."""


class FractionalExponent(SeriesError):
    """valuation * alpha is not an integer."""


class ParityViolation(SeriesError):
    """Odd power of k where a function of t = k^2 is required."""


class CompositionDomain(SeriesError):
    """Inner series of a composition has nonpositive valuation."""


class LogOfNonUnit(SeriesError):
    """Logarithm of a series whose constant term is not 1."""


class VariableMismatch(SeriesError):
    """Operands are series in different variables."""


class SpecialFunctionError(IsingSeriesError):
    pass


class PochhammerPole(SpecialFunctionError):
    """Lower hypergeometric parameter hits a nonpositive integer."""


class IndeterminateGammaRatio(SpecialFunctionError):
    """Gamma ratio with a pole in the numerator only, or a non-integer offset."""


class ParityDomain(SpecialFunctionError):
    """Requested power of t is not an integer power of k."""


class CheckError(IsingSeriesError):
    pass


class TruncationUnderflow(CheckError):
    """Result cannot be certified to the requested order."""


class SymmetryViolation(CheckError):
    """A factor fails the expected sign symmetry."""


class IdentityMismatch(CheckError):
    """Two sides of an identity differ; carries the first offending exponent."""

    def __init__(self, message, exponent=None, difference=None):
        super().__init__(message)
        self.exponent = exponent
        self.difference = difference


class NormalizationFailure(CheckError):
    """A factor does not start with the expected leading term."""


class SolverError(IsingSeriesError):
    pass


class NotAResonance(SolverError):
    """Free coefficient requested where the recursion is not degenerate."""


class UnexpectedDegeneracy(SolverError):
    """Recursion degenerates at an order where a unique solution was expected."""
