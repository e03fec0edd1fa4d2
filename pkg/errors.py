"""Exception hierarchy shared by every package in the toolkit."""


class PairedOperatorError(Exception):
    """Base class for all errors raised by the toolkit."""


class SymbolSyntaxError(PairedOperatorError, ValueError):
    def __init__(self, message, text="", position=0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(message)

    def __str__(self):
        if not self.text:
            return self.message
        caret = " " * self.position + "^"
        return f"{self.message} at position {self.position}\n  {self.text}\n  {caret}"


class SymbolDomainError(PairedOperatorError, ValueError):
    """A symbol is outside the domain an operation accepts."""


class ConditioningError(PairedOperatorError, ArithmeticError):
    """A denominator is too close to the unit circle to be sampled reliably."""


class BandViolationError(PairedOperatorError, ValueError):
    """A coefficient vector has support outside the half-band an operator acts on."""


class DegeneratePairError(PairedOperatorError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"degenerate pair: {', '.join(report.failures)}")


class KernelAmbiguityError(PairedOperatorError, ArithmeticError):
    def __init__(self, singular_values, threshold, band):
        self.singular_values = list(singular_values)
        self.threshold = threshold
        self.band = band
        super().__init__(
            f"singular values too close to the null threshold {threshold:.3e} at band {band}"
        )


class MembershipError(PairedOperatorError, ValueError):
    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class InvertibilityError(PairedOperatorError, ArithmeticError):
    """The requested symbol is not invertible in L-infinity (it vanishes on the circle)."""


class PreconditionError(PairedOperatorError, ValueError):
    """An operation was called outside its stated hypotheses."""
