"""Exception hierarchy."""


class ValidationError(ValueError):
    """A chain configuration violates one of its invariants."""


class EmptyChain(ValidationError):
    pass


class NonIncreasingPositions(ValidationError):
    pass


class NegativeCoupling(ValidationError):
    pass


class NegativeDissipation(ValidationError):
    pass


class NonPositiveVelocity(ValidationError):
    pass


class NonPositiveWavenumber(ValidationError):
    pass


class SingularSystem(ArithmeticError):
    """The stationary equations are degenerate at this parameter point."""


class ZeroExcitation(ValueError):
    """No emitter amplitude, so there is no heralded state."""


class DimensionMismatch(ValueError):
    pass


class EmptyKeepSet(ValueError):
    pass


class UnknownLabel(KeyError):
    pass


class WrongQubitCount(ValueError):
    pass


class UnknownPair(KeyError):
    pass


class QuadratureNotConverged(ArithmeticError):
    """Refining the wavenumber grid keeps moving the probabilities."""


class ConfigParseError(ValueError):
    """Malformed configuration text.

    Attributes:
        line: 1-based line number of the offending input, or None when the
            problem is not tied to one line (e.g. a missing section).
        message: Human readable description without the line prefix.
    """

    def __init__(self, line, message):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class UnknownKey(ConfigParseError):
    pass


class MissingSection(ConfigParseError):
    pass
