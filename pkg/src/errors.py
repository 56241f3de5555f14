"""Exceptions raised by the chance-division library"""


class ChanceSplitError(ValueError):
    """Base class for all library errors"""


class InstanceError(ChanceSplitError):
    """An input violates a model invariant (bad lottery, wrong dimensions, ...)"""


class PreconditionError(ChanceSplitError):
    """An operation was called on an input outside its stated domain"""


class UnsupportedInstanceError(ChanceSplitError):
    """The mechanism is not defined for this instance size"""


class ParseError(ChanceSplitError):
    """Malformed profile, matching or verdict input

    The message always starts with the location of the problem, e.g.
    ``rows[1][2]: invalid rational 'x'``.
    """

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(field)
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class SearchBudgetExceeded(ChanceSplitError):
    """Exhaustive enumeration would exceed its candidate budget"""


class ConfigError(ChanceSplitError):
    """An environment setting could not be interpreted"""


class WitnessNotReproducedError(ChanceSplitError):
    """A counterexample did not fail again when recomputed"""
