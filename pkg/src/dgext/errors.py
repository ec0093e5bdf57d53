"""Exception hierarchy.

The CLI maps the three top-level families onto distinct exit codes
(parse 2, validation 3, computation 4).
"""


class DgextError(Exception):
    pass


class ParseError(DgextError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ValidationError(DgextError):
    """A named structural invariant failed."""

    invariant = "validation"

    def __init__(self, message: str, invariant: str | None = None):
        if invariant is not None:
            self.invariant = invariant
        super().__init__(message)


class DimensionMismatch(ValidationError):
    invariant = "dimensions"


class NotAChainMap(ValidationError):
    invariant = "chain-map"


class NotACycle(ValidationError):
    invariant = "cycle"


class IncompatibleAlgebras(ValidationError):
    invariant = "same-algebra"


class IncompatibleEnds(ValidationError):
    invariant = "same-ends"


class HypothesisViolated(ValidationError):
    invariant = "hypothesis"


class UnknownExample(ValidationError):
    invariant = "known-example"


class AxiomViolation(ValidationError):
    invariant = "axioms"


class ComputationError(DgextError):
    pass


class CutoffTooSmall(ComputationError):
    pass


class WindowExhausted(ComputationError):
    pass


class NotGradedSplit(ComputationError):
    """The extension admits no degreewise A-linear splitting."""
