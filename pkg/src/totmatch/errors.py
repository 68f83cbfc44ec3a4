"""Exception types shared across the toolkit."""


class TotmatchError(Exception):
    """Base class for all toolkit errors."""


class GraphFormatError(TotmatchError):
    """Malformed graph file. Carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidElementError(TotmatchError):
    """Element id out of range for its graph."""


class InvalidParameterError(TotmatchError):
    """Bad argument to a generator or named-graph constructor."""


class FixtureMissingError(TotmatchError):
    """A named instance that ships as a fixture file was not found."""


class SizeLimitError(TotmatchError):
    """Instance too large for an enumeration-based routine."""


class SolverError(TotmatchError):
    """The LP/MIP backend failed to meet its tolerance or crashed."""


class NodeLimitExceededError(SolverError):
    """MIP node limit hit; carries the incumbent and the proven bound."""

    def __init__(self, message, incumbent=None, bound=None):
        super().__init__(message)
        self.incumbent = incumbent
        self.bound = bound


class IterationLimitError(TotmatchError):
    """Column generation hit its iteration cap; carries the best bound."""

    def __init__(self, message, best_bound=None):
        super().__init__(message)
        self.best_bound = best_bound


class InvalidPointError(TotmatchError):
    """Fractional point violates a separation routine's precondition."""


class CutLoopError(TotmatchError):
    """Cut loop aborted; carries the partial report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
