"""Exception types shared across the package."""


class InputError(ValueError):
    """Caller supplied an argument violating a documented precondition."""


class ParseError(ValueError):
    """Malformed input file; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GenerationError(RuntimeError):
    """Random-instance generation could not satisfy the requested parameters."""


class OracleCapError(InputError):
    """Instance exceeds the configured brute-force enumeration limits."""


class SolveTimeout(RuntimeError):
    """Search budget exhausted; carries the best incumbent found so far."""

    def __init__(self, message, incumbent=None, best_value=None, nodes=0):
        super().__init__(message)
        self.incumbent = incumbent
        self.best_value = best_value
        self.nodes = nodes


class EnumTimeout(RuntimeError):
    """Enumeration aborted by the underlying solver budget; carries partial results."""

    def __init__(self, message, solutions=None, stats=None):
        super().__init__(message)
        self.solutions = solutions
        self.stats = stats
