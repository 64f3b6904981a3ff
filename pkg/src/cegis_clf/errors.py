"""Exception hierarchy."""


class CegisError(Exception):
    pass


class InvalidMatrix(CegisError, ValueError):
    """Non-finite or malformed matrix input."""


class DimensionError(CegisError, ValueError):
    pass


class NotSPD(CegisError, ValueError):
    pass


class TooManyVertices(CegisError):
    pass


class DuplicateCounterexample(CegisError):
    """The verifier returned a pair already stored in the counter-example set."""


class SolverStalled(CegisError):
    """The LMI solver failed numerically. Not the same as infeasibility."""


class InvalidState(CegisError):
    pass


class ConfigError(CegisError, ValueError):
    pass


class ParseError(CegisError, ValueError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
