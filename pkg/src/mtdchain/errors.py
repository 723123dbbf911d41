"""Exception hierarchy.

Errors split in two families so the CLI can map them onto exit codes:
``InputError`` (bad data or arguments, exit 2) and ``ComputationError``
(the numbers could not be produced, exit 3).
"""


class MtdError(Exception):
    """Base class for every error raised by this package."""


class InputError(MtdError, ValueError):
    pass


class ComputationError(MtdError):
    pass


class UnknownLabel(InputError):
    def __init__(self, token, position):
        self.token = token
        self.position = position
        super().__init__(f"unknown state label {token!r} at position {position}")


class EmptyInput(InputError):
    def __init__(self, what="sequence"):
        super().__init__(f"empty {what}")


class InvalidStateSpace(InputError):
    pass


class HistoryLengthMismatch(InputError):
    def __init__(self, got, expected):
        self.got = got
        self.expected = expected
        super().__init__(f"history has {got} states, model order is {expected}")


class UnknownTeam(InputError):
    def __init__(self, team):
        self.team = team
        super().__init__(f"team {team!r} not found in ledger")


class MalformedRow(InputError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"malformed ledger row at line {line}: {reason}")


class ModelFormatError(InputError):
    pass


class LagNotPositive(ComputationError):
    def __init__(self, lag):
        self.lag = lag
        super().__init__(f"lag must be >= 1, got {lag}")


class InvalidOrder(ComputationError):
    def __init__(self, order):
        self.order = order
        super().__init__(f"order must be ≥ 1, got {order}")


class SequenceTooShort(ComputationError):
    def __init__(self, n, k):
        self.n = n
        self.k = k
        super().__init__(f"sequence of length {n} is too short for order {k} (need at least {k + 1})")


class DimensionMismatch(ComputationError):
    pass


class LpFailure(ComputationError):
    pass


class NoStationary(ComputationError):
    pass


class ConfigInvalid(ComputationError):
    pass


class WindowTooShort(ComputationError):
    def __init__(self, n, window):
        self.n = n
        self.window = window
        super().__init__(f"sequence has {n} states, assessment window needs {window}")
