"""Error taxonomy shared by all modules.

Exit-code mapping used by the CLI: BoundViolation -> 1, ConfigError -> 2,
cap/precision/budget exhaustion -> 3.
"""


class ConfigError(ValueError):
    """Invalid configuration or malformed input."""


class RingMismatchError(ConfigError):
    """Operands live over different coefficient rings or primes."""


class PrecisionError(ArithmeticError):
    """The answer depends on p-adic digits beyond the known precision."""


class CapExceededError(RuntimeError):
    """An enumeration would exceed its declared cap."""


class BudgetExceededError(RuntimeError):
    """An iterative computation (e.g. S-pair processing) ran out of budget."""


class FullRankError(RuntimeError):
    """The monomial matrix has full rank: no auxiliary polynomial exists
    at this degree."""


class BoundViolation(AssertionError):
    """A bound that the theory guarantees was violated by the computation.

    This is the interesting outcome: it is reported, never swallowed.
    """
