class NuddError(Exception):
    """Exception is related to the decoupling laboratory."""


class DimensionMismatch(NuddError):
    """Matrix dimensions are incompatible with the requested operation."""

class NotHermitian(NuddError):
    """Matrix was expected to be Hermitian but is not."""

class ConvergenceError(NuddError):
    """Iterative linear algebra routine failed to converge."""


class InvalidSpec(NuddError):
    """Layer count or sequence orders are invalid."""

class InvalidIndex(NuddError):
    """Multi-index component is outside its allowed range."""

class OutOfRange(NuddError):
    """Normalized time is outside the unit interval."""


class InvalidMoos(NuddError):
    """Control operators do not form a mutually orthogonal operation set."""

    def __init__(self, message, invariant=None, index=None, pair=None):
        NuddError.__init__(self, message)
        self.invariant = invariant
        self.index = index
        self.pair = pair

class InvalidGenerator(NuddError):
    """Generator operator does not classify to its unit error vector."""

class LengthMismatch(NuddError):
    """Error vectors or words have inconsistent lengths."""


class BudgetExceeded(NuddError):
    """Number of coefficient evaluations would exceed the budget."""

    def __init__(self, message, attempted=None, limit=None):
        NuddError.__init__(self, message)
        self.attempted = attempted
        self.limit = limit


class ConfigError(NuddError):
    """Exception is related to a configuration error."""

class UnknownConfigKey(ConfigError):
    """Configuration contains a key that is not recognized."""

class MissingConfigKey(ConfigError):
    """Configuration is missing a required key."""

    def __init__(self, keys):
        ConfigError.__init__(self, 'Missing required config key(s): %s.' %
                ', '.join(keys))
        self.keys = list(keys)


class ReportError(NuddError):
    """Report is incomplete or empty."""

class InvariantViolation(NuddError):
    """Numerical result violates a predicted lower bound or identity."""


class CacheError(NuddError):
    """An error occurred when handling the sweep point cache."""


class SQLEngineNotAvailable(Exception):
    """Optional SQL engine is not available."""
