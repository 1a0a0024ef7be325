# core/exceptions.py
"""
Library exceptions.

Propagation failure is not an exception: it is a failed
``PropagationOutcome``. Everything here signals malformed input, resource
exhaustion or a broken internal invariant.
"""


class AllDiffPrecError(Exception):
    """Base class for every error raised by the library."""


class CycleError(AllDiffPrecError, ValueError):
    """The precedence relation has a directed cycle (constraint trivially unsatisfiable)."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"precedence edges contain a cycle: {list(self.cycle)}")


class EmptyDomainError(AllDiffPrecError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"domain of variable {index} is empty")


class InvalidIndexError(AllDiffPrecError, IndexError):
    pass


class NotPreprocessedError(AllDiffPrecError, ValueError):
    """Bounds violate min(X_i) <= min(X_j), max(X_i) <= max(X_j) on some edge."""


class ExplosionError(AllDiffPrecError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"search space {size} exceeds enumeration cap {cap}")


class MalformedFormulaError(AllDiffPrecError, ValueError):
    pass


class InstanceFormatError(AllDiffPrecError, ValueError):
    def __init__(self, message, detail=None):
        self.detail = detail
        super().__init__(message)


class InvariantViolation(AllDiffPrecError, AssertionError):
    pass


class NodeLimitReached(AllDiffPrecError):
    def __init__(self, nodes):
        self.nodes = nodes
        super().__init__(f"node limit reached after {nodes} nodes")
