"""Exception types shared across the package."""


class RenforgeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(RenforgeError, ValueError):
    """An argument violates a documented precondition."""


class NotFoundError(RenforgeError, LookupError):
    """A referenced neuron, synapse, node, or concept does not exist."""


class DuplicateEdgeError(RenforgeError):
    """A (pre, post) synapse pair already exists; use edge multiplicity instead."""


class InvalidSpecError(RenforgeError, ValueError):
    """A refined-unit build specification violates its invariants."""


class InvalidCombinationError(RenforgeError):
    """Two reports cannot be combined (e.g. different network snapshots)."""


class ConfigurationError(RenforgeError):
    """An experiment configuration is unreadable or names unknown entries."""
