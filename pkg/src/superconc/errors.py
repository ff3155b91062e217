class ClassPreconditionError(ValueError):
    """The states do not satisfy the orthogonality class a bound requires."""


class VanishingNormError(ValueError):
    """The superposition cancels to (numerically) zero."""


class PartitionCapError(ValueError):
    """Too many states for exhaustive partition enumeration."""


class InvariantError(RuntimeError):
    """An internal consistency check failed (e.g. a bound does not bracket)."""
