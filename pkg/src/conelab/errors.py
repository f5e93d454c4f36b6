"""Exception types shared across conelab modules."""


class StructureError(ValueError):
    """A declared object is malformed: bad shapes, dependent basis, wrong sizes."""


class NotInSpaceError(ValueError):
    """A matrix block does not lie in the declared span.

    The offending block is carried in .block, either ("diag", i) or (k, j)
    with 1-based block indices.
    """

    def __init__(self, message, block):
        super().__init__(message)
        self.block = block


class ClosureViolationError(RuntimeError):
    """A group action left the space V; carries the first offending block."""

    def __init__(self, message, block):
        super().__init__(message)
        self.block = block


class InconsistentDimsError(ValueError):
    """A dimension table admits no consistent layering.

    Raised when an intermediate accounting vector acquires a negative entry;
    .detail holds (i, k, vector) for the step that failed.
    """

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class SerializationError(ValueError):
    """Malformed wire data: bad rational strings, floats, missing keys."""
