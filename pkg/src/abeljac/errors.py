"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ContractError(ValueError):
    """A call violates an interface contract (index ordering, shape, side mismatch)."""


class InputError(ValueError):
    """User-supplied data is malformed or non-finite where finiteness is required."""


class StageError(RuntimeError):
    """An orchestrated pipeline stage failed; carries the stage name."""

    def __init__(self, stage, message):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
