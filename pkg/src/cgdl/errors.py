"""Shared error types with a stable mapping onto CLI exit codes."""

from __future__ import annotations

__all__ = [
    "UndeclaredNameError",
    "StarNonConvergenceError",
    "ModelFormatError",
]


class UndeclaredNameError(ValueError):
    """A formula or program mentions a name its model does not declare."""

    def __init__(self, kind: str, name: str):
        super().__init__(f"undeclared {kind} {name!r}")
        self.kind = kind
        self.name = name


class StarNonConvergenceError(RuntimeError):
    """Iteration closure failed to stabilise within its iteration budget."""

    def __init__(self, iterations: int):
        super().__init__(
            f"star iteration did not reach a fixed point within {iterations} steps"
        )
        self.iterations = iterations


class ModelFormatError(ValueError):
    """A model or config file does not match the expected schema."""
