# -*- coding: utf-8 -*-
"""
Exception hierarchy shared by every hecke-lab module.
"""

from typing import List, Optional


class HeckeLabError(Exception):
    """Base class of all library errors."""


class PreconditionError(HeckeLabError, ValueError):
    """An operation was called with arguments outside its domain."""


class NotInvertibleError(PreconditionError):
    def __init__(self, what: str = "matrix"):
        super().__init__(f"{what} not invertible")


class CapExceededError(HeckeLabError):
    """A closure, convolution or tile search passed its configured cap."""

    def __init__(self, what: str, cap: int, trajectory: Optional[List[int]] = None):
        self.cap = cap
        self.trajectory = list(trajectory or [])
        message = f"cap exceeded: {what} passed {cap}"
        if self.trajectory:
            message += f" (sizes: {self.trajectory})"
        super().__init__(message)


class ConsistencyError(HeckeLabError):
    """An internal invariant failed; signals a bug rather than bad input."""


class NumericDegeneracyError(HeckeLabError):
    """A floating iteration did not stabilize."""


class ExpectationNotInvertibleError(PreconditionError):
    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"expectation not invertible; apply convex averaging (min eigenvalue {min_eigenvalue:.3e})"
        )
