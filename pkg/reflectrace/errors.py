"""
Reflectrace exception hierarchy.

Mathematical preconditions raise these; the CLI maps them to exit code 2.
"""

from typing import Optional


class ReflectraceError(Exception):
    """Base class for every error raised by reflectrace."""


class ConfigError(ReflectraceError):
    """A system config file or option could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.source = source
        location = source or "<config>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")


class UnsupportedLabelError(ReflectraceError):
    """A Coxeter label outside {1, 2, 3, 4, 5, 6, inf}."""

    def __init__(self, label):
        self.label = label
        super().__init__(f"unsupported Coxeter label: {label!r} (allowed: 2, 3, 4, 5, 6, inf)")


class ScalarDivisionError(ReflectraceError, ZeroDivisionError):
    """Division by an exact zero scalar."""


class NotSphericalError(ReflectraceError):
    """A subset of generators whose parabolic subgroup is infinite."""


class FoldError(ReflectraceError):
    """Folding did not reach the fundamental chamber within the step cap."""


class CapExceededError(ReflectraceError):
    """An enumeration outgrew its configured cap."""


class NotAffineError(ReflectraceError):
    """An affine-only operation was called on a non-affine system."""


class NotFiniteError(ReflectraceError):
    """A finite-only operation was called on an infinite system."""


class NotInGroupError(ReflectraceError):
    """An element does not belong to the finite group it was checked against."""
