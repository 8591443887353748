from __future__ import annotations


class CominError(Exception):
    """Base class for errors raised by this package."""


class UnsupportedSpace(CominError, ValueError):
    pass


class NotationError(CominError, ValueError):
    """Malformed position or space text."""


class CapExceeded(CominError, RuntimeError):
    """An enumeration would exceed its configured size cap."""


class InternalError(CominError, AssertionError):
    """A structural invariant failed; indicates a bug, not bad input."""
