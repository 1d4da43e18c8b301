"""Exception types shared across the package."""

from __future__ import annotations


class QmprobeError(Exception):
    """Base class for package-specific failures."""


class ModelMismatchError(QmprobeError, ValueError):
    """Elements or quasimorphisms from different group models were mixed."""


class CapExceededError(QmprobeError, RuntimeError):
    """A configured resource cap (ball radius, vertex count, cell count,
    iteration budget) would be exceeded."""

    def __init__(self, what: str, requested, cap):
        super().__init__(f"{what}: requested {requested}, cap {cap}")
        self.what = what
        self.requested = requested
        self.cap = cap


class ConfigError(QmprobeError, ValueError):
    """A config file failed to parse or validate.  The message names the
    section and key involved."""


class LibraryIncompleteError(QmprobeError):
    """Peak reduction needed a replacement path that the q-library does
    not contain."""


class ExtractionError(QmprobeError):
    """Path extraction from a boundary support failed; carries the
    support dump for inspection."""

    def __init__(self, message: str, support=None):
        super().__init__(message)
        self.support = support


class ReplayError(QmprobeError):
    """A certificate failed to replay.  Names the certificate."""
