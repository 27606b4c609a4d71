from __future__ import annotations


class PhiTildeError(Exception):
    """Base class for every error raised by phitilde_suite."""


class OutOfRangeError(PhiTildeError, ValueError):
    pass


class CapacityError(PhiTildeError, MemoryError):
    pass


class ResourceError(PhiTildeError, RuntimeError):
    pass


class PrimorialOverflowError(PhiTildeError, OverflowError):
    pass


class UsageError(PhiTildeError, ValueError):
    pass
