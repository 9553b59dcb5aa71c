"""Exception hierarchy shared across the library.

Each class carries the process exit code the CLI maps it to:
2 invalid configuration, 3 resource guard, 4 numerical failure.
"""


class MagicwalkError(Exception):
    exit_code = 1


class InvalidSpecError(MagicwalkError):
    """Bad chain specification, domain violation, or unusable input data."""

    exit_code = 2


class ResourceLimitError(MagicwalkError):
    """Requested size exceeds a hard guard (memory or runtime)."""

    exit_code = 3


class NumericalError(MagicwalkError):
    """Diagonalization failure, norm drift, or residue above tolerance."""

    exit_code = 4


class InsufficientDataError(InvalidSpecError):
    """Too few values survive filtering to form statistics."""


class EmptyWindowError(InvalidSpecError):
    """A fit window selects no samples."""


class NoFrontError(InvalidSpecError):
    """No site exceeds the front-detection threshold at a requested time."""
