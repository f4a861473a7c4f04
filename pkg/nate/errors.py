"""Root of the exception hierarchy.

Every package defines its own ``errors`` module whose base class derives
from `NateError`, so callers can catch workbench failures without catching
programming errors.
"""


class NateError(Exception):
    """Error raised by a workbench operation."""

    pass
