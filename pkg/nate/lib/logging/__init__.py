__all__ = [
    "ExtraFormatter",
    "TRACE",
]

import typing as t

from .extra import ExtraFormatter

TRACE: t.Final[int] = 5
