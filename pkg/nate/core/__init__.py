__all__ = [
    "BootConfiguration",
    "di",
    "NateContainer",
    "LoggingProvider",
    "Settings",
]


from . import di
from .config import Settings
from .container import BootConfiguration, NateContainer
from .provider import LoggingProvider
