__all__ = [
    "CorpusSettings",
    "HarnessSettings",
    "LoggingSettings",
    "Settings",
    "SlicerSettings",
]


from .corpus import CorpusSettings
from .harness import HarnessSettings
from .logging import LoggingSettings
from .settings import Settings
from .slicer import SlicerSettings
