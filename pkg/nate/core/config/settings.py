import pydantic as p
from pydantic_settings import BaseSettings as PydanticBaseSettings
from pydantic_settings import PydanticBaseSettingsSource

from nate.learn import TrainConfig
from nate.model import DeploymentEnvironment

from .base import BaseSettings
from .corpus import CorpusSettings
from .harness import HarnessSettings
from .logging import LoggingSettings
from .slicer import SlicerSettings
from .source import OverrideSettingsSource, YAMLCascadingSettingsSource

SettingsField = p.Field(default=..., validate_default=True)


class Settings(BaseSettings):
    """Every settings section; `env`, `root` and `override` select where the sections are read from."""

    root: p.FileUrl
    env: DeploymentEnvironment
    override: tuple[str, ...]

    logging: LoggingSettings = SettingsField
    train: TrainConfig = TrainConfig()
    slicer: SlicerSettings = SlicerSettings()
    harness: HarnessSettings = HarnessSettings()
    corpus: CorpusSettings = CorpusSettings()

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[PydanticBaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:  # noqa: E501
        # earlier sources win
        return (
            init_settings,
            OverrideSettingsSource(settings_cls),
            env_settings,
            YAMLCascadingSettingsSource(settings_cls),
        )
