from __future__ import annotations

import types
import typing as t

import pydantic as p
from dependency_injector.containers import DeclarativeContainer
from dependency_injector.providers import Configuration, Object, Provider, Resource, Singleton

from nate.learn import TrainConfig
from nate.model import BaseModel, DeploymentEnvironment

from ..config import CorpusSettings, HarnessSettings, Settings, SlicerSettings
from ..di import NotReady
from ..provider import LoggingProvider


class BootConfiguration(BaseModel):
    debug: bool
    env: DeploymentEnvironment
    config_root: p.AnyUrl
    override: tuple[str, ...]


class NateContainer(DeclarativeContainer):
    config: Configuration = Configuration()

    debug: Provider[bool] = Singleton(bool)
    env: Provider[DeploymentEnvironment] = Singleton(DeploymentEnvironment)

    logging: Provider[LoggingProvider] = Resource(LoggingProvider, config=config.logging, debug=debug)

    train: Provider[TrainConfig] = Singleton(TrainConfig.model_validate, config.train)
    slicer: Provider[SlicerSettings] = Singleton(SlicerSettings.model_validate, config.slicer)
    harness: Provider[HarnessSettings] = Singleton(HarnessSettings.model_validate, config.harness)
    corpus: Provider[CorpusSettings] = Singleton(CorpusSettings.model_validate, config.corpus)

    _boot_config: Provider[BootConfiguration | NotReady] = Object(NotReady())

    @staticmethod
    def boot(
        ct: NateContainer,
        /,
        debug: bool,
        env: DeploymentEnvironment,
        config_root: p.FileUrl,
        override: tuple[str, ...] | None = None,
        wiring: tuple[str | types.ModuleType, ...] | None = None,
    ):
        """
        Load settings for `env` from `config_root` and configure logging.
        Command modules must be imported before boot so they can be wired.
        """
        if config_root.scheme != "file":
            raise ValueError(f"unsupported scheme for config root: {config_root.scheme}")
        ps = Settings(env=env, root=config_root, override=override or ())
        ct.config.from_pydantic(ps)
        if wiring:
            ct.wire(modules=wiring)
        ct.debug.override(debug)
        ct.env.override(env)

        logger = ct.logging().get_logger()
        for ov in ps.override:
            k, v = ov.split("=", 1)
            logger.info("overriding configuration parameter", extra={"key": k, "value": v})

        bc = BootConfiguration(debug=debug, env=env, config_root=config_root, override=ps.override)
        ct._boot_config.override(bc)
        logger.debug("configuration finished", extra={"config": str(config_root), "env": env.value})


def boot_configuration(ct: NateContainer) -> BootConfiguration:
    bc = ct._boot_config()
    if isinstance(bc, NotReady):
        raise RuntimeError("container has not been booted")
    return t.cast(BootConfiguration, bc)
