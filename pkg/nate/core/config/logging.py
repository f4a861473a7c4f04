import typing as t

import pydantic as p

from .base import BaseSettings

# https://github.com/python/cpython/blob/3.13/Lib/logging/__init__.py#L93-L100
LogLevel = t.Literal["NOTSET", "TRACE", "DEBUG", "INFO", "WARNING", "WARN", "ERROR", "FATAL", "CRITICAL"]


class FormatterSettings(BaseSettings):
    """`nate.lib.logging.ExtraFormatter` wrapped around a colorlog formatter."""

    class_: t.Literal["nate.lib.logging.ExtraFormatter"] = p.Field(alias="()")
    base: str
    datefmt: str | None = None
    format: str | None = None
    log_colors: dict[str, str]
    no_color: bool = False
    indent: bool | None = None


class HandlerSettings(BaseSettings):
    class_: t.Literal["colorlog.StreamHandler"] = p.Field(alias="class")
    formatter: str
    level: LogLevel
    stream: p.AnyUrl

    @p.field_serializer("stream")
    def serialize_stream(self, v: p.AnyUrl) -> str:
        return str(self.stream)


class LoggerSettings(BaseSettings):
    level: LogLevel = "NOTSET"
    propagate: bool = True
    handlers: list[str] | None = None


class RootLoggerSettings(BaseSettings):
    handlers: list[str]
    level: LogLevel = "NOTSET"


class LoggingSettings(BaseSettings):
    """`logging.config.dictConfig` schema, restricted to what config/logging.yaml uses."""

    version: t.Literal[1]
    disable_existing_loggers: bool = True
    formatters: dict[str, FormatterSettings]
    handlers: dict[str, HandlerSettings]
    root: RootLoggerSettings
    loggers: dict[str, LoggerSettings]

    @p.model_validator(mode="after")
    def _references(self) -> t.Self:
        for name, h in self.handlers.items():
            if h.formatter not in self.formatters:
                raise ValueError(f"handler {name!r} uses unknown formatter {h.formatter!r}")
        named = [("root", self.root.handlers), *((k, v.handlers or []) for k, v in self.loggers.items())]
        for logger, handlers in named:
            for h in handlers:
                if h not in self.handlers:
                    raise ValueError(f"logger {logger!r} uses unknown handler {h!r}")
        return self
