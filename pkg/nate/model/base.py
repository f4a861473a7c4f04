import typing as t

import pydantic as p


class BaseModel(p.BaseModel):
    """Frozen record type. Dumps use field aliases unless told otherwise."""

    model_config = p.ConfigDict(frozen=True, extra="forbid")

    def model_dump(self, **kwargs: t.Any) -> dict[str, t.Any]:  # pyright: ignore [reportIncompatibleMethodOverride]
        kwargs.setdefault("by_alias", True)
        return super().model_dump(**kwargs)
