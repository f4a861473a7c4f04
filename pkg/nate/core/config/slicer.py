import pydantic as p

from .base import BaseSettings


class SlicerSettings(BaseSettings):
    # seconds per program; null disables the limit
    budget: float | None = p.Field(default=1.0, gt=0.0)
