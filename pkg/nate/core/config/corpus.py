import pydantic as p

from nate.harness import CATALOG, CorpusSpec, Mutation

from .base import BaseSettings


class CorpusSettings(BaseSettings):
    size: int = p.Field(default=2000, ge=0)
    seed: int = p.Field(default=42, ge=0, lt=2**64)
    max_depth: int = p.Field(default=3, ge=1)
    rewrite_fraction: float = p.Field(default=0.0, ge=0.0, le=1.0)
    mutations: tuple[Mutation, ...] = CATALOG

    def spec(self) -> CorpusSpec:
        return CorpusSpec(
            size=self.size,
            max_depth=self.max_depth,
            rewrite_fraction=self.rewrite_fraction,
            mutations=self.mutations,
        )
