__all__ = [
    "BaseModel",
    "BaselineKind",
    "DeploymentEnvironment",
    "ModelKind",
]

from .base import BaseModel
from .enum import BaselineKind, DeploymentEnvironment, ModelKind
