import enum


class DeploymentEnvironment(enum.Enum):
    Test = "test"
    Local = "local"


class ModelKind(enum.Enum):
    """Classifier configurations; the value is the CLI spelling."""

    Linear = "linear"
    Tree = "tree"
    Forest = "forest"
    Mlp10 = "mlp10"
    Mlp500 = "mlp500"

    @property
    def tag(self) -> int:
        """byte stored in model files"""
        return list(ModelKind).index(self) + 1

    @classmethod
    def from_tag(cls, tag: int) -> "ModelKind":
        kinds = list(ModelKind)
        if not 1 <= tag <= len(kinds):
            raise ValueError(f"unknown model kind tag {tag}")
        return kinds[tag - 1]

    @property
    def hidden_units(self) -> int | None:
        match self:
            case ModelKind.Mlp10:
                return 10
            case ModelKind.Mlp500:
                return 500
            case _:
                return None


class BaselineKind(enum.Enum):
    Random = "random"
    FirstError = "first-error"
