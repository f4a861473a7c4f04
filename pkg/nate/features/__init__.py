from .errors import FeatureError, SchemaMismatch, UnknownFeatureSet
from .extract import (
    Sample,
    contextual_syntactic,
    extract,
    extract_program,
    local_syntactic,
    node_vector,
    relatives,
    size_feature,
    to_matrix,
    typing_features,
)
from .schema import (
    CONTEXTS,
    SCHEMA_VERSION,
    Feature,
    FeatureGroup,
    FeatureSchema,
    FeatureSet,
    TypeAbstraction,
    kind_feature,
    schema,
    type_feature,
)

__all__ = [
    "CONTEXTS",
    "Feature",
    "FeatureError",
    "FeatureGroup",
    "FeatureSchema",
    "FeatureSet",
    "SCHEMA_VERSION",
    "Sample",
    "SchemaMismatch",
    "TypeAbstraction",
    "UnknownFeatureSet",
    "contextual_syntactic",
    "extract",
    "extract_program",
    "kind_feature",
    "local_syntactic",
    "node_vector",
    "relatives",
    "schema",
    "size_feature",
    "to_matrix",
    "type_feature",
    "typing_features",
]
