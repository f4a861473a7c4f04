from .errors import NotIllTyped, SlicerError
from .slice import (
    ErrorSlice,
    SliceCheck,
    error_key,
    hole_outside,
    in_any_slice,
    minimal_slices,
    over_approximation,
    slice_union,
    union_sufficient,
    verify,
)

__all__ = [
    "ErrorSlice",
    "NotIllTyped",
    "SliceCheck",
    "SlicerError",
    "error_key",
    "hole_outside",
    "in_any_slice",
    "minimal_slices",
    "over_approximation",
    "slice_union",
    "union_sufficient",
    "verify",
]
