"""
JSON with the encodings the workbench needs: numpy scalars and arrays
(model headers, feature rows), enums by value, sets sorted (node-id sets)
and pydantic records.
"""

from __future__ import annotations

import enum
import functools
import json as pyjson
import pathlib
import typing as t

import numpy as np
import pydantic as p

JSONPrimitive = str | int | float | bool | None
JSONValue = JSONPrimitive | list["JSONValue"] | dict[str, "JSONValue"]

loads = pyjson.loads


@functools.cache
def _encoder_map() -> dict[type, t.Callable[[t.Any], JSONValue]]:
    return {
        enum.Enum: lambda o: o.value,
        frozenset: sorted,
        set: sorted,
        np.floating: float,
        np.integer: int,
        np.bool_: bool,
        np.ndarray: lambda o: o.tolist(),
        pathlib.Path: str,
    }


class JSONEncoder(pyjson.JSONEncoder):
    def default(self, o: t.Any) -> JSONValue:
        if isinstance(o, p.BaseModel):
            return o.model_dump(mode="json")
        for tp, encode in _encoder_map().items():
            if isinstance(o, tp):
                return encode(o)
        return super().default(o)


def dumps(obj: t.Any, **kw: t.Any) -> str:
    """`json.dumps` with `JSONEncoder` unless another `cls` is given"""
    kw.setdefault("cls", JSONEncoder)
    return pyjson.dumps(obj, **kw)
