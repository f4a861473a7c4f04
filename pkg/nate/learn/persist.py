"""
Model files.

    offset  size  field
    0       5     magic b"NATE1"
    5       1     model kind tag
    6       2     format version, u16 little-endian
    8       4     header length H, u32 little-endian
    12      H     UTF-8 JSON header
    12+H    ...   arrays, little-endian, in manifest order
    end-4   4     CRC32 of every preceding byte, u32 little-endian

The header holds the model kind, its scalar parameters, the `meta`
provenance (feature set, type abstraction, feature schema version) and a manifest of
`{"name", "dtype", "shape"}` entries describing the arrays that follow.
"""

from __future__ import annotations

import logging
import pathlib
import struct
import typing as t
import zlib

import numpy as np

from nate.lib import json
from nate.model.enum import ModelKind

from .base import Arrays, Classifier
from .errors import CorruptModel, VersionMismatch
from .forest import RandomForestModel
from .logistic import LogisticModel
from .mlp import MlpModel
from .tree import DecisionTreeModel

logger = logging.getLogger(__name__)

MAGIC: t.Final[bytes] = b"NATE1"
FORMAT_VERSION: t.Final[int] = 1

_PREFIX = struct.Struct("<5sBHI")
_TRAILER = struct.Struct("<I")
_DTYPES = {"f8": np.dtype("<f8"), "i8": np.dtype("<i8")}

MODEL_TYPES: dict[ModelKind, type[Classifier]] = {
    ModelKind.Linear: LogisticModel,
    ModelKind.Tree: DecisionTreeModel,
    ModelKind.Forest: RandomForestModel,
    ModelKind.Mlp10: MlpModel,
    ModelKind.Mlp500: MlpModel,
}


def _encode_array(a: np.ndarray) -> tuple[str, np.ndarray]:
    if np.issubdtype(a.dtype, np.integer):
        return "i8", np.ascontiguousarray(a, dtype=_DTYPES["i8"])
    return "f8", np.ascontiguousarray(a, dtype=_DTYPES["f8"])


def save(model: Classifier) -> bytes:
    arrays = model.arrays()
    manifest: list[dict[str, t.Any]] = []
    blobs: list[bytes] = []
    for name, a in arrays.items():
        dtype, a = _encode_array(a)
        manifest.append({"name": name, "dtype": dtype, "shape": list(a.shape)})
        blobs.append(a.tobytes())

    header = {
        "kind": model.kind,
        "width": model.width,
        "meta": model.meta,
        "params": model.header(),
        "arrays": manifest,
    }
    encoded = json.dumps(header, sort_keys=True, separators=(",", ":"), allow_nan=True).encode("utf8")
    body = _PREFIX.pack(MAGIC, model.kind.tag, FORMAT_VERSION, len(encoded)) + encoded + b"".join(blobs)
    return body + _TRAILER.pack(zlib.crc32(body))


def load(data: bytes, schema_version: str | None = None) -> Classifier:
    """
    Decode a model written by `save`. With `schema_version`, a model whose
    recorded feature schema differs raises `VersionMismatch`.
    """
    if len(data) < _PREFIX.size + _TRAILER.size:
        raise CorruptModel(f"model file is truncated ({len(data)} bytes)")
    magic, tag, version, header_len = _PREFIX.unpack_from(data)
    if magic != MAGIC:
        raise CorruptModel("not a model file")
    body, (crc,) = data[: -_TRAILER.size], _TRAILER.unpack(data[-_TRAILER.size :])
    if zlib.crc32(body) != crc:
        raise CorruptModel("model file checksum does not match")
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"model file format {version}, expected {FORMAT_VERSION}")

    try:
        kind = ModelKind.from_tag(tag)
        end = _PREFIX.size + header_len
        header = json.loads(body[_PREFIX.size : end].decode("utf8"))
        if header["kind"] != kind.value:
            raise CorruptModel(f"model kind tag {tag} disagrees with header kind {header['kind']!r}")
        arrays: Arrays = {}
        offset = end
        for entry in header["arrays"]:
            dtype = _DTYPES[entry["dtype"]]
            shape = tuple(entry["shape"])
            count = int(np.prod(shape, dtype=np.int64))
            nbytes = count * dtype.itemsize
            if offset + nbytes > len(body):
                raise CorruptModel(f"array {entry['name']!r} runs past the end of the file")
            arrays[entry["name"]] = np.frombuffer(body, dtype=dtype, count=count, offset=offset).reshape(shape).copy()
            offset += nbytes
        if offset != len(body):
            raise CorruptModel(f"{len(body) - offset} trailing bytes after the last array")
        model = MODEL_TYPES[kind].from_parts(kind, header["params"], arrays)
    except (KeyError, TypeError, ValueError, UnicodeDecodeError) as exc:
        raise CorruptModel(f"cannot decode model: {exc}") from exc

    model.meta = dict(header.get("meta") or {})
    recorded = model.meta.get("schema_version")
    if schema_version is not None and recorded != schema_version:
        raise VersionMismatch(f"model was trained on feature schema {recorded!r}, expected {schema_version!r}")
    return model


def save_file(model: Classifier, path: pathlib.Path) -> None:
    data = save(model)
    path.write_bytes(data)
    logger.info(f"wrote {model.kind.value} model to {path}", extra={"bytes": len(data), "width": model.width})


def load_file(path: pathlib.Path, schema_version: str | None = None) -> Classifier:
    return load(path.read_bytes(), schema_version)
