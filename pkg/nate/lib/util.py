import typing as t
from collections.abc import Mapping

import numpy as np

KT = t.TypeVar("KT")
VT = t.TypeVar("VT")
RecursiveMapping = VT | Mapping[KT, "RecursiveMapping[KT, VT]"]


def deep_update(
    d1: dict[KT, RecursiveMapping[KT, VT]], d2: Mapping[KT, RecursiveMapping[KT, VT]]
) -> dict[KT, RecursiveMapping[KT, VT]]:
    result = d1.copy()
    for k, v in d2.items():
        if isinstance(v, Mapping) and k in result and isinstance(result[k], Mapping):
            result[k] = deep_update(result[k], v)  # type: ignore
        else:
            result[k] = v
    return result


def derive_seed(seed: int, *path: int | str) -> int:
    """
    Derive an independent 64-bit seed for a sub-job (a fold, a tree, a
    program) from a root seed, so results do not depend on scheduling.
    """
    words = [seed & 0xFFFFFFFFFFFFFFFF]
    for part in path:
        if isinstance(part, str):
            words.extend(part.encode("utf8"))
        else:
            words.append(part & 0xFFFFFFFFFFFFFFFF)
    ss = np.random.SeedSequence(words)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def rng(seed: int, *path: int | str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *path))
