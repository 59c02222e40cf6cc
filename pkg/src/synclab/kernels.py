"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module stands in.  Set ``SYNCLAB_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import permutations

from synclab import _pykernels

if os.environ.get("SYNCLAB_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from synclab import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"


@lru_cache(maxsize=None)
def all_perms(m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(m)))


def shortest_sync(table, n, k, subset_limit, impl=None):
    return (impl or _impl).shortest_sync(table, n, k, subset_limit)


def canonical_table(table, n, k, impl=None):
    return (impl or _impl).canonical_table(table, n, k, all_perms(n), all_perms(k))


def is_canonical(table, n, k, impl=None):
    return (impl or _impl).is_canonical(table, n, k, all_perms(n), all_perms(k))


def available_backends() -> dict:
    out = {"python": _pykernels}
    try:
        from synclab import _kernels  # type: ignore[attr-defined]

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
