"""Kernel selection: compiled extension if importable, pure Python otherwise.

Set ``MTGROUPS_PURE=1`` to force the pure-Python path (used by the benchmark
and by the cross-implementation tests).
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("MTGROUPS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels
    else:
        BACKEND = "cython"
else:
    _impl = _pykernels

table_closure = _impl.table_closure
distinct_count = _impl.distinct_count
coset_labels = _impl.coset_labels
perm_closure = _impl.perm_closure
lehmer_ranks = _impl.lehmer_ranks

__all__ = [
    "BACKEND",
    "table_closure",
    "distinct_count",
    "coset_labels",
    "perm_closure",
    "lehmer_ranks",
]
