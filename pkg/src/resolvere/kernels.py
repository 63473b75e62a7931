"""Hot-loop kernels, compiled when available.

The compiled extension ``_ckernels`` is preferred; setting the environment
variable ``RESOLVERE_PURE_PYTHON=1`` (or a failed build) selects the
pure-Python implementations in ``_pykernels``.  Both expose the same
functions with identical results.

Truth-table programs are postfix sequences of ints: ``k >= 0`` pushes the
column of atom ``k``; the negative opcodes below pop/push as usual.
"""

from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import OP_AND, OP_FALSE, OP_NOT, OP_OR, OP_TRUE, OP_XOR

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

IMPLEMENTATIONS = {"python": _pykernels.find_true_row}
if _ckernels is not None:
    IMPLEMENTATIONS["cython"] = _ckernels.find_true_row

if _ckernels is not None and os.environ.get("RESOLVERE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    BACKEND = "cython"
else:
    BACKEND = "python"
find_true_row = IMPLEMENTATIONS[BACKEND]

__all__ = [
    "BACKEND",
    "IMPLEMENTATIONS",
    "OP_AND",
    "OP_FALSE",
    "OP_NOT",
    "OP_OR",
    "OP_TRUE",
    "OP_XOR",
    "find_true_row",
]
