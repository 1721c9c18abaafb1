"""Engine selection for the statistical hot paths.

Two interchangeable engines implement the batch sampling kernels:

* ``pure`` — plain Python, always available, builds on the same machine code
  the public procedure API uses.
* ``_compiled`` — a Cython reimplementation of the whole pipeline (RNG,
  Fenwick tree, union-find path structure, plug accounting, loop counting).

Both produce bit-identical results; the test suite compares them directly.
Set ``CHORDGENUS_PURE=1`` to refuse the compiled engine even when built.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import pure

compiled: ModuleType | None = None
if os.environ.get("CHORDGENUS_PURE", "").strip().lower() not in {"1", "true", "yes"}:
    try:
        from . import _compiled as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None


def backend_name() -> str:
    return "pure" if compiled is None else "compiled"


def active() -> ModuleType:
    """The engine the statistics layer should use."""
    return pure if compiled is None else compiled
