"""Backend selector for the compute kernels.

Prefers the compiled extension (``_kernels_cy``) and falls back to the
pure-Python implementation.  Set ``LWHEEL_KERNELS=py`` (or ``cy``) to force
a backend; forcing ``cy`` raises if the extension is missing.
"""

from __future__ import annotations

import os

_forced = os.environ.get("LWHEEL_KERNELS", "").strip().lower()

if _forced == "py":
    from . import _kernels_py as _impl
elif _forced == "cy":
    from . import _kernels_cy as _impl
elif _forced:
    raise ImportError("LWHEEL_KERNELS must be 'py' or 'cy', got %r" % _forced)
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
max_clique = _impl.max_clique
max_independent_set = _impl.max_independent_set
shortest_hole = _impl.shortest_hole
treewidth_exact = _impl.treewidth_exact
