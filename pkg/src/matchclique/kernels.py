"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``MATCHCLIQUE_PURE_PYTHON=1`` before import to force the fallback
(the benchmark and the parity tests rely on this).
"""

import os

if os.environ.get("MATCHCLIQUE_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

max_matching = _impl.max_matching
find_disjoint = _impl.find_disjoint
has_disjoint = _impl.has_disjoint
downset_search = _impl.downset_search
