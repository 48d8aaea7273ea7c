"""Select the arithmetic kernel at import time.

The compiled extension is preferred when present; set ``VALEX_BACKEND=python``
(or ``pure``) to force the pure-Python fallback, e.g. for benchmarking.
"""

import os

_forced = os.environ.get("VALEX_BACKEND", "").strip().lower()

if _forced in ("python", "pure", "py"):
    from . import _pykernel as _impl
elif _forced in ("c", "compiled", "speedups"):
    from . import _speedups as _impl  # ImportError here is intentional: user asked for it
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernel as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND
mul_terms = _impl.mul_terms
fma_terms = _impl.fma_terms
divexact_terms = _impl.divexact_terms
