"""Kernel backend selection.

Hot enumeration loops (codeword weight scans, column-span checks) have two
implementations: a numba ``@njit`` version and a pure-numpy fallback.  The
fallback is selected by setting the environment variable ``COOPLRC_NO_NUMBA``
to a non-empty value, or automatically when numba is not importable.  Both
backends produce identical results; ``benchmarks/bench_kernels.py`` compares
their throughput.
"""

from __future__ import annotations

import os

_DISABLED = bool(os.environ.get("COOPLRC_NO_NUMBA"))

if not _DISABLED:
    try:
        import numba

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """Apply ``numba.njit`` when the numba backend is active, else no-op."""
    if USE_NUMBA:
        import numba

        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def wrap(fn):
        return fn

    return wrap


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
