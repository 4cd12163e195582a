"""Search-kernel backend selection.

The compiled extension is preferred when importable; otherwise the pure
Python twin takes over with identical semantics (same algorithms, same
tie-breaking, same RNG), just slower.  ``active`` is the module in use;
``backend_name()`` reports which one won.  Both modules are importable
directly for benchmarks and cross-checks.
"""

from __future__ import annotations

from . import pure

try:  # pragma: no cover - exercised implicitly by every import
    from . import _core as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

active = _compiled if _compiled is not None else pure

FOUND = pure.FOUND
EXHAUSTED = pure.EXHAUSTED
BUDGET = pure.BUDGET
ABORTED = pure.ABORTED
MODE_DECIDE = pure.MODE_DECIDE
MODE_COUNT = pure.MODE_COUNT
MODE_CHECK_PAIR = pure.MODE_CHECK_PAIR
MODE_VISIT = pure.MODE_VISIT


def backend_name() -> str:
    return active.BACKEND


def backends() -> list:
    """All importable kernel backends (for benchmarks and equivalence
    tests)."""
    mods = [pure]
    if _compiled is not None:
        mods.append(_compiled)
    return mods
