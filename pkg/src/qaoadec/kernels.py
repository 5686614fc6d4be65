"""Statevector kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used. Set QAOADEC_PURE_PYTHON=1 to force the fallback (used by
the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("QAOADEC_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

apply_phase = _impl.apply_phase
apply_mixer = _impl.apply_mixer
expectation = _impl.expectation
run_layers = _impl.run_layers


def backend_name() -> str:
    return BACKEND
