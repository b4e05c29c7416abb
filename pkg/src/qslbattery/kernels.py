"""Per-sample numerical kernels with backend selection at import.

The compiled ``_ckernels`` extension is used when it is importable; the
numpy implementation in ``_pykernels`` is the fallback. Set
``QSLBATTERY_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("QSLBATTERY_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend

BACKEND = _impl.NAME

decoherence = _impl.decoherence
hermitian_eigvals = _impl.hermitian_eigvals
hermitian_norms = _impl.hermitian_norms
fidelity_to = _impl.fidelity_to
affinity_to = _impl.affinity_to
entropy_logs = _impl.entropy_logs
ergotropy_split = _impl.ergotropy_split
cumulative_simpson = _impl.cumulative_simpson
cumulative_trapezoid = _impl.cumulative_trapezoid
