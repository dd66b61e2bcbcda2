"""Kernel backend selection.

The compiled extension ``torsionlab._core`` is used when available;
otherwise the pure-Python twin ``torsionlab._core_py`` takes over.  Set
``TORSIONLAB_PURE=1`` to force the fallback (used by the benchmark and
for debugging).
"""

import os

from . import _core_py

if os.environ.get("TORSIONLAB_PURE"):
    _impl = _core_py
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _core_py

BACKEND = _impl.BACKEND_NAME

bits_of = _core_py.bits_of
sum_with_orbit = _core_py.sum_with_orbit  # only used on ring-sized inputs
span_closure = _impl.span_closure
enumerate_submodules = _impl.enumerate_submodules
closure_tables = _impl.closure_tables
modularity_witness = _impl.modularity_witness
assoc_witness = _impl.assoc_witness
module_axiom_witness = _impl.module_axiom_witness
delta_cond1_witness = _impl.delta_cond1_witness
delta_cond2_witness = _impl.delta_cond2_witness


def backend():
    """Name of the active kernel backend."""
    return BACKEND
