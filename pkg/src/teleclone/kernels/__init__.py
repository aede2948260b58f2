"""Statevector kernel backend selection.

The compiled Cython kernels are preferred; the pure-numpy implementation is a
drop-in replacement picked up automatically when the extension is missing.
Set TELECLONE_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the kernel equivalence tests).
"""
import os

if os.environ.get("TELECLONE_PURE_PYTHON"):
    from . import _statevec_py as backend
    BACKEND = "python"
else:
    try:
        from . import _statevec as backend  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _statevec_py as backend
        BACKEND = "python"

apply_ry = backend.apply_ry
apply_rz = backend.apply_rz
apply_h = backend.apply_h
apply_x = backend.apply_x
apply_y = backend.apply_y
apply_z = backend.apply_z
apply_cnot = backend.apply_cnot
prob_one = backend.prob_one
collapse = backend.collapse
reduced_1q = backend.reduced_1q
norm_sq = backend.norm_sq

__all__ = [
    "BACKEND", "backend",
    "apply_ry", "apply_rz", "apply_h", "apply_x", "apply_y", "apply_z",
    "apply_cnot", "prob_one", "collapse", "reduced_1q", "norm_sq",
]
