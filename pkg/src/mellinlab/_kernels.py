"""Kernel backend selection: compiled extension if present, NumPy otherwise."""

try:
    from . import _fabius_core as _impl
    BACKEND = "compiled"
except ImportError:  # extension not built; fallback is semantically identical
    from . import _fabius_fallback as _impl
    BACKEND = "numpy"

theta_eval = _impl.theta_eval
fext_eval = _impl.fext_eval
