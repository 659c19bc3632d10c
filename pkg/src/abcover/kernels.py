"""Kernel dispatch: compiled extension when importable, else pure Python."""

try:
    from ._ckernels import forest_scan, jacobi_eigvalsh
    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    from ._pykernels import forest_scan, jacobi_eigvalsh
    BACKEND = "python"

__all__ = ["BACKEND", "forest_scan", "jacobi_eigvalsh"]
