"""Kernel backend selection.

Uses the compiled ``inftur._core`` when importable, otherwise the numpy
versions in ``inftur._fallback``. Set ``INFTUR_PURE_PYTHON=1`` to force the
fallback.
"""
import os

from . import _fallback

BACKEND = "python"
_impl = _fallback
if not os.environ.get("INFTUR_PURE_PYTHON"):
    try:
        from . import _core as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback

max_codegree = _impl.max_codegree
codegree_block = _impl.codegree_block
jacobi_eigenvalues = _impl.jacobi_eigenvalues
max_violation = _impl.max_violation
project_run = _impl.project_run


def backend_module(name: str):
    """Return the kernel module for ``"cython"`` or ``"python"`` (for benchmarks and tests)."""
    if name == "python":
        return _fallback
    from . import _core
    return _core
