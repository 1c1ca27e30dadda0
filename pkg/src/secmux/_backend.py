"""Sweep backend selection: compiled extension when built, numpy otherwise."""

from __future__ import annotations

from . import _sweep_numpy

try:
    from . import _sweep_kernel as _kernel

    ACTIVE = _kernel
    BACKEND_NAME = _kernel.BACKEND_NAME
except ImportError:  # extension not built; stay with the numpy fallback
    ACTIVE = _sweep_numpy
    BACKEND_NAME = _sweep_numpy.BACKEND_NAME

NUMPY = _sweep_numpy


def emit_candidates(*args, backend=None, **kwargs):
    impl = backend if backend is not None else ACTIVE
    return impl.emit_candidates(*args, **kwargs)
