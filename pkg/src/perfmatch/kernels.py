"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
module with identical semantics is loaded.  :func:`use_backend` switches at
runtime so the two can be benchmarked against each other.
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _BACKENDS.get("compiled", _pykernels)


def available_backends():
    return sorted(_BACKENDS)


def active_backend():
    return _active.BACKEND


def use_backend(name):
    """Select ``"python"``, ``"compiled"`` or ``"auto"``; returns the previous name."""
    global _active
    prev = _active.BACKEND
    if name == "auto":
        _active = _BACKENDS.get("compiled", _pykernels)
    elif name in _BACKENDS:
        _active = _BACKENDS[name]
    else:
        raise ValueError(f"kernel backend {name!r} unavailable; have {available_backends()}")
    return prev


def pfaffian_mod(n, flat, p):
    return _active.pfaffian_mod(n, flat, p)
