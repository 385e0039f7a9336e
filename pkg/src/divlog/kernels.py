"""Backend selection for the lattice-point kernels.

The compiled module ``divlog._ckernels`` is used when it was built and the
inputs fit in machine integers; otherwise the pure-Python implementation in
``divlog._pykernels`` runs.  Set ``DIVLOG_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os

from divlog import _pykernels

try:
    if os.environ.get("DIVLOG_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from divlog import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

# products of two such values, summed over a handful of coordinates, stay
# far below 2**63
_SAFE = 1 << 28


def _small(*values) -> bool:
    stack = list(values)
    while stack:
        v = stack.pop()
        if isinstance(v, int):
            if abs(v) >= _SAFE:
                return False
        else:
            stack.extend(v)
    return True


def _impl(use_compiled: bool | None, *args):
    if use_compiled is False or _ckernels is None:
        return _pykernels
    if use_compiled or _small(*args):
        return _ckernels
    return _pykernels


def cone_points(normals, grading, bound, lower, upper, *, compiled=None):
    mod = _impl(compiled, normals, grading, bound, lower, upper)
    return mod.cone_points(normals, grading, bound, lower, upper)


def irreducibles(points, normals, *, compiled=None):
    mod = _impl(compiled, points, normals)
    return mod.irreducibles(points, normals)


def find_combination(target, gens, degrees, target_degree, free_rank, torsion, *,
                     compiled=None):
    mod = _impl(compiled, target, gens, degrees, target_degree, torsion)
    return mod.find_combination(target, gens, degrees, target_degree, free_rank,
                                tuple(torsion))
