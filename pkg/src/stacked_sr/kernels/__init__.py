"""Bitmask kernels behind the simplicial and ideal operations.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``STACKED_SR_PURE_PYTHON`` is set to a non-empty
value other than ``0``, the pure-Python module is used. ``BACKEND`` names
the active one.
"""

import os

from stacked_sr.kernels import _pykernels

_force_py = os.environ.get("STACKED_SR_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from stacked_sr.kernels import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

popcount = _pykernels.popcount
maximal_sets = _impl.maximal_sets
minimal_sets = _impl.minimal_sets
minimal_transversals = _impl.minimal_transversals
all_faces = _impl.all_faces
face_counts = _impl.face_counts
is_face = _impl.is_face
every_facet_meets = _impl.every_facet_meets
cuts_squarefree = _impl.cuts_squarefree
forest_criterion = _impl.forest_criterion


def implementations():
    """Both kernel modules that are importable, keyed by name."""
    out = {"python": _pykernels}
    try:
        from stacked_sr.kernels import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
