"""Numeric kernel backend selection.

The compiled extension is preferred when importable; the pure NumPy fallback
is used otherwise.  Set ``HAPSLINK_PURE_KERNELS=1`` to force the fallback
(used by the backend-equivalence tests and the benchmark).
"""
import os

from . import _pure

if os.environ.get("HAPSLINK_PURE_KERNELS"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _ext as _impl  # type: ignore[attr-defined]

        BACKEND = "ext"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

uniform_block = _impl.uniform_block
besselk_scaled = _impl.besselk_scaled
besselk_scaled_vec = _impl.besselk_scaled_vec
hyp1f1_finite = _impl.hyp1f1_finite


def get_backend(name: str):
    """Return a specific backend module ("pure" or "ext"), for comparisons."""
    if name == "pure":
        return _pure
    if name == "ext":
        from . import _ext  # raises ImportError if unavailable

        return _ext
    raise ValueError(f"unknown backend {name!r}")
