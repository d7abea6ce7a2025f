"""Chord-integration kernel with backend selection at import time.

Prefers the compiled Cython extension; falls back to the pure-numpy
implementation when the extension is unavailable or when the environment
variable ``TENTOMO_DISABLE_EXT`` is set (useful for benchmarking and for
debugging the two implementations against each other).
"""
from __future__ import annotations

import os

from . import _fallback

if os.environ.get("TENTOMO_DISABLE_EXT"):
    _impl = _fallback
    BACKEND = "numpy"
else:
    try:
        from . import _chords as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "numpy"

chord_integrals = _impl.chord_integrals
numpy_chord_integrals = _fallback.chord_integrals


def backend() -> str:
    """Name of the selected backend: 'cython' or 'numpy'."""
    return BACKEND
