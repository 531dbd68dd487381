"""Backend selection for the recurrent-predictor kernels.

The compiled extension is preferred when it imported cleanly; the
pure-numpy reference implementation is the fallback and the ground truth.
Set ``MINDTYPE_FORCE_REFERENCE=1`` to skip the extension entirely.
"""

from __future__ import annotations

import os

from . import _reference

if os.environ.get("MINDTYPE_FORCE_REFERENCE") == "1":
    _impl = _reference
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _reference

BACKEND_NAME: str = _impl.BACKEND_NAME
softmax = _impl.softmax
forward_sequence = _impl.forward_sequence
sequence_gradients = _impl.sequence_gradients


def available_backends() -> dict[str, object]:
    """Every importable backend module, keyed by name."""
    out: dict[str, object] = {_reference.BACKEND_NAME: _reference}
    try:
        from . import _native

        out[_native.BACKEND_NAME] = _native
    except ImportError:
        pass
    return out
