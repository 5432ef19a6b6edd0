"""Stack-product kernels: compiled extension when available, numpy fallback.

Set PTSCATTER_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by the kernel-equivalence tests).
"""
import os

from . import _stack_py

if os.environ.get("PTSCATTER_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _stack_py
    USING_COMPILED = False
else:
    try:
        from . import _stack as _impl  # type: ignore[no-redef]

        USING_COMPILED = True
    except ImportError:
        _impl = _stack_py
        USING_COMPILED = False

stack_transfer = _impl.stack_transfer
stack_transfer_py = _stack_py.stack_transfer

__all__ = ["stack_transfer", "stack_transfer_py", "USING_COMPILED"]
