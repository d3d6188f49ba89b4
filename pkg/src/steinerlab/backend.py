"""Backend selection for the F_p elimination core.

The compiled extension (steinerlab._gfcore) is preferred; the numpy fallback
(_gfcore_py) is picked up automatically when the extension is missing.  Set
STEINERLAB_BACKEND=py or =c to force a choice; forcing "c" raises if the
extension was never built.

Both cores share one contract: rref(a, p, full) reduces an int64 C-contiguous
array in place and returns (rank, pivot columns), with first-nonzero pivoting
so the reduced form is identical across backends.
"""

from __future__ import annotations

import os

import numpy as np

_choice = os.environ.get("STEINERLAB_BACKEND", "").strip().lower()

if _choice in ("py", "python"):
    from . import _gfcore_py as _core

    _NAME = "python"
elif _choice in ("c", "cython"):
    from . import _gfcore as _core  # type: ignore[no-redef]

    _NAME = "c"
else:
    try:
        from . import _gfcore as _core  # type: ignore[no-redef]

        _NAME = "c"
    except ImportError:
        from . import _gfcore_py as _core  # type: ignore[no-redef]

        _NAME = "python"

# Accumulated values during elimination stay below (#pivots + panel + 2) * p^2.
# The compiled core works in int64, the fallback in float64.
_LIMIT = 2**62 if _NAME == "c" else 2**53


def backend_name():
    return _NAME


def _check_capacity(n, m, p):
    if (min(n, m) + 130) * p * p >= _LIMIT:
        raise ValueError(
            f"matrix of shape ({n}, {m}) too large for exact elimination "
            f"mod {p} on the {_NAME} backend"
        )


def _prep(a, p):
    arr = np.array(a, dtype=np.int64, order="C", copy=True)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D array")
    np.mod(arr, p, out=arr)
    _check_capacity(arr.shape[0], arr.shape[1], p)
    return arr


def rank(a, p):
    arr = _prep(a, p)
    r, _ = _core.rref(arr, p, False)
    return r


def rref(a, p):
    """Return (R, rank, pivots) with R the reduced row echelon form of a."""
    arr = _prep(a, p)
    r, piv = _core.rref(arr, p, True)
    return arr, r, list(piv)


def nullspace(a, p):
    """Right kernel of a mod p, as columns of an int64 matrix.

    Built from the reduced echelon form, so the basis is canonical: column j
    of the result corresponds to the j-th free column, carries a 1 there, and
    is supported only on pivot and earlier free coordinates.
    """
    a = np.asarray(a, dtype=np.int64)
    m = a.shape[1]
    R, r, pivots = rref(a, p)
    pivset = set(pivots)
    free = [j for j in range(m) if j not in pivset]
    basis = np.zeros((m, len(free)), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[fc, idx] = 1
        for i, pc in enumerate(pivots):
            v = int(R[i, fc])
            if v:
                basis[pc, idx] = p - v
    return basis


def matmul_mod(a, b, p):
    """Exact (a @ b) mod p using float64 BLAS, chunking the inner dimension
    when sums could reach 2**53."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    step = max(1, (2**53 - 1) // (p * p))
    if inner <= step:
        return (np.mod(a.astype(np.float64) @ b.astype(np.float64), p)).astype(
            np.int64
        )
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k0 in range(0, inner, step):
        k1 = min(k0 + step, inner)
        part = a[:, k0:k1].astype(np.float64) @ b[k0:k1, :].astype(np.float64)
        out = (out + part.astype(np.int64)) % p
    return out
