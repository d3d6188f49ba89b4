"""The compiled elimination core and the pure numpy fallback must agree
bit for bit, since canonical reduced echelon forms feed serialization and
reproducible reports."""

import os
import subprocess
import sys

import numpy as np
import pytest

from steinerlab import backend
from steinerlab import _gfcore_py

try:
    from steinerlab import _gfcore
except ImportError:
    _gfcore = None

P = 32003


def _both(M, p, full):
    a1 = np.array(M, dtype=np.int64, order="C")
    r1, piv1 = _gfcore_py.rref(a1, p, full)
    a2 = np.array(M, dtype=np.int64, order="C")
    r2, piv2 = _gfcore.rref(a2, p, full)
    return (a1, r1, list(piv1)), (a2, r2, list(piv2))


@pytest.mark.skipif(_gfcore is None, reason="compiled core not built")
def test_backends_agree_random(rng):
    shapes = [(1, 1), (7, 7), (13, 5), (5, 13), (40, 40)]
    for n, m in shapes:
        for trial in range(6):
            r = int(rng.integers(0, min(n, m) + 1))
            L = rng.integers(0, P, size=(n, r))
            R = rng.integers(0, P, size=(r, m))
            M = (L.astype(object) @ R.astype(object)) % P
            M = M.astype(np.int64)
            for full in (False, True):
                (A1, r1, p1), (A2, r2, p2) = _both(M, P, full)
                assert r1 == r2 <= r
                assert p1 == p2
                if full:
                    assert np.array_equal(A1[:r1], A2[:r2])


@pytest.mark.skipif(_gfcore is None, reason="compiled core not built")
def test_backends_agree_panel_boundaries(rng):
    # the fallback eliminates in 128-column panels; straddle the seams
    for n, m in [(129, 127), (127, 129), (130, 260), (260, 130), (256, 256)]:
        M = rng.integers(0, P, size=(n, m)).astype(np.int64)
        M[n // 2] = (M[0] + M[1]) % P
        M[:, m // 2] = (M[:, 0] + 2 * M[:, 1]) % P
        (A1, r1, p1), (A2, r2, p2) = _both(M, P, True)
        assert (r1, p1) == (r2, p2)
        assert np.array_equal(A1[:r1], A2[:r2])


@pytest.mark.skipif(_gfcore is None, reason="compiled core not built")
def test_backends_agree_small_prime(rng):
    M = rng.integers(0, 5, size=(31, 47)).astype(np.int64)
    (A1, r1, p1), (A2, r2, p2) = _both(M, 5, True)
    assert (r1, p1) == (r2, p2)
    assert np.array_equal(A1[:r1], A2[:r2])


def test_backend_name_reported():
    assert backend.backend_name() in ("c", "python")


def test_env_override_selects_python():
    code = (
        "from steinerlab import backend; print(backend.backend_name())"
    )
    env = dict(os.environ, STEINERLAB_BACKEND="py")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "python"


def test_capacity_guard():
    # accumulated values during elimination grow like (pivots + margin) * p^2
    # and must stay below the active backend's word budget
    big_p = 1048573
    n = backend._LIMIT // (big_p * big_p) + 200
    with pytest.raises(ValueError):
        backend._check_capacity(n, n, big_p)
    backend._check_capacity(4000, 4000, 32003)


def test_nullspace_canonical(rng):
    M = rng.integers(0, P, size=(6, 10)).astype(np.int64)
    M[5] = (M[0] + M[1]) % P
    B = backend.nullspace(M, P)
    assert B.shape == (10, 10 - backend.rank(M, P))
    assert not np.mod(M.astype(object) @ B.astype(object), P).astype(int).any()
    _, _, pivots = backend.rref(M, P)
    free = [j for j in range(10) if j not in set(pivots)]
    for idx, fc in enumerate(free):
        assert B[fc, idx] == 1
