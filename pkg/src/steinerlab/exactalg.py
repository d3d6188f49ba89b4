"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays holding residues in [0, p); rows × cols shape,
row-major.  Every rank, kernel and cokernel in the package reduces to the
routines here, which in turn dispatch to the selected elimination backend.

The field is a single configurable prime, default 32003.  Genericity
statements checked by sampling hold over F_p up to failure probability
O(dim/p), and exact arithmetic keeps every reported rank a theorem about the
sampled instance rather than a numerical estimate.
"""

from __future__ import annotations

import numpy as np

from . import backend

DEFAULT_PRIME = 32003

# elimination backends accumulate sums of products of residues; this cap keeps
# them exact (see backend._check_capacity)
MAX_PRIME = 1 << 20


def validate_prime(p):
    """Check that p is usable as the field characteristic.

    Requires a prime with 3 < p < 2**20.  The lower bound avoids degenerate
    small characteristic (divisions by 2 and 3 occur in Euler characteristic
    bookkeeping and genericity needs room); the upper bound is the exactness
    cap of the elimination backends.
    """
    p = int(p)
    if p <= 3:
        raise ValueError(f"prime must exceed 3, got {p}")
    if p >= MAX_PRIME:
        raise ValueError(f"prime must be below 2**20, got {p}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is not prime (divisible by {d})")
        d += 1
    return p


def as_matrix(rows, p=DEFAULT_PRIME):
    """Normalize nested-list or array input to an int64 residue matrix."""
    M = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    return np.mod(M, p)


def rank(M, p=DEFAULT_PRIME):
    M = np.asarray(M, dtype=np.int64)
    return backend.rank(M, p)


def rref(M, p=DEFAULT_PRIME):
    """Reduced row echelon form: returns (R, rank, pivot columns)."""
    M = np.asarray(M, dtype=np.int64)
    return backend.rref(M, p)


def kernel_basis(M, p=DEFAULT_PRIME):
    """Basis of {v : M v = 0}, as a list of 1-D int64 vectors.

    The basis is canonical (read off the reduced echelon form), so repeated
    calls and both backends give identical vectors.
    """
    M = np.asarray(M, dtype=np.int64)
    ns = backend.nullspace(M, p)
    return [ns[:, j].copy() for j in range(ns.shape[1])]


def cokernel_dim(M, p=DEFAULT_PRIME):
    M = np.asarray(M, dtype=np.int64)
    return M.shape[0] - backend.rank(M, p)


def corank(M, p=DEFAULT_PRIME):
    """min(dim kernel, dim cokernel)."""
    M = np.asarray(M, dtype=np.int64)
    r = backend.rank(M, p)
    return min(M.shape[1] - r, M.shape[0] - r)


def matmul_mod(A, B, p=DEFAULT_PRIME):
    return backend.matmul_mod(A, B, p)


def inv_matrix(M, p=DEFAULT_PRIME):
    """Inverse of a square matrix mod p, via elimination on [M | I]."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inv_matrix needs a square matrix")
    aug = np.hstack([np.mod(M, p), np.eye(n, dtype=np.int64)])
    R, _, pivots = rref(aug, p)
    # [M | I] always has full row rank; M is invertible exactly when all n
    # pivots sit in the left block
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return R[:, n:].copy()


def random_matrix(rng, rows, cols, p=DEFAULT_PRIME):
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


# ---------------------------------------------------------------------------
# plain-text interchange
#
# First line "rows cols p", then one line of space-separated residues per row.


def write_matrix(fh, M, p=DEFAULT_PRIME):
    M = as_matrix(M, p)
    fh.write(f"{M.shape[0]} {M.shape[1]} {p}\n")
    for row in M:
        fh.write(" ".join(str(int(v)) for v in row) + "\n")


def read_matrix(fh):
    """Read one matrix block; returns (matrix, p)."""
    header = fh.readline().split()
    if len(header) != 3:
        raise ValueError(f"bad matrix header: {header!r}")
    n, m, p = (int(x) for x in header)
    rows = []
    for _ in range(n):
        vals = fh.readline().split()
        if len(vals) != m:
            raise ValueError(f"expected {m} entries per row, got {len(vals)}")
        rows.append([int(v) for v in vals])
    M = np.array(rows, dtype=np.int64).reshape(n, m)
    return np.mod(M, p), p
