# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction core over F_p.

Entries are int64 residues in [0, p).  The elimination keeps rows unreduced
between pivot steps (every update adds a product of two reduced residues, so
values stay below pivots*p^2, well inside int64 for the primes this package
accepts) and reduces lazily: a residue is taken mod p only when it is inspected
for pivoting, used as a multiplier, or written out.
"""

import numpy as np


cdef long long _modinv(long long x, long long p):
    # Fermat inverse; p is prime and x is nonzero mod p.
    cdef long long r = 1
    cdef long long b = x % p
    cdef long long e = p - 2
    while e:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def rref(long long[:, ::1] a, long long p, bint full=True):
    """Reduce `a` in place; return (rank, pivot column list).

    full=True produces the reduced row echelon form (unique); full=False stops
    after the downward sweep, which is enough for rank.  Pivoting is
    first-nonzero in row order, so the result is deterministic.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = a.shape[1]
    cdef Py_ssize_t cur = 0, col, r, j, piv
    cdef long long v, inv, g, f
    pivots = []
    for col in range(m):
        if cur == n:
            break
        piv = -1
        for r in range(cur, n):
            v = a[r, col] % p
            a[r, col] = v
            if v != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != cur:
            # rows at or below `cur` are zero left of `col`, so a partial swap
            # is enough
            for j in range(col, m):
                v = a[piv, j]
                a[piv, j] = a[cur, j]
                a[cur, j] = v
        inv = _modinv(a[cur, col], p)
        for j in range(col, m):
            a[cur, j] = (a[cur, j] % p) * inv % p
        for r in range(cur + 1, n):
            f = a[r, col] % p
            a[r, col] = 0
            if f == 0:
                continue
            g = p - f
            for j in range(col + 1, m):
                a[r, j] += g * a[cur, j]
        if full:
            for r in range(cur):
                f = a[r, col] % p
                a[r, col] = 0
                if f == 0:
                    continue
                g = p - f
                for j in range(col + 1, m):
                    a[r, j] += g * a[cur, j]
        pivots.append(col)
        cur += 1
    if full:
        for r in range(cur):
            for j in range(m):
                a[r, j] = a[r, j] % p
    return cur, pivots
