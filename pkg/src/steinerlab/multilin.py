"""Monomial bases of symmetric powers of a 4-dimensional space, the
multiplication indexing S^dV x V -> S^{d+1}V, and hyperplane frames.

All matrix indexings in the package rely on one global convention:

* monomials of degree d are ordered graded-lexicographically, descending,
  so (d,0,0,0) comes first and (0,0,0,d) last; the basis has C(d+3,3)
  elements;
* a tensor-product space A (x) S^dV is indexed by
  (index in A) * dim S^dV + (monomial index).

A hyperplane H of V is carried by a nonzero covector h together with an
invertible change of basis P whose first three columns span ker h.  In the
new coordinates H is {x4 = 0} and the 9-dimensional product space H.V inside
S^2V is spanned by all degree-2 monomials except x4^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import exactalg


def dim_sym(d):
    """dim S^dV for dim V = 4."""
    if d < 0:
        return 0
    return comb(d + 3, 3)


@lru_cache(maxsize=None)
def mono_basis(d):
    """All exponent 4-tuples of total degree d, graded-lex descending."""
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    out = []
    for e1 in range(d, -1, -1):
        for e2 in range(d - e1, -1, -1):
            for e3 in range(d - e1 - e2, -1, -1):
                out.append((e1, e2, e3, d - e1 - e2 - e3))
    assert len(out) == dim_sym(d)
    return tuple(out)


@lru_cache(maxsize=None)
def _mono_pos(d):
    return {m: i for i, m in enumerate(mono_basis(d))}


def mono_index(mono):
    """Index of an exponent tuple within its degree's basis."""
    d = sum(mono)
    return _mono_pos(d)[tuple(mono)]


def mult_index(mono, k):
    """Index of mono * x_k (k in 1..4) in the next degree's basis."""
    if not 1 <= k <= 4:
        raise ValueError(f"variable index must be in 1..4, got {k}")
    e = list(mono)
    e[k - 1] += 1
    return _mono_pos(sum(e))[tuple(e)]


def pair_index(p, q):
    """Index of x_p x_q (1-based p, q) in the degree-2 basis."""
    e = [0, 0, 0, 0]
    e[p - 1] += 1
    e[q - 1] += 1
    return _mono_pos(2)[tuple(e)]


# x4^2 is the one degree-2 monomial outside H.V in the normalized frame; all
# nine others, in basis order, index the coordinates of A (x) H.V
HV_MONO_INDICES = tuple(i for i in range(10) if mono_basis(2)[i] != (0, 0, 0, 2))


@dataclass(frozen=True)
class HyperplaneFrame:
    """A hyperplane H = ker h of V with a basis adapted to it.

    P's columns are v1, v2, v3, v4 with v1..v3 spanning H; coordinates in the
    v-basis make H the locus {x4 = 0}.  Pinv converts standard coordinates to
    frame coordinates.
    """

    h: tuple
    P: np.ndarray
    Pinv: np.ndarray
    prime: int

    @classmethod
    def from_covector(cls, h, p=exactalg.DEFAULT_PRIME):
        hvec = np.mod(np.asarray(h, dtype=np.int64).reshape(4), p)
        if not hvec.any():
            raise ValueError("hyperplane covector must be nonzero")
        kb = exactalg.kernel_basis(hvec.reshape(1, 4), p)
        assert len(kb) == 3
        j = int(np.nonzero(hvec)[0][0])
        P = np.zeros((4, 4), dtype=np.int64)
        for i, v in enumerate(kb):
            P[:, i] = v
        P[j, 3] = 1
        Pinv = exactalg.inv_matrix(P, p)
        return cls(tuple(int(x) for x in hvec), P, Pinv, p)

    def hv_basis(self):
        """9x10 matrix over F_p: rows express v_a v_b (all degree-2 pairs of
        frame vectors except v4^2, in basis order) in standard degree-2
        monomial coordinates."""
        p = self.prime
        P = self.P
        out = np.zeros((9, 10), dtype=np.int64)
        pairs = []
        for i in range(10):
            mono = mono_basis(2)[i]
            if mono == (0, 0, 0, 2):
                continue
            nz = [k + 1 for k, e in enumerate(mono) for _ in range(e)]
            pairs.append(tuple(nz))  # (a, b) with a <= b, frame indices
        for row, (va, vb) in enumerate(pairs):
            for k in range(1, 5):
                for l in range(1, 5):
                    c = int(P[k - 1, va - 1]) * int(P[l - 1, vb - 1])
                    if c:
                        idx = pair_index(k, l)
                        out[row, idx] = (out[row, idx] + c) % p
        return out


def random_frame(rng, p=exactalg.DEFAULT_PRIME):
    while True:
        h = rng.integers(0, p, size=4, dtype=np.int64)
        if h.any():
            return HyperplaneFrame.from_covector(h, p)


def frame_x4():
    """The standard frame H = {x4 = 0} (identity change of basis)."""
    return HyperplaneFrame.from_covector((0, 0, 0, 1))


def transform_presentation(Ms, frame):
    """Rewrite the four coefficient matrices of m in frame coordinates.

    If m(e_i) = sum_k M_k[j,i] alpha_j (x) x_k then in the v-basis the
    coefficient of v_l is M'_l = sum_k Pinv[l,k] M_k.
    """
    p = frame.prime
    out = []
    for l in range(4):
        acc = np.zeros_like(np.asarray(Ms[0], dtype=np.int64))
        for k in range(4):
            c = int(frame.Pinv[l, k])
            if c:
                acc = acc + c * np.asarray(Ms[k], dtype=np.int64)
        out.append(np.mod(acc, p))
    return out


def untransform_presentation(Ms, frame):
    """Inverse of transform_presentation: from frame coefficients back to
    standard coordinates, M_k = sum_l P[k,l] M'_l."""
    p = frame.prime
    out = []
    for k in range(4):
        acc = np.zeros_like(np.asarray(Ms[0], dtype=np.int64))
        for l in range(4):
            c = int(frame.P[k, l])
            if c:
                acc = acc + c * np.asarray(Ms[l], dtype=np.int64)
        out.append(np.mod(acc, p))
    return out


def transform_fform_tensor(t, frame):
    """Rewrite a coefficient tensor t[s,j,p,q] in frame coordinates:
    t'[s,j,p,q] = sum_{k,l} P[k,p] P[l,q] t[s,j,k,l]."""
    p = frame.prime
    t = np.asarray(t, dtype=np.int64)
    out = np.einsum("kp,lq,sjkl->sjpq", frame.P, frame.P, t)
    return np.mod(out, p)
