"""Presentations m: B -> A(x)V by four scalar matrices, their degree-d
multiplication maps m(d): B(x)S^dV -> A(x)S^{d+1}V, and cohomology tables of
the kernel bundle E_m on projective 3-space.

The exact sequence 0 -> E_m -> B(x)O -> A(x)O(1) -> 0 turns sheaf cohomology
into graded linear algebra: for twists k >= 0, h0(E_m(k)) is the kernel
dimension of m(k) and h1 its cokernel dimension, h2 vanishes, and h3 closes
the Euler characteristic.  Local freeness of E_m is certified by finite-degree
surjectivity, which propagates upward in degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactalg
from .multilin import dim_sym, mono_basis, mult_index


class NotLocallyFree(Exception):
    """No surjectivity certificate within the degree cap; the cokernel sheaf
    may have positive-dimensional support and the table would be meaningless.

    Carries the list of (degree, cokernel_dim) pairs actually checked.
    """

    def __init__(self, checked):
        self.checked = list(checked)
        detail = ", ".join(f"d={d}: coker {c}" for d, c in self.checked)
        super().__init__(f"no surjective m(d) found ({detail})")


@dataclass(frozen=True)
class SteinerPresentation:
    a: int
    b: int
    Ms: tuple  # four a x b int64 arrays, coefficient of x_k
    prime: int = exactalg.DEFAULT_PRIME

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("dimensions a, b must be positive")
        if len(self.Ms) != 4:
            raise ValueError("need exactly four coefficient matrices")
        for M in self.Ms:
            if M.shape != (self.a, self.b):
                raise ValueError("coefficient matrices must all be a x b")

    @classmethod
    def from_matrices(cls, Ms, p=exactalg.DEFAULT_PRIME):
        mats = tuple(exactalg.as_matrix(M, p) for M in Ms)
        return cls(mats[0].shape[0], mats[0].shape[1], mats, p)

    @classmethod
    def random(cls, rng, a, b, p=exactalg.DEFAULT_PRIME):
        Ms = tuple(exactalg.random_matrix(rng, a, b, p) for _ in range(4))
        return cls(a, b, Ms, p)

    @classmethod
    def from_columns(cls, cols, a, p=exactalg.DEFAULT_PRIME):
        """Build from b column vectors in A(x)V coordinates
        (index j*4 + (k-1)); accepts a sequence of vectors or a 4a x b
        matrix as produced by columns()."""
        if isinstance(cols, np.ndarray) and cols.ndim == 2:
            cols = [cols[:, i] for i in range(cols.shape[1])]
        cols = [np.asarray(c, dtype=np.int64) % p for c in cols]
        b = len(cols)
        Ms = [np.zeros((a, b), dtype=np.int64) for _ in range(4)]
        for i, w in enumerate(cols):
            if w.shape != (4 * a,):
                raise ValueError("column vectors must live in A(x)V")
            for k in range(4):
                Ms[k][:, i] = w[k::4]
        return cls(a, b, tuple(Ms), p)

    def columns(self):
        """The b columns of m as vectors in A(x)V coordinates."""
        out = np.zeros((4 * self.a, self.b), dtype=np.int64)
        for k in range(4):
            out[k::4, :] = self.Ms[k]
        return out

    def transpose(self):
        """The presentation with matrices M_k^T and the roles of A, B
        swapped (used for the Serre-dual route)."""
        Ms = tuple(np.ascontiguousarray(M.T) for M in self.Ms)
        return SteinerPresentation(self.b, self.a, Ms, self.prime)


def assemble_md(m, d):
    """Matrix of m(d), shape a*C(d+4,3) x b*C(d+3,3).

    Column (i, mu) carries M_k[:, i] scattered to rows (j, mu*x_k); the row
    block layout is (index in A) * dim S^{d+1}V + monomial index.
    """
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    a, b = m.a, m.b
    D0, D1 = dim_sym(d), dim_sym(d + 1)
    out = np.zeros((a * D1, b * D0), dtype=np.int64)
    for mi, mono in enumerate(mono_basis(d)):
        for k in range(1, 5):
            tgt = mult_index(mono, k)
            out[tgt::D1, mi::D0] += m.Ms[k - 1]
    return out


def rank_md(m, d):
    return exactalg.rank(assemble_md(m, d), m.prime)


def corank_md(m, d):
    """min(kernel, cokernel) dimension of m(d)."""
    return exactalg.corank(assemble_md(m, d), m.prime)


def cokernel_dim_md(m, d):
    return exactalg.cokernel_dim(assemble_md(m, d), m.prime)


@dataclass(frozen=True)
class SurjectivityCertificate:
    d0: int | None  # smallest checked degree with m(d0) surjective
    checked: tuple = field(default_factory=tuple)  # (d, cokernel_dim) pairs

    @property
    def found(self):
        return self.d0 is not None


def surjectivity_certificate(m, d_max=5):
    """Search d = 1..d_max for surjective m(d).

    Surjectivity propagates upward (the image of m(d+1) contains
    image(m(d)).V), so the first hit certifies all larger degrees and the
    local freeness of E_m.
    """
    if d_max < 1:
        raise ValueError(f"d_max must be at least 1, got {d_max}")
    checked = []
    for d in range(1, d_max + 1):
        c = cokernel_dim_md(m, d)
        checked.append((d, c))
        if c == 0:
            return SurjectivityCertificate(d, tuple(checked))
    return SurjectivityCertificate(None, tuple(checked))


def chi3(t):
    """chi of O_{P^3}(t): (t+1)(t+2)(t+3)/6, exact for any integer t."""
    num = (t + 1) * (t + 2) * (t + 3)
    assert num % 6 == 0
    return num // 6


def euler_char(a, b, k):
    """chi(E_m(k)) = b*chi3(k) - a*chi3(k+1)."""
    return b * chi3(k) - a * chi3(k + 1)


@dataclass(frozen=True)
class CohomologyTable:
    a: int
    b: int
    k_min: int
    k_max: int
    rows: tuple  # (k, h0, h1, h2, h3, chi)

    def row(self, k):
        if not self.k_min <= k <= self.k_max:
            raise KeyError(f"twist {k} outside [{self.k_min}, {self.k_max}]")
        return self.rows[k - self.k_min]

    def as_dicts(self):
        return [
            {"k": k, "h0": h0, "h1": h1, "h2": h2, "h3": h3, "chi": chi}
            for (k, h0, h1, h2, h3, chi) in self.rows
        ]


def cohomology_table(m, k_min=-6, k_max=4, d_max=5):
    """Cohomology of E_m(k) for k in [k_min, k_max].

    Raises NotLocallyFree when no surjectivity certificate exists up to
    d_max.  For k at or above the certified degree the rank of m(k) is known
    without assembling it.
    """
    cert = surjectivity_certificate(m, d_max)
    if not cert.found:
        raise NotLocallyFree(cert.checked)
    a, b, p = m.a, m.b, m.prime
    rows = []
    for k in range(k_min, k_max + 1):
        chi = euler_char(a, b, k)
        if k >= 0:
            ncols = b * dim_sym(k)
            nrows = a * dim_sym(k + 1)
            if k >= cert.d0:
                r = nrows  # surjective by propagation
            else:
                r = exactalg.rank(assemble_md(m, k), p)
            h0 = ncols - r
            h1 = nrows - r
        else:
            h0 = 0
            h1 = a * dim_sym(k + 1) if k >= -4 else 0
        h2 = 0
        h3 = h0 - h1 + h2 - chi
        assert h3 >= 0
        rows.append((k, h0, h1, h2, h3, chi))
    return CohomologyTable(a, b, k_min, k_max, tuple(rows))


def dual_h0(m, j):
    """h0 of the Serre-dual bundle twisted by j, via the transposed
    presentation t with matrices M_k^T:

        b*C(j+3,3) - a*C(j+2,3) + dim ker t(j-1).
    """
    if j < 0:
        raise ValueError(f"twist must be nonnegative, got {j}")
    a, b, p = m.a, m.b, m.prime
    base = b * dim_sym(j) - a * dim_sym(j - 1)
    if j == 0:
        return base
    t = m.transpose()
    td = assemble_md(t, j - 1)
    kdim = td.shape[1] - exactalg.rank(td, p)
    return base + kdim


# ---------------------------------------------------------------------------
# interchange


def write_presentation(fh, m):
    fh.write(f"steiner {m.a} {m.b} {m.prime}\n")
    for M in m.Ms:
        exactalg.write_matrix(fh, M, m.prime)


def read_presentation(fh):
    header = fh.readline().split()
    if len(header) != 4 or header[0] != "steiner":
        raise ValueError(f"bad presentation header: {header!r}")
    a, b, p = (int(x) for x in header[1:])
    Ms = []
    for _ in range(4):
        M, mp = exactalg.read_matrix(fh)
        if mp != p or M.shape != (a, b):
            raise ValueError("presentation block does not match header")
        Ms.append(M)
    return SteinerPresentation(a, b, tuple(Ms), p)
