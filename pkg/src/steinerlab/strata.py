"""Jordan-type enumeration, the two reference stratification tables, and the
constructive search for rank-0 covectors.

The 4x4 table classifies pencils through the Jordan form of a 4x4 matrix C:
each row carries the stratum dimension O (orbit dimension plus one parameter
per distinct eigenvalue) and the solution dimension S of the linear system
"CX symmetric in symmetric X".  The 3x4 table does the same for pairs (C0, c)
with C0 a 3x3 matrix and c a 3-vector, where the system reads
"C0 X0 + c x^t symmetric".

Reference columns reproduce a published table; two entries disagree with the
recomputation and are reported with flags instead of being silently adopted
(see the table builders).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from . import exactalg, subspace
from .multilin import HV_MONO_INDICES, pair_index
from .seeding import derive_rng


@dataclass(frozen=True, order=True)
class JordanType:
    """Multiset of partitions, one per distinct eigenvalue; canonical form
    keeps each partition sorted descending and the list of partitions sorted
    descending."""

    partitions: tuple

    def __post_init__(self):
        canon = tuple(
            sorted((tuple(sorted(p, reverse=True)) for p in self.partitions),
                   reverse=True)
        )
        object.__setattr__(self, "partitions", canon)

    @property
    def n(self):
        return sum(sum(p) for p in self.partitions)

    @property
    def num_eigenvalues(self):
        return len(self.partitions)

    @property
    def label(self):
        return "|".join("".join(str(b) for b in p) for p in self.partitions)

    def representative(self, p=exactalg.DEFAULT_PRIME):
        """Block-diagonal matrix with eigenvalues 1, 2, ... and upper
        bidiagonal Jordan blocks."""
        n = self.n
        C = np.zeros((n, n), dtype=np.int64)
        pos = 0
        for eig, part in enumerate(self.partitions, start=1):
            for size in part:
                for i in range(size):
                    C[pos + i, pos + i] = eig % p
                    if i + 1 < size:
                        C[pos + i, pos + i + 1] = 1
                pos += size
        return C


def _partitions_of(n):
    if n == 0:
        return [()]
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, maxpart), 0, -1):
            rec(remaining - part, part, acc + [part])

    rec(n, n, [])
    return out


def enumerate_jordan4():
    """The 14 Jordan types of a 4x4 matrix, in the reference row order:
    ascending centralizer dimension, then descending eigenvalue count, then
    partition order."""
    found = set()
    for sizes in _size_multisets(4):
        pools = [_partitions_of(s) for s in sizes]
        for combo in _multiset_product(pools, sizes):
            found.add(JordanType(combo))
    types = sorted(
        found,
        key=lambda t: (centralizer_dim(t), -t.num_eigenvalues, t.partitions),
    )
    assert len(types) == 14
    return types


def _size_multisets(n):
    """Nonincreasing tuples of positive ints summing to n (eigenvalue space
    size patterns)."""
    return _partitions_of(n)


def _multiset_product(pools, sizes):
    """Multisets picking one partition per pool; pools of equal size must not
    produce ordered duplicates."""
    if not pools:
        yield ()
        return
    # group equal sizes together: choose a multiset from each group
    groups = []
    i = 0
    while i < len(sizes):
        j = i
        while j < len(sizes) and sizes[j] == sizes[i]:
            j += 1
        groups.append((pools[i], j - i))
        i = j
    def rec(gi):
        if gi == len(groups):
            yield ()
            return
        pool, count = groups[gi]
        for pick in combinations_with_replacement(pool, count):
            for rest in rec(gi + 1):
                yield pick + rest
    yield from rec(0)


def centralizer_dim(t):
    """Sum over eigenvalues of sum_{i,j} min(b_i, b_j) over block sizes."""
    total = 0
    for part in t.partitions:
        for bi in part:
            for bj in part:
                total += min(bi, bj)
    return total


def stratum_dim(t):
    """n^2 - centralizer + number of distinct eigenvalues."""
    n = t.n
    return n * n - centralizer_dim(t) + t.num_eigenvalues


# ---------------------------------------------------------------------------
# solution dimensions


_SYM4 = [(i, j) for i in range(4) for j in range(i, 4)]  # 10 coordinates
_SYM3 = [(i, j) for i in range(3) for j in range(i, 3)]  # 6 coordinates


def solution_dim_4x4(C, p=exactalg.DEFAULT_PRIME):
    """dim {X symmetric 4x4 : CX symmetric} = 10 - rank of the 6-equation
    system in X's upper-triangle coordinates."""
    C = np.mod(np.asarray(C, dtype=np.int64), p)
    rows = []
    for u in range(4):
        for v in range(u + 1, 4):
            row = np.zeros(10, dtype=np.int64)
            for ci, (i, j) in enumerate(_SYM4):
                # coefficient of x_{ij} in (CX)_{uv} - (CX)_{vu}
                coef = 0
                if j == v:
                    coef += C[u, i]
                if i == v and i != j:
                    coef += C[u, j]
                if j == u:
                    coef -= C[v, i]
                if i == u and i != j:
                    coef -= C[v, j]
                row[ci] = coef % p
            rows.append(row)
    r = exactalg.rank(np.array(rows, dtype=np.int64), p)
    return 10 - r


def solution_dim_3x4(C0, c, p=exactalg.DEFAULT_PRIME):
    """Rank r of the 3-equation system "C0 X0 + c x^t symmetric" on symmetric
    4x4 X = [[X0, x], [x^t, xi]], and S = 10 - r.

    Unknown order: the 6 coordinates of X0, then x, then xi (which no
    equation touches)."""
    C0 = np.mod(np.asarray(C0, dtype=np.int64), p)
    c = np.mod(np.asarray(c, dtype=np.int64).reshape(3), p)
    rows = []
    for u in range(3):
        for v in range(u + 1, 3):
            row = np.zeros(10, dtype=np.int64)
            for ci, (i, j) in enumerate(_SYM3):
                coef = 0
                if j == v:
                    coef += C0[u, i]
                if i == v and i != j:
                    coef += C0[u, j]
                if j == u:
                    coef -= C0[v, i]
                if i == u and i != j:
                    coef -= C0[v, j]
                row[ci] = coef % p
            for xi in range(3):
                # (c x^t)_{uv} = c_u x_v
                coef = 0
                if xi == v:
                    coef += c[u]
                if xi == u:
                    coef -= c[v]
                row[6 + xi] = coef % p
            rows.append(row)
    r = exactalg.rank(np.array(rows, dtype=np.int64), p)
    return r, 10 - r


# ---------------------------------------------------------------------------
# reference tables


@dataclass(frozen=True)
class StrataRow:
    label: str
    O_ref: int | None
    O_computed: int
    S_ref: int
    S_computed: int
    flags: tuple = field(default_factory=tuple)

    @property
    def O_match(self):
        return self.O_ref is not None and self.O_ref == self.O_computed

    @property
    def S_match(self):
        return self.S_ref == self.S_computed


# reference O and S columns, in the row order of enumerate_jordan4
_JORDAN4_REF = {
    "1|1|1|1": (16, 4),
    "2|1|1": (14, 4),
    "2|2": (14, 4),
    "3|1": (14, 4),
    "4": (13, 4),
    "11|1|1": (13, 5),
    "2|11": (12, 5),
    "21|1": (12, 5),
    "31": (11, 5),
    "11|11": (10, 6),
    "22": (9, 7),
    "111|1": (8, 7),
    "211": (7, 7),
    "1111": (1, 10),
}


def jordan4_table(p=exactalg.DEFAULT_PRIME):
    """The 14-row stratification table with recomputed O and S columns.

    Two rows are flagged: the reference O for "2|1|1" is one less than the
    orbit-dimension formula gives, and the reference S for "22" is one more
    than the rank of its symmetry system; the recomputed values carry the
    flags o_ref_mismatch / s_ref_mismatch rather than being adjusted.
    """
    rows = []
    for t in enumerate_jordan4():
        label = t.label
        O_ref, S_ref = _JORDAN4_REF[label]
        O_comp = stratum_dim(t)
        S_comp = solution_dim_4x4(t.representative(p), p)
        flags = []
        if O_comp != O_ref:
            flags.append("o_ref_mismatch")
        if S_comp != S_ref:
            flags.append("s_ref_mismatch")
        rows.append(StrataRow(label, O_ref, O_comp, S_ref, S_comp, tuple(flags)))
    return rows


@dataclass(frozen=True)
class PairStrataRow:
    label: str          # Jordan type of C0
    c_class: str        # description of the c-vector class
    r_ref: int
    r_computed: int
    S_ref: int
    S_computed: int
    O_computed: int     # informational stratum dimension of the (C0, c) class
    O_ref_display: str  # the reference column as printed (may be a bound)
    flags: tuple = field(default_factory=tuple)


def _j3(blocks_per_eig):
    """3x3 representative from [(eig, size), ...] in order."""
    C = np.zeros((3, 3), dtype=np.int64)
    pos = 0
    for eig, size in blocks_per_eig:
        for i in range(size):
            C[pos + i, pos + i] = eig
            if i + 1 < size:
                C[pos + i, pos + i + 1] = 1
        pos += size
    return C


# (label, c_class, C0, c, r_ref, S_ref, O_computed_expected parts, O_ref_display)
# O_computed = (9 - centralizer) + #eigenvalues + dim of the c-class
_JORDAN3X4_ROWS = [
    ("1|1|1", "generic", _j3([(1, 1), (2, 1), (3, 1)]), (1, 1, 1), 3, 7,
     (9 - 3) + 3 + 3, "12"),
    ("11|1", "c in the simple eigenspace", _j3([(1, 1), (1, 1), (2, 1)]),
     (0, 0, 1), 2, 8, (9 - 5) + 2 + 1, "7"),
    ("11|1", "other c", _j3([(1, 1), (1, 1), (2, 1)]), (1, 0, 0), 3, 7,
     (9 - 5) + 2 + 3, "<12"),
    ("111", "c nonzero", _j3([(1, 1), (1, 1), (1, 1)]), (0, 0, 1), 2, 8,
     (9 - 9) + 1 + 3, "7"),
    ("111", "c zero", _j3([(1, 1), (1, 1), (1, 1)]), (0, 0, 0), 0, 10,
     (9 - 9) + 1 + 0, "-"),
    ("2|1", "generic", _j3([(1, 2), (2, 1)]), (1, 1, 1), 3, 7,
     (9 - 3) + 2 + 3, "<12"),
    ("21", "c in the big block's eigenline", _j3([(1, 2), (1, 1)]),
     (1, 0, 0), 2, 8, (9 - 5) + 1 + 1, "6"),
    ("21", "other c", _j3([(1, 2), (1, 1)]), (0, 0, 1), 3, 7,
     (9 - 5) + 1 + 3, "<12"),
    ("3", "generic", _j3([(1, 3)]), (1, 1, 1), 3, 7, (9 - 3) + 1 + 3, "<12"),
]


def jordan3x4_table(p=exactalg.DEFAULT_PRIME):
    """The 9-row pair table: (r, S) recomputed from explicit representatives.

    The O column mixes strata of different kinds in the reference, so it is
    recomputed as orbit + eigenvalue-count + c-class dimension and reported
    as informational only; the degenerate scalar row with c = 0 has r = 0
    (the pair map is not onto) and is flagged.
    """
    rows = []
    for label, c_class, C0, c, r_ref, S_ref, O_comp, O_disp in _JORDAN3X4_ROWS:
        r, S = solution_dim_3x4(C0, c, p)
        flags = []
        if r == 0:
            flags.append("pair_map_not_onto")
        if r != r_ref or S != S_ref:
            flags.append("ref_mismatch")
        rows.append(
            PairStrataRow(label, c_class, r_ref, r, S_ref, S, O_comp, O_disp,
                          tuple(flags))
        )
    return rows


# ---------------------------------------------------------------------------
# rank-0 covectors


def _row_span_contains(rows_matrix, vec, p):
    """Is vec in the row span of rows_matrix (over F_p)?"""
    base = exactalg.rank(rows_matrix, p)
    aug = np.vstack([rows_matrix, vec.reshape(1, -1)])
    return exactalg.rank(aug, p) == base


def find_rank0(phi, frame=None):
    """Search for a covector g cutting a hyperplane of Z (or of Z' when a
    frame is given) with Z-rank (resp. (Z,H)-rank) zero.

    The symmetry constraints on the coefficient family c are linear: solve
    them, then scan the kernel basis for a c whose induced covector is
    independent of the quotient's rows.  If every basis vector induces a
    dependent covector the span does too, and None is honest.
    """
    if frame is None:
        return _find_rank0_full(phi)
    return _find_rank0_hyper(phi, frame)


def _find_rank0_full(phi):
    a, f, p = phi.a, phi.f, phi.prime
    t = phi.t
    if f == 0:
        return None
    # unknowns c[pp, rr, s] flattened as ((pp-1)*4 + (rr-1))*f + s
    n_unk = 16 * f
    rows = []
    for j in range(a):
        for pp in range(1, 5):
            for qq in range(pp + 1, 5):
                row = np.zeros(n_unk, dtype=np.int64)
                for rr in range(1, 5):
                    for s in range(f):
                        row[((pp - 1) * 4 + (rr - 1)) * f + s] += t[s, j, qq - 1, rr - 1]
                        row[((qq - 1) * 4 + (rr - 1)) * f + s] -= t[s, j, pp - 1, rr - 1]
                rows.append(np.mod(row, p))
    system = np.array(rows, dtype=np.int64)
    kernel = exactalg.kernel_basis(system, p)
    phi_mat = phi.phi_matrix()
    for cvec in kernel:
        g = _induced_full(cvec, t, a, f, p)
        if not _row_span_contains(phi_mat, g, p):
            return g
    return None


def _induced_full(cvec, t, a, f, p):
    """g[j*10 + mono(p,q)] = sum_{r,s} c[p,r,s] t[s,j,q,r]; the symmetry
    system makes the (p,q) and (q,p) readings agree."""
    g = np.zeros(10 * a, dtype=np.int64)
    for j in range(a):
        for pp in range(1, 5):
            for qq in range(pp, 5):
                acc = 0
                for rr in range(1, 5):
                    for s in range(f):
                        acc += int(cvec[((pp - 1) * 4 + (rr - 1)) * f + s]) * int(
                            t[s, j, qq - 1, rr - 1]
                        )
                g[j * 10 + pair_index(pp, qq)] = acc % p
    return g


def _find_rank0_hyper(phi, frame):
    a, f, p = phi.a, phi.f, phi.prime
    if f == 0:
        return None
    hslice = subspace.restrict_to_H(phi, frame)
    t = hslice.tframe
    # unknowns c[pp, rr, s] for pp in 1..3, rr in 1..4
    n_unk = 12 * f
    rows = []
    for j in range(a):
        for pp in range(1, 4):
            for qq in range(pp + 1, 4):
                row = np.zeros(n_unk, dtype=np.int64)
                for rr in range(1, 5):
                    for s in range(f):
                        row[((pp - 1) * 4 + (rr - 1)) * f + s] += t[s, j, qq - 1, rr - 1]
                        row[((qq - 1) * 4 + (rr - 1)) * f + s] -= t[s, j, pp - 1, rr - 1]
                rows.append(np.mod(row, p))
    system = np.array(rows, dtype=np.int64)
    kernel = exactalg.kernel_basis(system, p)
    for cvec in kernel:
        g = _induced_hyper(cvec, t, a, f, p)
        if not _row_span_contains(hslice.phi_h, g, p):
            return g
    return None


def _induced_hyper(cvec, t, a, f, p):
    """Covector on A(x)H.V: g[j*9 + pos(p,q)] = sum_{r,s} c[p,r,s] t[s,j,q,r]
    for p <= 3 (and q arbitrary)."""
    g = np.zeros(9 * a, dtype=np.int64)
    for j in range(a):
        for pp in range(1, 4):
            for qq in range(pp, 5):
                acc = 0
                for rr in range(1, 5):
                    for s in range(f):
                        acc += int(cvec[((pp - 1) * 4 + (rr - 1)) * f + s]) * int(
                            t[s, j, qq - 1, rr - 1]
                        )
                pos = HV_MONO_INDICES.index(pair_index(pp, qq))
                g[j * 9 + pos] = acc % p
    return g


def rank_distribution(phi, frame=None, codim=1, trials=50, seed=0):
    """Histogram of Z-ranks (frame None) or (Z,H)-ranks of random
    codimension-`codim` subspaces of Z (resp. Z')."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p = phi.prime
    hist = {}
    hslice = subspace.restrict_to_H(phi, frame) if frame is not None else None
    amb = 10 * phi.a if frame is None else 9 * phi.a
    for trial in range(trials):
        rng = derive_rng(seed, 7, trial)
        extra = [rng.integers(0, p, size=amb, dtype=np.int64) for _ in range(codim)]
        if frame is None:
            r = subspace.z_rank(phi, extra)
        else:
            r = subspace.zh_rank(hslice, extra)
        hist[r] = hist.get(r, 0) + 1
    return hist
