"""Monomial bookkeeping for symmetric powers of a 4-variable space, and
hyperplane coordinate frames."""

import numpy as np
import pytest

from steinerlab import exactalg, multilin
from steinerlab.multilin import (
    HV_MONO_INDICES,
    HyperplaneFrame,
    dim_sym,
    frame_x4,
    mono_basis,
    mono_index,
    mult_index,
    pair_index,
    random_frame,
    transform_fform_tensor,
    transform_presentation,
    untransform_presentation,
)

P = exactalg.DEFAULT_PRIME


def test_dim_sym():
    assert [dim_sym(d) for d in range(6)] == [1, 4, 10, 20, 35, 56]


def test_mono_basis_order_degree2():
    basis = mono_basis(2)
    assert len(basis) == 10
    assert basis[0] == (2, 0, 0, 0)
    assert basis[-1] == (0, 0, 0, 2)
    assert basis.index((0, 0, 0, 2)) == 9
    # graded lex, descending: exponent tuples strictly decrease
    for i in range(9):
        assert basis[i] > basis[i + 1]


def test_mono_basis_generic_degree():
    for d in (0, 1, 3, 4):
        basis = mono_basis(d)
        assert len(basis) == dim_sym(d)
        assert all(sum(m) == d for m in basis)
        assert len(set(basis)) == len(basis)
        for mono in basis:
            assert mono_index(mono) == basis.index(mono)


def test_mult_index_shifts_exponent():
    basis2 = mono_basis(2)
    basis3 = mono_basis(3)
    for i, mono in enumerate(basis2):
        for k in range(1, 5):
            lifted = list(mono)
            lifted[k - 1] += 1
            assert basis3[mult_index(mono, k)] == tuple(lifted)


def test_mult_index_commutes():
    for mono in mono_basis(1):
        for k1 in range(1, 5):
            for k2 in range(1, 5):
                m1 = mono_basis(2)[mult_index(mono, k1)]
                m2 = mono_basis(2)[mult_index(mono, k2)]
                assert mult_index(m1, k2) == mult_index(m2, k1)


def test_pair_index():
    basis = mono_basis(2)
    for p in range(1, 5):
        for q in range(1, 5):
            assert pair_index(p, q) == pair_index(q, p)
            mono = [0, 0, 0, 0]
            mono[p - 1] += 1
            mono[q - 1] += 1
            assert basis[pair_index(p, q)] == tuple(mono)


def test_hv_mono_indices():
    assert HV_MONO_INDICES == tuple(range(9))


def test_frame_from_covector(rng):
    for _ in range(10):
        h = rng.integers(0, P, size=4, dtype=np.int64)
        if not h.any():
            continue
        fr = HyperplaneFrame.from_covector(h, P)
        PM = fr.P
        assert exactalg.rank(PM, P) == 4
        assert np.array_equal(
            exactalg.matmul_mod(PM, fr.Pinv, P), np.eye(4, dtype=np.int64)
        )
        # the first three columns span the kernel of h
        hits = exactalg.matmul_mod(h.reshape(1, 4), PM[:, :3], P)
        assert not hits.any()


def test_frame_rejects_zero_covector():
    with pytest.raises(ValueError):
        HyperplaneFrame.from_covector([0, 0, 0, 0], P)


def test_frame_x4_is_identity():
    fr = frame_x4()
    assert np.array_equal(fr.P, np.eye(4, dtype=np.int64))
    assert fr.h == (0, 0, 0, 1)


def test_hv_basis_spans_codimension_one(rng):
    fr = random_frame(rng, P)
    hv = fr.hv_basis()
    assert hv.shape == (9, 10)
    assert exactalg.rank(hv, P) == 9
    # adjoining the square of the complementary coordinate fills the space
    extra = np.zeros((1, 10), dtype=np.int64)
    sq = exactalg.matmul_mod(
        fr.P[:, 3].reshape(4, 1), fr.P[:, 3].reshape(1, 4), P
    )
    basis = mono_basis(2)
    for pp in range(4):
        for qq in range(4):
            mono = [0, 0, 0, 0]
            mono[pp] += 1
            mono[qq] += 1
            extra[0, basis.index(tuple(mono))] += sq[pp, qq]
    extra %= P
    assert exactalg.rank(np.vstack([hv, extra]), P) == 10


def test_presentation_transform_round_trip(rng):
    fr = random_frame(rng, P)
    Ms = [rng.integers(0, P, size=(3, 7), dtype=np.int64) for _ in range(4)]
    out = untransform_presentation(transform_presentation(Ms, fr), fr)
    for M, M2 in zip(Ms, out):
        assert np.array_equal(M, M2)
    out = transform_presentation(untransform_presentation(Ms, fr), fr)
    for M, M2 in zip(Ms, out):
        assert np.array_equal(M, M2)


def test_presentation_transform_x4_identity(rng):
    Ms = [rng.integers(0, P, size=(2, 5), dtype=np.int64) for _ in range(4)]
    out = transform_presentation(Ms, frame_x4())
    for M, M2 in zip(Ms, out):
        assert np.array_equal(M, M2)


def test_fform_tensor_transform(rng):
    fr = random_frame(rng, P)
    raw = rng.integers(0, P, size=(2, 3, 4, 4), dtype=np.int64)
    t = np.mod(raw + raw.transpose(0, 1, 3, 2), P)
    out = transform_fform_tensor(t, fr)
    assert out.shape == t.shape
    assert np.array_equal(out, np.mod(out.transpose(0, 1, 3, 2), P))
    assert np.array_equal(transform_fform_tensor(t, frame_x4()), t)
