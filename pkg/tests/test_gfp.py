import numpy as np
import pytest

from levalg import gfp
from levalg.gfp import PrimeField

P = 32003


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(32001)  # 3 * 10667
    with pytest.raises(ValueError):
        PrimeField(1)


def test_prime_field_default():
    f = PrimeField()
    assert f.p == 32003
    assert f.inv(2) * 2 % f.p == 1


def test_rref_hand_oracle():
    # worked by hand over GF(101): second row is twice the first
    m = [[1, 2, 3], [2, 4, 6]]
    red, piv = gfp.rref(m, 101)
    assert red.tolist() == [[1, 2, 3]]
    assert piv == (0,)
    assert gfp.rank(m, 101) == 1
    ker = gfp.nullspace(m, 101)
    # free columns 1 and 2, pivot solves x0 = -2*x1 - 3*x2
    assert ker.tolist() == [[99, 1, 0], [98, 0, 1]]


def test_reduce_empty_matrix():
    r = gfp.reduce(np.zeros((0, 4), dtype=np.int64), P)
    assert r.rank == 0
    assert r.pivots == ()
    assert r.kernel.tolist() == np.eye(4, dtype=np.int64).tolist()


def test_reduce_identity_and_zero():
    r = gfp.reduce(np.eye(5, dtype=np.int64), P)
    assert r.rank == 5 and r.kernel.shape == (0, 5)
    z = gfp.reduce(np.zeros((3, 5), dtype=np.int64), P)
    assert z.rank == 0 and z.kernel.shape == (5, 5)


def test_rank_nullity_random():
    rng = np.random.default_rng(7)
    for _ in range(25):
        rows = int(rng.integers(1, 12))
        cols = int(rng.integers(1, 12))
        m = gfp.random_matrix(rng, rows, cols, P)
        r = gfp.reduce(m, P)
        assert r.rank + r.kernel.shape[0] == cols
        if r.kernel.shape[0]:
            assert not np.any(m @ r.kernel.T % P)


def test_rref_idempotent_and_canonical():
    rng = np.random.default_rng(11)
    for _ in range(10):
        m = gfp.random_matrix(rng, 6, 9, P)
        red, piv = gfp.rref(m, P)
        red2, piv2 = gfp.rref(red, P)
        assert np.array_equal(red, red2) and piv == piv2
        # scaling rows by nonzero constants does not change the rref
        scale = rng.integers(1, P, size=(6, 1))
        red3, _ = gfp.rref(m * scale % P, P)
        assert np.array_equal(red, red3)


def test_modular_law_random_subspaces():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(2, 10))
        a = gfp.rref(gfp.random_matrix(rng, int(rng.integers(0, n + 1)), n, P), P)[0]
        b = gfp.rref(gfp.random_matrix(rng, int(rng.integers(0, n + 1)), n, P), P)[0]
        s = gfp.subspace_sum(a, b, P)
        i = gfp.subspace_intersect(a, b, P)
        assert s.shape[0] + i.shape[0] == a.shape[0] + b.shape[0]
        if i.shape[0]:
            assert gfp.subspace_contains(a, i, P)
            assert gfp.subspace_contains(b, i, P)
        assert gfp.subspace_contains(s, a, P)
        assert gfp.subspace_contains(s, b, P)


def test_subspace_contains_strict():
    a = [[1, 0, 0], [0, 1, 0]]
    b = [[1, 1, 0]]
    c = [[0, 0, 1]]
    assert gfp.subspace_contains(a, b, P)
    assert not gfp.subspace_contains(a, c, P)
    assert gfp.subspace_combine(a, b, P, "contains") is True


def test_subspace_combine_dispatch():
    a = [[1, 0], [0, 1]]
    b = [[1, 1]]
    assert gfp.subspace_combine(a, b, P, "sum").shape == (2, 2)
    assert gfp.subspace_combine(a, b, P, "intersection").tolist() == [[1, 1]]
    with pytest.raises(ValueError):
        gfp.subspace_combine(a, b, P, "union")


def test_solve():
    rng = np.random.default_rng(5)
    a = gfp.random_matrix(rng, 6, 4, P)
    x = gfp.random_matrix(rng, 1, 4, P)[0]
    b = a @ x % P
    got = gfp.solve(a, b, P)
    assert got is not None
    assert np.array_equal(a @ got % P, b)
    # an inconsistent system: a has rank <= 4 < 6, so a generic rhs fails
    bad = gfp.solve(np.zeros((2, 3), dtype=np.int64), [1, 0], P)
    assert bad is None


def test_determinant():
    assert gfp.determinant([[2, 0], [0, 3]], 101) == 6
    assert gfp.determinant([[0, 1], [1, 0]], 101) == 100  # one swap: det = -1
    assert gfp.determinant([[1, 2], [2, 4]], 101) == 0
    rng = np.random.default_rng(13)
    for _ in range(10):
        m = gfp.random_matrix(rng, 5, 5, P)
        d = gfp.determinant(m, P)
        assert (d != 0) == (gfp.rank(m, P) == 5)


def test_determinant_multiplicative():
    rng = np.random.default_rng(17)
    for _ in range(10):
        a = gfp.random_matrix(rng, 4, 4, P)
        b = gfp.random_matrix(rng, 4, 4, P)
        assert gfp.determinant(a @ b % P, P) == gfp.determinant(a, P) * gfp.determinant(b, P) % P


def test_reduce_mod_rowspace():
    m = [[1, 0, 2], [0, 1, 3]]
    red, piv = gfp.rref(m, P)
    inside = np.array([[2, 1, 7]]) % P  # 2*r0 + r1
    assert not np.any(gfp.reduce_mod_rowspace(inside, red, piv, P))
    outside = np.array([[0, 0, 1]])
    assert np.any(gfp.reduce_mod_rowspace(outside, red, piv, P))


def test_random_invertible():
    rng = np.random.default_rng(19)
    m = gfp.random_invertible(rng, 4, P)
    assert gfp.rank(m, P) == 4
