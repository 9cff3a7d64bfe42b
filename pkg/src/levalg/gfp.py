"""Exact dense linear algebra over a prime field GF(p).

All matrices are 2-D numpy arrays of int64 with entries kept as canonical
representatives in 0..p-1. Row-reduction is plain Gauss-Jordan with partial
pivoting; everything downstream (Hilbert functions, Betti numbers, tangent
spaces) reduces to calls into this module, so correctness here is exact by
construction and there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """Configuration object for GF(p); p defaults to 32003."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"field order must be a prime integer, got {self.p!r}")

    def canon(self, mat) -> np.ndarray:
        return as_matrix(mat) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, -1, self.p)


def as_matrix(mat, cols: int | None = None) -> np.ndarray:
    """Coerce to a 2-D int64 array; empty input becomes a (0, cols) matrix."""
    a = np.asarray(mat, dtype=np.int64)
    if a.size == 0:
        return a.reshape(0, cols if cols is not None else (a.shape[-1] if a.ndim == 2 else 0))
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if cols is not None and a.shape[1] != cols:
        raise ValueError(f"expected {cols} columns, got {a.shape[1]}")
    return a


def rref(mat, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over GF(p).

    Returns (R, pivots) where R holds only the nonzero rows, each scaled to
    have a leading 1 with zeros above and below it. R is the canonical basis
    of the row space, so two row-equivalent matrices yield identical R.
    """
    a = as_matrix(mat).copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        if nz[0] != 0:
            a[[r, r + nz[0]]] = a[[r + nz[0], r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a[: len(pivots)], tuple(pivots)


def rank(mat, p: int) -> int:
    return rref(mat, p)[0].shape[0]


def nullspace(mat, p: int) -> np.ndarray:
    """Row basis of the right kernel {x : M x = 0}.

    One basis vector per free column, carrying a 1 there and zeros in the
    other free columns, so the result is canonical. The kernel of a matrix
    with no rows is the full standard basis.
    """
    a = as_matrix(mat)
    cols = a.shape[1]
    red, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if piv:
            basis[i, list(piv)] = (-red[:, f]) % p
    return basis


class Reduction(NamedTuple):
    rank: int
    kernel: np.ndarray
    pivots: tuple[int, ...]


def reduce(mat, p: int) -> Reduction:
    """Rank, kernel basis and pivot columns of M in one pass."""
    a = as_matrix(mat)
    red, piv = rref(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in set(piv)]
    kernel = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        kernel[i, f] = 1
        if piv:
            kernel[i, list(piv)] = (-red[:, f]) % p
    return Reduction(len(piv), kernel, piv)


def reduce_mod_rowspace(vecs, red: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Subtract the rref rows to zero out the pivot coordinates of each vector.

    For vectors inside the row space the result is zero; in general it is the
    canonical representative of the vector modulo the row space.
    """
    v = as_matrix(vecs, cols=red.shape[1] if red.size else None) % p
    if red.shape[0] == 0 or v.shape[0] == 0:
        return v
    return (v - v[:, list(pivots)] @ red) % p


def in_rowspace(vecs, mat, p: int) -> bool:
    red, piv = rref(mat, p)
    v = as_matrix(vecs, cols=as_matrix(mat).shape[1])
    return not np.any(reduce_mod_rowspace(v, red, piv, p))


def subspace_sum(a, b, p: int) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[1]:
        if a.shape == (0, 0):
            a = a.reshape(0, b.shape[1])
        elif b.shape == (0, 0):
            b = b.reshape(0, a.shape[1])
        else:
            _shape_err(a, b)
    return rref(np.vstack([a, b]), p)[0]


def _shape_err(a, b):
    raise ValueError(f"column mismatch: {a.shape} vs {b.shape}")


def subspace_intersect(a, b, p: int) -> np.ndarray:
    """Canonical row basis of rowspace(a) ∩ rowspace(b)."""
    a = rref(a, p)[0]
    b = rref(b, p)[0]
    if a.shape[1] != b.shape[1]:
        _shape_err(a, b)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    stacked = np.vstack([a, (-b) % p])
    left = nullspace(stacked.T, p)  # rows (alpha, beta) with alpha@a == beta@b
    vecs = left[:, : a.shape[0]] @ a % p
    return rref(vecs, p)[0]


def subspace_contains(a, b, p: int) -> bool:
    """True when rowspace(a) contains rowspace(b)."""
    a = as_matrix(a)
    b = as_matrix(b, cols=a.shape[1])
    return in_rowspace(b, a, p)


def subspace_combine(a, b, p: int, mode: str):
    if mode == "sum":
        return subspace_sum(a, b, p)
    if mode == "intersection":
        return subspace_intersect(a, b, p)
    if mode == "contains":
        return subspace_contains(a, b, p)
    raise ValueError(f"unknown mode {mode!r}")


def solve(mat, rhs, p: int) -> np.ndarray | None:
    """One solution x of M x = rhs, or None when inconsistent."""
    a = as_matrix(mat)
    b = np.asarray(rhs, dtype=np.int64).reshape(-1) % p
    if b.shape[0] != a.shape[0]:
        raise ValueError("rhs length does not match row count")
    n = a.shape[1]
    red, piv = rref(np.hstack([a, b.reshape(-1, 1)]), p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, n]
    return x


def determinant(mat, p: int) -> int:
    """Determinant of a square matrix via elimination with swap tracking."""
    a = as_matrix(mat).copy() % p
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("determinant needs a square matrix")
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        if nz[0] != 0:
            a[[c, c + nz[0]]] = a[[c + nz[0], c]]
            det = -det
        det = det * int(a[c, c]) % p
        inv = pow(int(a[c, c]), -1, p)
        col = a[c + 1 :, c] * inv % p
        a[c + 1 :] = (a[c + 1 :] - np.outer(col, a[c])) % p
    return det % p


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int, p: int, tries: int = 50) -> np.ndarray:
    for _ in range(tries):
        m = random_matrix(rng, n, n, p)
        if rank(m, p) == n:
            return m
    raise RuntimeError(f"no invertible {n}x{n} matrix found in {tries} draws")
