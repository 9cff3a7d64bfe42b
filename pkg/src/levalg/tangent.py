"""Dimensions of degree-zero graded Hom(I, R/I), one degree at a time.

A graded hom is a compatible family of linear maps I_d -> A_d. The engine
keeps the family as a matrix Phi sending a parameter vector to vec(phi_d)
and pushes it up one degree per step: products x_k f with f in I_d must map
to x_k phi(f), relations among those products become linear constraints on
the parameters, and a basis complement of R_1 I_d inside I_{d+1} receives
fresh parameters. The parametrization stays injective throughout, so the
parameter count IS the hom dimension once every constraint has been seen.

For an Artinian quotient the constraints die above the socle degree, so the
count is exact after processing that degree. For a points ideal the count
is read off where it stops moving.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from levalg import gfp
from levalg.artinian import ArtinianAlgebra, GradedQuotient
from levalg.ring import GradedIdeal

_SCAN_LIMIT = 40
_STABLE_WINDOW = 6


class _Propagation:
    """Parameter bookkeeping for phi on one graded piece of the ideal."""

    def __init__(self, quotient: GradedQuotient, start_degree: int):
        self.q = quotient
        self.degree = start_degree
        nd = quotient.ideal.piece_dim(start_degree)
        h = quotient.dim(start_degree)
        self.dimension = nd * h
        self.phi = np.eye(self.dimension, dtype=np.int64)

    def advance(self) -> None:
        q, d, p = self.q, self.degree, self.q.p
        ring = q.ring
        basis = q.ideal.piece(d)
        nd = basis.shape[0]
        piece1, piv1 = q.ideal.piece_with_pivots(d + 1)
        nd1 = piece1.shape[0]
        h, h1 = q.dim(d), q.dim(d + 1)
        s = self.dimension

        blocks = []
        for k in range(ring.nvars):
            block = np.zeros((nd, ring.dim(d + 1)), dtype=np.int64)
            block[:, ring.var_shift(d, k)] = basis
            blocks.append(block)
        products = np.vstack(blocks)
        G = products[:, list(piv1)]

        aug = np.hstack([G, np.eye(G.shape[0], dtype=np.int64)])
        reduced, pivots = gfp.rref(aug, p)
        ngr = sum(1 for c in pivots if c < nd1)
        R = reduced[:ngr, :nd1]
        T1 = reduced[:ngr, nd1:]
        T2 = reduced[ngr:, nd1:]

        rhs = np.zeros((ring.nvars * nd, h1, s), dtype=np.int64)
        if h and h1 and nd:
            phi3 = self.phi.reshape(nd, h, s)
            for k in range(ring.nvars):
                mk = q.mult_var(d, k)
                rhs[k * nd : (k + 1) * nd] = np.einsum("bh,abs->ahs", mk, phi3) % p

        if T2.shape[0] and h1:
            cmat = np.tensordot(T2, rhs, axes=(1, 0)).reshape(-1, s) % p
            keep = gfp.nullspace(cmat, p)
        else:
            keep = np.eye(s, dtype=np.int64)
        s2 = keep.shape[0]
        rhs = np.tensordot(rhs, keep.T, axes=(2, 0)) % p
        vals = np.tensordot(T1, rhs, axes=(1, 0)) % p

        free = sorted(set(range(nd1)) - set(pivots[:ngr]))
        s_new = s2 + len(free) * h1
        phi_new = np.zeros((nd1 * h1, s_new), dtype=np.int64)
        for f_idx, f in enumerate(free):
            cols = slice(s2 + f_idx * h1, s2 + (f_idx + 1) * h1)
            phi_new[f * h1 : (f + 1) * h1, cols] = np.eye(h1, dtype=np.int64)
        eye1 = np.eye(h1, dtype=np.int64)
        for i in range(ngr):
            rows = slice(pivots[i] * h1, (pivots[i] + 1) * h1)
            phi_new[rows, :s2] = vals[i]
            for f_idx, f in enumerate(free):
                if R[i, f]:
                    cols = slice(s2 + f_idx * h1, s2 + (f_idx + 1) * h1)
                    phi_new[rows, cols] = (-int(R[i, f]) * eye1) % p

        self.phi = phi_new % p
        self.dimension = s_new
        self.degree = d + 1


def _first_nonzero_degree(ideal: GradedIdeal, limit: int = _SCAN_LIMIT) -> int | None:
    for d in range(limit + 1):
        if ideal.piece_dim(d):
            return d
    return None


def hom_dimension_through(ideal: GradedIdeal, degree: int) -> int:
    """dim of the space of compatible families (phi_{d0}, ..., phi_degree)."""
    q = GradedQuotient(ideal)
    d0 = _first_nonzero_degree(ideal, limit=degree)
    if d0 is None:
        return 0
    prop = _Propagation(q, d0)
    while prop.degree < degree:
        prop.advance()
    return prop.dimension


def tangent_dimension(algebra: ArtinianAlgebra) -> int:
    """dim Hom(I, A)_0 for an Artinian quotient; exact at the socle degree."""
    j = algebra.socle_degree
    d0 = _first_nonzero_degree(algebra.ideal, limit=j + 1)
    if d0 is None or d0 > j:
        return 0
    prop = _Propagation(algebra, d0)
    while prop.degree < j:
        prop.advance()
    return prop.dimension


@dataclass(frozen=True)
class TangentReport:
    """Hom dimension for a non-Artinian ideal, read off at a stable degree."""

    dimension: int
    degree: int
    stabilized: bool

    def to_json(self) -> str:
        return json.dumps(
            {"dimension": self.dimension, "D": self.degree, "stabilized": self.stabilized}
        )


def tangent_dimension_points(
    ideal: GradedIdeal, start: int | None = None, window: int = _STABLE_WINDOW
) -> TangentReport:
    """Hom(I, R/I)_0 for a saturated ideal of points.

    The parameter count is trusted once it repeats at two consecutive
    degrees, beginning two past the last minimal generator. A count still
    drifting after six further degrees raises rather than report a guess.
    """
    q = GradedQuotient(ideal)
    d0 = _first_nonzero_degree(ideal)
    if d0 is None:
        raise ValueError("the zero ideal has no tangent data")
    if start is None:
        flat = 0
        last_gen = d0
        d = d0
        while flat < 3 and d < _SCAN_LIMIT:
            d += 1
            if ideal.new_generator_dim(d):
                last_gen = d
                flat = 0
            else:
                flat += 1
        start = last_gen + 2
    prop = _Propagation(q, d0)
    while prop.degree < start:
        prop.advance()
    seen = prop.dimension
    for _ in range(window):
        prop.advance()
        if prop.dimension == seen:
            return TangentReport(seen, prop.degree - 1, True)
        seen = prop.dimension
    raise RuntimeError(
        f"hom dimension still moving at degree {prop.degree}; the ideal is "
        "probably not saturated or not a points ideal"
    )
