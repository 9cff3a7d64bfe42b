"""Macaulay duality between polynomial rings and their inverse systems.

The dual of R_j in the contraction pairing is written in the uppercase
alphabet. Contraction by a monomial shifts exponents down, which makes the
monomial bases of R_j and its dual orthonormal; perpendicular spaces are
plain nullspace computations and the annihilator of a dual subspace W comes
out one degree at a time.

The quotient by the annihilator of a homogeneous W of degree j is always
level with socle dimension dim W. That fact is what turns a random choice
of W inside a prescribed subspace into a random level algebra generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from levalg import gfp
from levalg.artinian import ArtinianAlgebra
from levalg.ring import Form, GradedIdeal, PolyRing

RETRY_BUDGET = 20


def _degree_guard(ring: PolyRing, j: int) -> None:
    if j < 0:
        raise ValueError("dual forms live in non-negative degrees")
    if ring.p <= j:
        raise ValueError(
            f"characteristic {ring.p} must exceed the socle degree {j} for duality"
        )


def contract(f: Form, w: Form) -> Form:
    """Contraction f acting on the dual form w; drops degree by deg f."""
    if f.ring is not w.ring:
        raise ValueError("contraction needs both forms over the same ring")
    if f.degree > w.degree:
        raise ValueError(f"cannot contract degree {w.degree} by degree {f.degree}")
    table = f.ring.mult_index_table(f.degree, w.degree - f.degree)
    image = (f.coeffs @ w.coeffs[table]) % f.ring.p
    return f.ring.form(w.degree - f.degree, image)


def perp(ring: PolyRing, rows, degree: int):
    """Orthogonal complement of the row span inside the degree-d pairing."""
    mat = gfp.as_matrix(rows, cols=ring.dim(degree))
    if mat.shape[1] != ring.dim(degree):
        raise ValueError(f"rows are not coefficient vectors of degree {degree}")
    return gfp.nullspace(mat, ring.p)


def annihilator(ring: PolyRing, dual_rows, j: int) -> GradedIdeal:
    """Ideal of all forms contracting a degree-j dual space W to zero.

    Pieces are materialized for every degree through j; beyond that the
    ideal is the full ring, so the quotient is Artinian with socle degree j.
    """
    _degree_guard(ring, j)
    W = gfp.rref(gfp.as_matrix(dual_rows, cols=ring.dim(j)), ring.p)[0]
    if W.shape[0] == 0:
        raise ValueError("the dual space must contain a nonzero form")
    pieces = {}
    for d in range(j + 1):
        table = ring.mult_index_table(d, j - d)
        conditions = np.hstack([w[table] for w in W])
        pieces[d] = gfp.nullspace(conditions.T, ring.p)
    return GradedIdeal.from_pieces(ring, pieces, full_from=j + 1)


def inverse_system_ideal(ring: PolyRing, duals) -> GradedIdeal:
    """Annihilator of a finite set of dual forms of possibly mixed degrees."""
    duals = list(duals)
    if not duals or any(w.is_zero() for w in duals):
        raise ValueError("need a nonempty list of nonzero dual forms")
    j = max(w.degree for w in duals)
    _degree_guard(ring, j)
    pieces = {}
    for d in range(j + 1):
        blocks = [
            w.coeffs[ring.mult_index_table(d, w.degree - d)]
            for w in duals
            if w.degree >= d
        ]
        conditions = np.hstack(blocks)
        pieces[d] = gfp.nullspace(conditions.T, ring.p)
    return GradedIdeal.from_pieces(ring, pieces, full_from=j + 1)


def gorenstein_ancestor(w: Form) -> GradedIdeal:
    """Annihilator of a single dual form; the quotient is Gorenstein."""
    if w.is_zero():
        raise ValueError("the dual form must be nonzero")
    return annihilator(w.ring, w.coeffs.reshape(1, -1), w.degree)


def catalecticant_profile(ring: PolyRing, dual_rows, j: int) -> tuple[int, ...]:
    """h_i = dim R_{j-i} o W for i = 0..j; the Hilbert function of R/Ann W."""
    _degree_guard(ring, j)
    W = gfp.as_matrix(dual_rows, cols=ring.dim(j))
    profile = []
    for i in range(j + 1):
        table = ring.mult_index_table(j - i, i)
        stacked = np.vstack([w[table] for w in W])
        profile.append(gfp.rank(stacked, ring.p))
    return tuple(profile)


def socle_dual_space(ideal: GradedIdeal, j: int):
    """The inverse system (I_j)^perp, the dual space recovering a level I."""
    return perp(ideal.ring, ideal.piece(j), j)


@dataclass(frozen=True)
class LevelSample:
    """A randomly chosen level quotient together with its dual witness."""

    ideal: GradedIdeal
    dual_space: np.ndarray
    algebra: ArtinianAlgebra
    attempts: int


def random_level_quotient(
    ring: PolyRing,
    j: int,
    t: int,
    seed: int,
    constraint: GradedIdeal | None = None,
    target_h: tuple[int, ...] | None = None,
    attempts: int = RETRY_BUDGET,
) -> LevelSample:
    """Random t-dimensional inverse system of degree j, optionally inside
    the perp of a constraining ideal so the constraint survives into the
    annihilator in every degree up to j.

    Draws are retried (fresh stream per attempt, derived from seed) until
    the requested Hilbert function shows up; a target that never shows up
    raises after the retry budget.
    """
    _degree_guard(ring, j)
    if t < 1:
        raise ValueError("the socle type t must be positive")
    if constraint is None:
        ambient = np.eye(ring.dim(j), dtype=np.int64)
    else:
        ambient = perp(ring, constraint.piece(j), j)
    if ambient.shape[0] < t:
        raise ValueError(
            f"the admissible dual space has dimension {ambient.shape[0]} < t = {t}"
        )
    for attempt in range(attempts):
        rng = np.random.default_rng(np.random.SeedSequence([seed, attempt]))
        coeffs = rng.integers(0, ring.p, size=(t, ambient.shape[0]), dtype=np.int64)
        W = gfp.rref((coeffs @ ambient) % ring.p, ring.p)[0]
        if W.shape[0] < t:
            continue
        ideal = annihilator(ring, W, j)
        algebra = ArtinianAlgebra(ideal)
        report = algebra.level_report()
        if not report.is_level or report.socle_type != t:
            raise AssertionError("annihilator quotients must be level of type dim W")
        if target_h is not None and algebra.hvector() != tuple(target_h):
            continue
        return LevelSample(ideal, W, algebra, attempt + 1)
    raise RuntimeError(
        f"no dual space with the requested profile in {attempts} attempts (seed {seed})"
    )
