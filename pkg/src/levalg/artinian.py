"""Graded quotient algebras: socles, level type, Jordan types of multiplication.

A quotient A = R/I is handled degree by degree. In each degree the monomials
at the non-pivot columns of the row-reduced ideal piece form a basis of A_d,
and reduction against the pivots is the projection R_d -> A_d. All structural
questions (socle, levelness, Lefschetz behaviour) become rank computations on
the multiplication maps written in these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from levalg import gfp
from levalg.ring import Form, GradedIdeal, HilbertFunction, PolyRing


class NotArtinianError(ValueError):
    pass


class GradedQuotient:
    """Per-degree coordinates and multiplication maps of A = R/I."""

    def __init__(self, ideal: GradedIdeal):
        self.ideal = ideal
        self.ring: PolyRing = ideal.ring
        self.p = self.ring.p
        self._free_cols: dict[int, np.ndarray] = {}
        self._mult: dict[tuple[int, int], np.ndarray] = {}

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        return self.ring.dim(d) - self.ideal.piece_dim(d)

    def free_columns(self, d: int) -> np.ndarray:
        """Indices of the monomials representing a basis of A_d."""
        if d not in self._free_cols:
            _, piv = self.ideal.piece_with_pivots(d)
            pivset = set(piv)
            self._free_cols[d] = np.array(
                [c for c in range(self.ring.dim(d)) if c not in pivset], dtype=np.int64
            )
        return self._free_cols[d]

    def to_quotient(self, d: int, vectors) -> np.ndarray:
        """Project rows in R_d coordinates to A_d coordinates."""
        red, piv = self.ideal.piece_with_pivots(d)
        v = gfp.as_matrix(vectors, cols=self.ring.dim(d))
        resid = gfp.reduce_mod_rowspace(v, red, piv, self.p)
        return resid[:, self.free_columns(d)]

    def lift(self, d: int, qvectors) -> np.ndarray:
        """Monomial representatives in R_d of rows in A_d coordinates."""
        q = gfp.as_matrix(qvectors, cols=self.dim(d))
        out = np.zeros((q.shape[0], self.ring.dim(d)), dtype=np.int64)
        out[:, self.free_columns(d)] = q
        return out

    def mult_var(self, d: int, k: int) -> np.ndarray:
        """Matrix of multiplication by the k-th variable, A_d -> A_{d+1},
        acting on row vectors from the right."""
        key = (d, k)
        if key not in self._mult:
            h = self.dim(d)
            rows = np.zeros((h, self.ring.dim(d + 1)), dtype=np.int64)
            shift = self.ring.var_shift(d, k)
            rows[np.arange(h), shift[self.free_columns(d)]] = 1
            self._mult[key] = self.to_quotient(d + 1, rows)
        return self._mult[key]

    def mult_linear(self, d: int, ell: Form | np.ndarray) -> np.ndarray:
        coeffs = ell.coeffs if isinstance(ell, Form) else np.asarray(ell, dtype=np.int64)
        out = np.zeros((self.dim(d), self.dim(d + 1)), dtype=np.int64)
        for k in range(self.ring.nvars):
            c = int(coeffs[k]) % self.p
            if c:
                out = (out + c * self.mult_var(d, k)) % self.p
        return out


@dataclass(frozen=True)
class LevelReport:
    is_level: bool
    socle_type: int
    socle_dims: tuple[int, ...]


class ArtinianAlgebra(GradedQuotient):
    """A finite-dimensional graded quotient with its socle degree pinned down."""

    def __init__(self, ideal: GradedIdeal, max_degree: int = 64):
        super().__init__(ideal)
        values = []
        j = None
        for d in range(max_degree + 1):
            h = self.dim(d)
            values.append(h)
            if h == 0 and d > 0:
                j = d - 1
                break
        if j is None:
            raise NotArtinianError(f"no vanishing graded piece through degree {max_degree}")
        self.socle_degree = j
        self.hilbert = HilbertFunction.from_values(values)
        self.length = sum(values)

    def hvector(self) -> tuple[int, ...]:
        return self.hilbert.values[: self.socle_degree + 1]

    def socle(self) -> dict[int, np.ndarray]:
        """Per-degree bases (in quotient coordinates) of the annihilator of
        the maximal ideal. The top degree is always included whole."""
        out = {}
        for d in range(self.socle_degree + 1):
            h = self.dim(d)
            if h == 0:
                continue
            blocks = [self.mult_var(d, k) for k in range(self.ring.nvars)]
            stacked = np.hstack(blocks)
            basis = gfp.nullspace(stacked.T, self.p) if stacked.shape[1] else np.eye(h, dtype=np.int64)
            if basis.shape[0]:
                out[d] = basis
        return out

    def socle_dims(self) -> tuple[int, ...]:
        soc = self.socle()
        return tuple(soc[d].shape[0] if d in soc else 0 for d in range(self.socle_degree + 1))

    def level_report(self) -> LevelReport:
        dims = self.socle_dims()
        j = self.socle_degree
        is_level = all(v == 0 for v in dims[:j]) and dims[j] == self.dim(j)
        return LevelReport(is_level, dims[j], dims)

    def is_level(self) -> bool:
        return self.level_report().is_level

    def socle_type(self) -> int:
        return self.level_report().socle_type

    # ---- multiplication by powers of a linear form -------------------------

    def _power_ranks(self, ell: Form) -> list[int]:
        """Ranks of ell^k acting on the whole algebra, k = 0, 1, ..."""
        maps = [self.mult_linear(d, ell) for d in range(self.socle_degree + 1)]
        ranks = [self.length]
        current = {d: np.eye(self.dim(d), dtype=np.int64) for d in range(self.socle_degree + 1)}
        for k in range(1, self.socle_degree + 2):
            total = 0
            nxt = {}
            for d, comp in current.items():
                if d + k - 1 > self.socle_degree:
                    continue
                comp = comp @ maps[d + k - 1] % self.p
                if comp.shape[1]:
                    total += gfp.rank(comp, self.p)
                    nxt[d] = comp
            ranks.append(total)
            current = nxt
            if total == 0:
                break
        return ranks

    def jordan_type(self, ell: Form) -> tuple[int, ...]:
        """Jordan partition of multiplication by the linear form ell."""
        if ell.degree != 1 or ell.is_zero():
            raise ValueError("jordan type needs a nonzero linear form")
        ranks = self._power_ranks(ell)
        while ranks[-1] != 0:
            ranks.append(0)  # nilpotency bound reached inside _power_ranks
        conj = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks)) if ranks[k - 1] - ranks[k] > 0]
        return conjugate_partition(conj)


def conjugate_partition(parts) -> tuple[int, ...]:
    parts = sorted((p for p in parts if p > 0), reverse=True)
    if not parts:
        return ()
    return tuple(sum(1 for q in parts if q >= i) for i in range(1, parts[0] + 1))


def bar_graph_partition(hvector) -> tuple[int, ...]:
    """Partition whose m-th row length is #{i : h_i >= m}; the Jordan type a
    strong Lefschetz element must attain."""
    h = [int(v) for v in hvector]
    if not h or min(h) < 0:
        raise ValueError("need a nonnegative h-vector")
    top = max(h, default=0)
    return tuple(sum(1 for v in h if v >= m) for m in range(1, top + 1))


def dominates(lam, mu) -> bool:
    """Dominance order on partitions of the same number."""
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of the same number")
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True


def random_linear_form(ring: PolyRing, rng: np.random.Generator) -> Form:
    while True:
        coeffs = rng.integers(0, ring.p, size=ring.nvars, dtype=np.int64)
        if np.any(coeffs):
            return Form(ring, 1, coeffs)


def generic_jordan_type(algebra: ArtinianAlgebra, rng: np.random.Generator, samples: int = 5):
    """Jordan type of a generic linear form, approximated by sampling.

    Draws `samples` random linear forms and keeps the dominance-maximal
    Jordan type; lexicographic order breaks ties between incomparable ones.
    """
    seen = [algebra.jordan_type(random_linear_form(algebra.ring, rng)) for _ in range(samples)]
    best = seen[0]
    for jt in seen[1:]:
        if jt == best:
            continue
        if dominates(jt, best):
            best = jt
        elif not dominates(best, jt) and jt > best:
            best = jt
    return best


def strong_lefschetz(algebra: ArtinianAlgebra, trials: int, rng: np.random.Generator) -> bool:
    """True when some sampled linear form attains the bar-graph partition."""
    target = bar_graph_partition(algebra.hvector())
    for _ in range(trials):
        ell = random_linear_form(algebra.ring, rng)
        if algebra.jordan_type(ell) == target:
            return True
    return False
