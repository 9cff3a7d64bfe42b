"""The length-2c socle sequences H(c) and the geometry behind them.

For c >= 3 the sequence H(c)_i = min{r_i - 2 r_{i-c}, 3 r_{2c-1-i}} is a
level Hilbert function of type three and socle degree 2c-1 (H(3) is the
sequence (1,3,6,8,9,3) studied through the named witnesses). The two phases
of the min meet near alpha(c) = 2c - sqrt((c^2-1)/2). Quotients are graded
by the degree a of the common divisor of their two degree-c generators;
admissible values of a give strata whose closures are distinct irreducible
components, so the number of components grows linearly in c.

Everything dimension-like here is exact integer arithmetic. The square
root only appears in the display value alpha(c); integrality of alpha and
the component-count lower bound both reduce to integer inequalities, and
the values of c with integral alpha come out of the convergents of sqrt 2.

verify_partition_construction realizes H(c) on the nose: it samples plane
points on a pair of complete intersections, splits them three ways into
evenly sized generic subsets, caps each part with a random Gorenstein
ancestor of socle degree 2c-1, and intersects. The Hilbert function of the
intersection is reported against H(c) together with the point-count bound
N <= 3 r_a - 3 that makes the balanced split possible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from levalg import gfp
from levalg.apolarity import annihilator, gorenstein_ancestor, perp, random_level_quotient
from levalg.artinian import ArtinianAlgebra
from levalg.gfp import DEFAULT_PRIME
from levalg.points import (
    PointSet,
    evaluation_matrix,
    hilbert_of_points,
    normalize_point,
    points_ideal,
)
from levalg.ring import Form, GradedIdeal, PolyRing, graded_dimension, polynomial_ring

RETRY_BUDGET = 12
_SECTION_BUDGET = 600


def _r(d: int) -> int:
    return graded_dimension(3, d)


def H_of_c(c: int) -> tuple[int, ...]:
    """The type-three sequence of socle degree 2c-1, as a tuple of length 2c."""
    if c < 3:
        raise ValueError("the series starts at c = 3")
    return tuple(
        min(_r(i) - 2 * _r(i - c), 3 * _r(2 * c - 1 - i)) for i in range(2 * c)
    )


def alpha(c: int) -> float:
    """Where the two phases of H(c) cross; integral only at Pell values of c."""
    if c < 3:
        raise ValueError("the series starts at c = 3")
    return 2 * c - math.sqrt((c * c - 1) / 2)


def alpha_is_integral(c: int) -> bool:
    """True when (c^2-1)/2 is a perfect square, i.e. c^2 - 2d^2 = 1 for some d."""
    if c < 3:
        raise ValueError("the series starts at c = 3")
    half, odd = divmod(c * c - 1, 2)
    if odd:
        return False
    d = math.isqrt(half)
    return d * d == half


def min_admissible_a(c: int) -> int:
    """Least positive a with 2a^2 >= c^2 - 1, the ceiling of 2c - alpha(c)."""
    if c < 3:
        raise ValueError("the series starts at c = 3")
    a = math.isqrt((c * c - 1) // 2)
    while 2 * a * a < c * c - 1:
        a += 1
    return a


def series_dimensions(c: int, a: int) -> tuple[int, int | None]:
    """(stratum dimension, component dimension) for common-divisor degree a.

    The stratum is the locus of degree-c pencils whose gcd has degree
    exactly a. The component dimension is only defined for a = 0 and for
    admissible a (2a^2 >= c^2 - 1); in between the stratum is too small to
    dominate a component and None is returned in the second slot.
    """
    if c < 3:
        raise ValueError("the series starts at c = 3")
    if not 0 <= a < c:
        raise ValueError(f"the divisor degree must lie in [0, {c}), got {a}")
    if a == 0:
        return 2 * (_r(c) - 2), 4 * c * c + 3 * c - 11
    stratum = _r(a) + 2 * _r(c - a) - 5
    if 2 * a * a < c * c - 1:
        return stratum, None
    return stratum, 4 * c * c + 3 * c - 12 + (c - a) ** 2


def component_count(c: int) -> int:
    """How many values of a carry a component: a = 0 plus the admissible range."""
    return c + 1 - min_admissible_a(c)


def component_count_bound_holds(c: int) -> bool:
    """count >= (1 - 1/sqrt 2) c without floats: 2 (a_min - 1)^2 <= c^2."""
    slack = min_admissible_a(c) - 1
    return 2 * slack * slack <= c * c


def pell_alphas(limit: int) -> list[tuple[int, int]]:
    """All (c, d) with c <= limit, c^2 - 2d^2 = 1 and c >= 3; these are the c
    with integral alpha(c) = 2c - d. Walks the convergents p/q of sqrt 2 via
    (p, q) -> (p + 2q, p + q); every other convergent solves the equation."""
    if limit < 3:
        raise ValueError("the first solution is c = 3")
    out = []
    p, q = 1, 1
    while p <= limit:
        if p >= 3 and p * p - 2 * q * q == 1:
            out.append((p, q))
        p, q = p + 2 * q, p + q
    return out


# ---- realizing H(c) from points ----------------------------------------------


def _random_point(rng, ring: PolyRing) -> tuple[int, ...]:
    while True:
        raw = rng.integers(0, ring.p, size=ring.nvars, dtype=np.int64)
        if raw.any():
            return normalize_point(ring.p, raw)


def _line_section(f: Form, base, direction) -> list[tuple[int, ...]]:
    """All rational zeros of f on the line through two given points."""
    ring = f.ring
    p = ring.p
    a = np.asarray(base, dtype=np.int64) % p
    b = np.asarray(direction, dtype=np.int64) % p
    ts = np.arange(p, dtype=np.int64)
    coords = np.vstack([(a[None, :] + ts[:, None] * b[None, :]) % p, b[None, :]])
    vals = (evaluation_matrix(ring, coords, f.degree) @ f.coeffs) % p
    return [normalize_point(p, coords[i]) for i in np.nonzero(vals == 0)[0]]


def _ci_postulation(d1: int, d2: int, d: int) -> int:
    return _r(d) - _r(d - d1) - _r(d - d2) + _r(d - d1 - d2)


def complete_intersection_points(
    rng, ring: PolyRing, d1: int, d2: int, budget: int = _SECTION_BUDGET
) -> PointSet:
    """d1*d2 rational points cut out by plane curves of degrees d1 <= d2.

    The first curve is a random form of degree d1. Random lines are sliced
    against it until d2 of them meet it in d1 distinct rational points each,
    with no point shared between slices; the union is then the intersection
    of the curve with the product of those lines, and its Hilbert function
    is checked against the Koszul postulation before the set is accepted.
    """
    if not 1 <= d1 <= d2:
        raise ValueError("degrees must satisfy 1 <= d1 <= d2")
    if ring.nvars != 3:
        raise ValueError("complete intersection points live in the plane")
    for _ in range(RETRY_BUDGET):
        f = ring.random_form(rng, d1)
        if f.is_zero():
            continue
        sections: list[tuple[int, ...]] = []
        taken: set[tuple[int, ...]] = set()
        tries = 0
        while len(sections) < d1 * d2 and tries < budget:
            tries += 1
            a, b = _random_point(rng, ring), _random_point(rng, ring)
            if a == b:
                continue
            hits = _line_section(f, a, b)
            if len(hits) != d1 or len(set(hits)) != d1:
                continue
            if any(q in taken for q in hits):
                continue
            sections.extend(hits)
            taken.update(hits)
        if len(sections) < d1 * d2:
            continue
        ps = PointSet.of(ring, sections)
        values = hilbert_of_points(ps, dmax=d1 + d2 + 2)
        if all(values[d] == _ci_postulation(d1, d2, d) for d in range(len(values))):
            return ps
    raise RuntimeError(f"no clean ({d1},{d2}) intersection sample within budget")


def _split_sizes(total: int, descending: bool) -> tuple[int, int, int]:
    q, rem = divmod(total, 3)
    sizes = [q + 1] * rem + [q] * (3 - rem)
    return tuple(sizes if descending else reversed(sizes))


def _partition(coords, sizes):
    parts, at = [], 0
    for s in sizes:
        parts.append(tuple(coords[at : at + s]))
        at += s
    return parts


class _StageFailure(Exception):
    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of one attempt series at realizing H(c) from plane points."""

    c: int
    a: int
    hilbert: tuple[int, ...]
    matches: bool
    sample_size: int
    generic_bound: int
    bound_holds: bool
    part_sizes: tuple[tuple[int, int], ...]
    attempts: int

    def to_json(self) -> str:
        payload = {
            "c": self.c,
            "a": self.a,
            "hilbert": list(self.hilbert),
            "matches": self.matches,
            "sample_size": self.sample_size,
            "generic_bound": self.generic_bound,
            "bound_holds": self.bound_holds,
            "part_sizes": [list(pair) for pair in self.part_sizes],
            "attempts": self.attempts,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _pencil_quotient_hvector(rng, ring: PolyRing, c: int, seed: int) -> tuple[int, ...]:
    """Hilbert function of a random type-3 level quotient of a degree-(c,c)
    complete intersection, socle degree 2c-1."""
    for _ in range(RETRY_BUDGET):
        f, g = ring.random_form(rng, c), ring.random_form(rng, c)
        if gfp.rank(np.vstack([f.coeffs, g.coeffs]), ring.p) == 2:
            constraint = GradedIdeal.from_generators(ring, [f, g])
            break
    else:
        raise _StageFailure("pencil", "no independent pair of degree-c forms")
    sample = random_level_quotient(ring, 2 * c - 1, 3, seed=seed, constraint=constraint)
    return sample.algebra.hvector()


def _assemble_from_points(rng, ring: PolyRing, c: int, a: int, H) -> tuple[int, ...]:
    """One full pass of the three-part construction; raises _StageFailure on
    any degenerate draw, returns the Hilbert function of the intersection."""
    j = 2 * c - 1
    N = max(H)
    try:
        big = complete_intersection_points(rng, ring, a, 2 * c - a)
        small = complete_intersection_points(rng, ring, c - a, c - a)
    except RuntimeError as err:
        raise _StageFailure("intersection points", str(err))

    picked = rng.choice(big.size, size=N - (c - a) ** 2, replace=False)
    v_parts = _partition([big.coords[i] for i in picked], _split_sizes(len(picked), True))
    w_parts = _partition(list(small.coords), _split_sizes(small.size, False))
    groups = []
    for v_part, w_part in zip(v_parts, w_parts):
        try:
            groups.append(PointSet.of(ring, list(v_part) + list(w_part)))
        except ValueError:
            raise _StageFailure("disjointness", "the two intersections share a point")

    # the union should postulate like the two curves force: r_i - 2 r_{i-c}
    # up to the phase transition, the full point count beyond it
    union = groups[0].merged(groups[1]).merged(groups[2])
    u_values = hilbert_of_points(union, dmax=2 * c + 2)
    for d, val in enumerate(u_values):
        want = _r(d) - 2 * _r(d - c) if 2 * (2 * c - d) ** 2 >= c * c - 1 else N
        if val != min(want, N):
            raise _StageFailure("union postulation", f"degree {d} came out {val}")

    socle_rows = []
    for part in groups:
        values = hilbert_of_points(part, dmax=2 * c + 2)
        if any(val != min(part.size, _r(d)) for d, val in enumerate(values)):
            raise _StageFailure("generic parts", f"a part of size {part.size} is special")
        ambient = perp(ring, points_ideal(part).piece(j), j)
        w = (rng.integers(0, ring.p, size=ambient.shape[0]) @ ambient) % ring.p
        if not w.any():
            raise _StageFailure("socle duals", "drew the zero dual form")
        ancestor = gorenstein_ancestor(ring.form(j, w))
        expected = tuple(min(_r(i), part.size, _r(j - i)) for i in range(j + 1))
        if ArtinianAlgebra(ancestor).hvector() != expected:
            raise _StageFailure("gorenstein ancestors", "a cap is not general enough")
        socle_rows.append((w, ancestor))

    stacked = np.vstack([w for w, _ in socle_rows])
    if gfp.rank(stacked, ring.p) != 3:
        raise _StageFailure("socle duals", "the three dual forms are dependent")
    meet = annihilator(ring, stacked, j)
    for d in range(j + 1):
        crossed = gfp.subspace_intersect(
            gfp.subspace_intersect(
                socle_rows[0][1].piece(d), socle_rows[1][1].piece(d), ring.p
            ),
            socle_rows[2][1].piece(d),
            ring.p,
        )
        same_dim = crossed.shape[0] == meet.piece_dim(d)
        if not (same_dim and gfp.subspace_contains(meet.piece(d), crossed, ring.p)):
            raise AssertionError(
                f"degree-{d} intersection of the caps disagrees with the annihilator"
            )
    return ArtinianAlgebra(meet).hvector()


def verify_partition_construction(
    c: int,
    a: int,
    seed: int,
    prime: int = DEFAULT_PRIME,
    attempts: int = 8,
    max_c: int = 5,
) -> PartitionReport:
    """Build a level algebra with Hilbert function H(c) and report the outcome.

    For a = 0 the algebra is a random type-3 level quotient of a pencil of
    degree-c forms. For admissible a > 0 it is the intersection of three
    random Gorenstein ancestors capping the parts of a balanced three-way
    split of N points spread over complete intersections of types
    (a, 2c-a) and (c-a, c-a), with every genericity assumption checked and
    degenerate draws redrawn. A final Hilbert function other than H(c) is
    reported with matches=False; a stage that keeps failing raises.
    """
    H = H_of_c(c)
    if c > max_c:
        raise ValueError(f"c = {c} is beyond the desk scale {max_c}; raise max_c to force")
    if a != 0 and (2 * a * a < c * c - 1 or a >= c):
        raise ValueError(f"divisor degree {a} is not admissible for c = {c}")
    ring = polynomial_ring(3, prime)
    N = max(H) if a else 0
    bound = 3 * _r(a) - 3 if a else 0
    sizes: tuple[tuple[int, int], ...] = ()
    if a:
        v_sizes = _split_sizes(N - (c - a) ** 2, True)
        w_sizes = _split_sizes((c - a) ** 2, False)
        sizes = tuple(zip(v_sizes, w_sizes))
        if any(v >= _r(a) for v in v_sizes):
            raise ValueError(f"a balanced split of {N} points needs parts below {_r(a)}")

    last_failure: _StageFailure | None = None
    hv: tuple[int, ...] = ()
    for attempt in range(1, attempts + 1):
        rng = np.random.default_rng(np.random.SeedSequence([seed, attempt]))
        try:
            if a == 0:
                hv = _pencil_quotient_hvector(rng, ring, c, seed=int(rng.integers(2**62)))
            else:
                hv = _assemble_from_points(rng, ring, c, a, H)
        except _StageFailure as failure:
            last_failure = failure
            continue
        if hv == H:
            return PartitionReport(
                c, a, hv, True, N, bound, N <= bound or a == 0, sizes, attempt
            )
    if not hv:
        raise RuntimeError(
            f"the construction never got past a degenerate stage in {attempts} tries "
            f"({last_failure})"
        )
    return PartitionReport(c, a, hv, False, N, bound, N <= bound or a == 0, sizes, attempts)
