"""Named witness ideals, deformation families, and Betti-strata censuses.

The two Hilbert functions under study are H1 = (1,3,4,4) and
H2 = (1,3,6,8,9,3).  Each admits a handful of Betti strata, and each
stratum has a registered construction: a random constraint ideal whose
degree-j perp hosts the dual space of a level quotient.  `witness` pins
down one named representative per stratum, `deformation` exposes the two
flat families connecting strata, and `strata_census` samples every
registered construction and tallies the Betti tables that show up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from levalg import gfp
from levalg.apolarity import LevelSample, inverse_system_ideal, random_level_quotient
from levalg.betti import BettiTable, betti_table, euler_identity_holds, poset_minima
from levalg.gfp import DEFAULT_PRIME, random_invertible
from levalg.ring import Form, GradedIdeal, PolyRing, parse_form, parse_ideal, polynomial_ring

H1 = (1, 3, 4, 4)
H2 = (1, 3, 6, 8, 9, 3)

_MONOMIAL_WITNESSES = {
    "H1_A1": "x^2, y^2 + m^4",
    "H1_A2": "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z",
    "H1_A3": "x^2, x*y, y^3, x*z^3, y^2*z^2, y*z^3, z^4",
}

# Dual generators for the maximal Betti table with Hilbert function H1.
# The first four are powers of linear forms at (1,0,0), (0,1,0), (1,1,0),
# (1,2,0); under the contraction pairing the degree-d dual of evaluation
# at q is sum(q^a X^a) over |a| = d, so the coefficients are plain powers.
_MAX_BETTI_DUALS = (
    "X^3",
    "Y^3",
    "X^3 + X^2*Y + X*Y^2 + Y^3",
    "X^3 + 2*X^2*Y + 4*X*Y^2 + 8*Y^3",
    "Z^2",
)

WITNESS_NAMES = (
    "H1_A1",
    "H1_A2",
    "H1_A3",
    "H1_maxBetti",
    "H2_C1",
    "H2_C2",
    "H2_B3",
    "H2_B4",
)


def _nonzero_form(rng: np.random.Generator, ring: PolyRing, degree: int) -> Form:
    while True:
        f = ring.random_form(rng, degree)
        if not f.is_zero():
            return f


def _independent_forms(rng: np.random.Generator, ring: PolyRing, degree: int, count: int):
    """Random forms of one degree that are linearly independent."""
    for _ in range(64):
        forms = [ring.random_form(rng, degree) for _ in range(count)]
        stacked = np.stack([f.coeffs for f in forms])
        if gfp.rank(stacked, ring.p) == count:
            return forms
    raise RuntimeError("could not draw independent forms")


def _h1_ci(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    return GradedIdeal.from_generators(ring, _independent_forms(rng, ring, 2, 2))


def _h1_line_point(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    ell, rho = _independent_forms(rng, ring, 1, 2)
    return GradedIdeal.from_generators(ring, [ell * ell, ell * rho])


def _h1_stratum3(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    # Normal form (xy, xz, f) with f a cubic in y, z alone, pushed through
    # a random change of coordinates.
    x, y, z = (ring.variable(k) for k in range(3))
    f = ring.zero_form(3)
    while f.is_zero():
        coeffs = rng.integers(0, ring.p, size=4)
        f = ring.zero_form(3)
        for a, c in enumerate(coeffs):
            f = f + int(c) * ring.monomial_form((0, 3 - a, a))
    base = GradedIdeal.from_generators(ring, [x * y, x * z, f])
    return base.transformed(random_invertible(rng, 3, ring.p))


def _h2_ci33(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    return GradedIdeal.from_generators(ring, _independent_forms(rng, ring, 3, 2))


def _h2_xiv(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    xi, v = _independent_forms(rng, ring, 1, 2)
    quartic = _nonzero_form(rng, ring, 4)
    return GradedIdeal.from_generators(ring, [xi * xi * xi, xi * xi * v, quartic])


def _h2_ell_ci22(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    ell = _nonzero_form(rng, ring, 1)
    g, h = _independent_forms(rng, ring, 2, 2)
    return GradedIdeal.from_generators(ring, [ell * g, ell * h])


def _h2_beta4(rng: np.random.Generator, ring: PolyRing) -> GradedIdeal:
    ell, rho = _independent_forms(rng, ring, 1, 2)
    v1, v2 = _independent_forms(rng, ring, 1, 2)
    a = ring.random_form(rng, 2)
    b = ring.random_form(rng, 2)
    q3 = a * v1 + b * v2
    while q3.is_zero():
        q3 = ring.random_form(rng, 2) * v1 + ring.random_form(rng, 2) * v2
    return GradedIdeal.from_generators(ring, [ell * rho * v1, ell * rho * v2, ell * q3])


@dataclass(frozen=True)
class _Strategy:
    name: str
    target: tuple[int, ...]
    socle_degree: int
    socle_type: int
    builder: Callable[[np.random.Generator, PolyRing], GradedIdeal]


_STRATEGIES = {
    "ci": _Strategy("ci", H1, 3, 4, _h1_ci),
    "line_point": _Strategy("line_point", H1, 3, 4, _h1_line_point),
    "stratum3": _Strategy("stratum3", H1, 3, 4, _h1_stratum3),
    "ci33": _Strategy("ci33", H2, 5, 3, _h2_ci33),
    "xiV": _Strategy("xiV", H2, 5, 3, _h2_xiv),
    "ell_ci22": _Strategy("ell_ci22", H2, 5, 3, _h2_ell_ci22),
    "beta4": _Strategy("beta4", H2, 5, 3, _h2_beta4),
}

H1_STRATEGIES = ("ci", "line_point", "stratum3")
H2_STRATEGIES = ("ci33", "xiV", "ell_ci22", "beta4")

_STRATEGY_INDEX = {name: k for k, name in enumerate(_STRATEGIES)}


def _draw(strat: _Strategy, rng: np.random.Generator, ring: PolyRing) -> LevelSample:
    constraint = strat.builder(rng, ring)
    return random_level_quotient(
        ring,
        strat.socle_degree,
        strat.socle_type,
        seed=int(rng.integers(2**62)),
        constraint=constraint,
        target_h=strat.target,
    )


def stratum_sample(strategy: str, seed: int, prime: int = DEFAULT_PRIME) -> LevelSample:
    """One random level quotient from a registered stratum construction."""
    if strategy not in _STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; known: {sorted(_STRATEGIES)}")
    strat = _STRATEGIES[strategy]
    ring = polynomial_ring(3, prime)
    rng = np.random.default_rng(np.random.SeedSequence([seed, _STRATEGY_INDEX[strategy]]))
    return _draw(strat, rng, ring)


def witness(name: str, seed: int | None = None, prime: int = DEFAULT_PRIME) -> GradedIdeal:
    """A named representative ideal.  The H1_* witnesses are fixed ideals;
    the H2_* ones carry a random dual space and need a seed."""
    ring = polynomial_ring(3, prime)
    if name in _MONOMIAL_WITNESSES:
        return parse_ideal(ring, _MONOMIAL_WITNESSES[name])
    if name == "H1_maxBetti":
        duals = [parse_form(ring, text, dual=True) for text in _MAX_BETTI_DUALS]
        return inverse_system_ideal(ring, duals)
    if name in ("H2_C1", "H2_C2", "H2_B3", "H2_B4"):
        if seed is None:
            raise ValueError(f"witness {name} is randomized and needs a seed")
        if name == "H2_C2":
            constraint = parse_ideal(ring, "x^3, x^2*y, z^4")
            return random_level_quotient(
                ring, 5, 3, seed=seed, constraint=constraint, target_h=H2
            ).ideal
        strategy = {"H2_C1": "ci33", "H2_B3": "ell_ci22", "H2_B4": "beta4"}[name]
        return stratum_sample(strategy, seed, prime=prime).ideal
    raise ValueError(f"unknown witness {name!r}; known: {list(WITNESS_NAMES)}")


def h2_family_forms(seed: int, prime: int = DEFAULT_PRIME) -> tuple[Form, Form, Form]:
    """The quadric h and cubics f1, f2 behind a seeded H2_family draw."""
    ring = polynomial_ring(3, prime)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    h = _nonzero_form(rng, ring, 2)
    return h, ring.random_form(rng, 3), ring.random_form(rng, 3)


def deformation(name: str, t: int, seed: int | None = None, prime: int = DEFAULT_PRIME) -> GradedIdeal:
    """Fiber of a named flat family at parameter t.

    t = 0 returns the explicit limit ideal, with the extra generator the
    family forces in the limit written out, not a computed flat limit.
    """
    ring = polynomial_ring(3, prime)
    tc = int(t) % prime
    if name == "H1_family":
        if tc == 0:
            return parse_ideal(ring, "x*y, x*z, y^2*z + y*z^2 + m^4")
        return parse_ideal(ring, f"x*y, x*z + {tc}*y*z + {tc}*z^2 + m^4")
    if name == "H2_family":
        if seed is None:
            raise ValueError("H2_family draws h, f1, f2 at random and needs a seed")
        h, f1, f2 = h2_family_forms(seed, prime=prime)
        x, y = ring.variable(0), ring.variable(1)
        if tc == 0:
            return GradedIdeal.from_generators(ring, [x * h, y * h, x * f2 - y * f1])
        return GradedIdeal.from_generators(ring, [x * h + tc * f1, y * h + tc * f2])
    raise ValueError(f"unknown family {name!r}; known: H1_family, H2_family")


@dataclass(frozen=True)
class StrataCensus:
    """Tally of the Betti tables observed across stratum constructions."""

    target: tuple[int, ...]
    samples_per_strategy: int
    strategy_stats: tuple[tuple[str, int, int], ...]
    tables: tuple[tuple[BettiTable, int], ...]
    minima: tuple[BettiTable, ...]

    def table_count(self) -> int:
        return len(self.tables)

    def frequencies(self) -> dict[BettiTable, int]:
        return dict(self.tables)

    def to_json(self) -> str:
        payload = {
            "H": list(self.target),
            "strategies": {
                name: {"samples": samples, "failures": failures}
                for name, samples, failures in self.strategy_stats
            },
            "tables": [
                {"betti": json.loads(table.to_json()), "count": count}
                for table, count in self.tables
            ],
            "minima": len(self.minima),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


_KNOWN_TARGETS = {"H1": H1, "H2": H2}


def strata_census(
    H,
    strategies=None,
    samples_per_strategy: int = 100,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
) -> StrataCensus:
    """Sample every registered construction for H and tally Betti tables.

    A draw whose annihilator misses the target Hilbert function counts as
    a failure for its strategy and is excluded from the tally."""
    if isinstance(H, str):
        if H not in _KNOWN_TARGETS:
            raise ValueError(f"unknown Hilbert function token {H!r}")
        target = _KNOWN_TARGETS[H]
    else:
        target = tuple(int(v) for v in H)
    if strategies is None:
        strategies = [name for name in _STRATEGIES if _STRATEGIES[name].target == target]
        if not strategies:
            raise ValueError(f"no registered strategies for H = {target}")
    ring = polynomial_ring(3, prime)
    counts: dict[BettiTable, int] = {}
    stats = []
    for name in strategies:
        if name not in _STRATEGIES:
            raise ValueError(f"unknown strategy {name!r}")
        strat = _STRATEGIES[name]
        if strat.target != target:
            raise ValueError(f"strategy {name!r} targets H = {strat.target}, not {target}")
        failures = 0
        for i in range(samples_per_strategy):
            rng = np.random.default_rng(
                np.random.SeedSequence([seed, _STRATEGY_INDEX[name], i])
            )
            try:
                sample = _draw(strat, rng, ring)
            except RuntimeError:
                failures += 1
                continue
            table = betti_table(sample.ideal)
            if not euler_identity_holds(table, list(target)):
                raise RuntimeError(f"census table fails the Euler identity for {target}")
            counts[table] = counts.get(table, 0) + 1
        stats.append((name, samples_per_strategy, failures))
    ordered = tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0].entries)))
    minima = tuple(sorted(poset_minima([t for t, _ in ordered]), key=lambda t: t.entries))
    return StrataCensus(target, samples_per_strategy, tuple(stats), ordered, minima)
