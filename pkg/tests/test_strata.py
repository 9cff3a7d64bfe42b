"""Named witnesses, the two flat families, and the strata censuses.

Every witness must land on its frozen golden table, the families must
keep their Hilbert function constant while the Betti table jumps at
t = 0, and a full census must find exactly the registered strata.
"""

import json
import pathlib

import pytest

from levalg.artinian import ArtinianAlgebra
from levalg.betti import BettiTable, betti_leq, betti_table, cancellation_path
from levalg.ring import parse_form, polynomial_ring
from levalg.strata import (
    H1,
    H1_STRATEGIES,
    H2,
    H2_STRATEGIES,
    WITNESS_NAMES,
    deformation,
    h2_family_forms,
    strata_census,
    stratum_sample,
    witness,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def golden_table(name):
    return BettiTable.from_json((GOLDEN / f"betti_{name}.json").read_text())


@pytest.fixture(scope="module")
def ring():
    return polynomial_ring(3)


@pytest.mark.parametrize(
    "name, golden",
    [("H1_A1", "a1"), ("H1_A2", "a2"), ("H1_A3", "a3")],
)
def test_fixed_witnesses(name, golden):
    ideal = witness(name)
    algebra = ArtinianAlgebra(ideal)
    assert algebra.hvector() == H1
    assert algebra.is_level()
    assert betti_table(ideal) == golden_table(golden)


def test_max_betti_witness_dominates_every_level_table():
    ideal = witness("H1_maxBetti")
    algebra = ArtinianAlgebra(ideal)
    assert algebra.hvector() == H1
    assert not algebra.is_level()
    assert algebra.socle_dims() == (0, 0, 1, 4)
    table = betti_table(ideal)
    assert table == golden_table("max")
    for name in ("a1", "a2", "a3"):
        assert betti_leq(golden_table(name), table)
    for k in range(1, 7):
        assert table.get(1, k) == ideal.new_generator_dim(k)


@pytest.mark.parametrize(
    "name, golden",
    [("H2_C1", "c1"), ("H2_C2", "c2"), ("H2_B3", "b3"), ("H2_B4", "b4")],
)
def test_seeded_witnesses(name, golden):
    ideal = witness(name, seed=11)
    algebra = ArtinianAlgebra(ideal)
    assert algebra.hvector() == H2
    assert algebra.is_level()
    assert algebra.socle_type() == 3
    assert betti_table(ideal) == golden_table(golden)


def test_witness_argument_errors():
    with pytest.raises(ValueError, match="unknown witness"):
        witness("H3_A1")
    with pytest.raises(ValueError, match="needs a seed"):
        witness("H2_C1")
    assert set(WITNESS_NAMES) == {
        "H1_A1", "H1_A2", "H1_A3", "H1_maxBetti",
        "H2_C1", "H2_C2", "H2_B3", "H2_B4",
    }


def test_h1_family_jumps_only_at_zero(ring):
    marker = parse_form(ring, "y^2*z + y*z^2")
    for t in (0, 1, 2, 5, 31007):
        ideal = deformation("H1_family", t)
        assert ArtinianAlgebra(ideal).hvector() == H1
        assert ideal.contains(marker)
        expected = golden_table("a3") if t == 0 else golden_table("a1")
        assert betti_table(ideal) == expected


def test_h1_family_cancellation_paths():
    down = cancellation_path(golden_table("a3"), golden_table("a1"))
    assert down.ok and down.steps == ((2, 3),)
    across = cancellation_path(golden_table("a3"), golden_table("a2"))
    assert across.ok and across.steps == ((2, 4),)


def test_h2_family_is_flat_with_betti_jump(ring):
    h, f1, f2 = h2_family_forms(3)
    x, y = ring.variable(0), ring.variable(1)
    limit_generator = x * f2 - y * f1
    fibers = {t: deformation("H2_family", t, seed=3) for t in (0, 1, 2, 17)}
    profiles = {tuple(fibers[t].hilbert(8).values) for t in fibers}
    assert profiles == {(1, 3, 6, 8, 9, 9, 9, 9, 9)}
    for t, fiber in fibers.items():
        assert fiber.contains(limit_generator), t
    generic = betti_table(fibers[1])
    special = betti_table(fibers[0])
    assert generic.as_dict() == {(0, 0): 1, (1, 3): 2, (2, 6): 1}
    assert special.as_dict() == {(0, 0): 1, (1, 3): 2, (1, 4): 1, (2, 4): 1, (2, 6): 1}
    path = cancellation_path(special, generic)
    assert path.ok and path.steps == ((2, 4),)


def test_deformation_argument_errors():
    with pytest.raises(ValueError, match="unknown family"):
        deformation("H3_family", 1)
    with pytest.raises(ValueError, match="needs a seed"):
        deformation("H2_family", 1)


def test_stratum_sample_respects_registry():
    sample = stratum_sample("ci", seed=2)
    assert sample.algebra.hvector() == H1
    assert sample.algebra.socle_type() == 4
    with pytest.raises(ValueError, match="unknown strategy"):
        stratum_sample("grassmannian", seed=2)


def test_h1_census_finds_exactly_the_three_strata():
    census = strata_census(H1, samples_per_strategy=20, seed=5)
    observed = {table for table, _ in census.tables}
    assert observed == {golden_table("a1"), golden_table("a2"), golden_table("a3")}
    assert set(census.minima) == {golden_table("a1"), golden_table("a2")}
    assert census.strategy_stats == tuple((s, 20, 0) for s in H1_STRATEGIES)
    assert sum(count for _, count in census.tables) == 60


def test_h2_census_finds_exactly_the_four_strata():
    census = strata_census("H2", samples_per_strategy=15, seed=5)
    observed = {table for table, _ in census.tables}
    expected = {golden_table(n) for n in ("c1", "c2", "b3", "b4")}
    assert observed == expected
    assert set(census.minima) == {golden_table("c1")}
    assert census.strategy_stats == tuple((s, 15, 0) for s in H2_STRATEGIES)


def test_census_json_report():
    census = strata_census(H1, strategies=["ci"], samples_per_strategy=1, seed=9)
    assert census.table_count() == 1
    payload = json.loads(census.to_json())
    assert payload["H"] == [1, 3, 4, 4]
    assert payload["strategies"] == {"ci": {"samples": 1, "failures": 0}}
    assert payload["minima"] == 1
    [entry] = payload["tables"]
    assert entry["count"] == 1
    assert entry["betti"]["totals"] == [1, 6, 9, 4]


def test_census_argument_errors():
    with pytest.raises(ValueError, match="unknown Hilbert function token"):
        strata_census("H9")
    with pytest.raises(ValueError, match="no registered strategies"):
        strata_census((1, 2, 1))
    with pytest.raises(ValueError, match="targets H ="):
        strata_census(H1, strategies=["ci33"])
