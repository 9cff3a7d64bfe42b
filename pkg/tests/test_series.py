import json
import math
import os

import numpy as np
import pytest

from levalg.points import hilbert_of_points
from levalg.ring import polynomial_ring
from levalg.series import (
    H_of_c,
    alpha,
    alpha_is_integral,
    complete_intersection_points,
    component_count,
    component_count_bound_holds,
    min_admissible_a,
    pell_alphas,
    series_dimensions,
    verify_partition_construction,
)

# first members of the series, frozen by hand from the closed form
SERIES_TABLE = {
    3: (1, 3, 6, 8, 9, 3),
    4: (1, 3, 6, 10, 13, 15, 9, 3),
    5: (1, 3, 6, 10, 15, 19, 22, 18, 9, 3),
    6: (1, 3, 6, 10, 15, 21, 26, 30, 30, 18, 9, 3),
    7: (1, 3, 6, 10, 15, 21, 28, 34, 39, 43, 30, 18, 9, 3),
}


def test_series_values_match_the_frozen_table():
    for c, expected in SERIES_TABLE.items():
        assert H_of_c(c) == expected
    for c in range(3, 40):
        assert len(H_of_c(c)) == 2 * c
    with pytest.raises(ValueError):
        H_of_c(2)


def test_series_always_opens_maximally_and_closes_at_type_three():
    for c in range(3, 25):
        H = H_of_c(c)
        assert H[:3] == (1, 3, 6)
        assert H[-2:] == (9, 3)


def test_alpha_pins_the_phase_transition():
    assert alpha(3) == 4.0
    for c in range(3, 60):
        H = H_of_c(c)
        assert abs(H.index(max(H)) - alpha(c)) < 1
    with pytest.raises(ValueError):
        alpha(2)


def test_alpha_integrality_agrees_with_the_float_value():
    for c in range(3, 600):
        assert alpha_is_integral(c) == float(alpha(c)).is_integer()


def test_min_admissible_is_the_ceiling_of_the_root():
    for c in range(3, 200):
        assert min_admissible_a(c) == math.ceil(math.sqrt((c * c - 1) / 2))


def test_series_dimensions_against_hand_counts():
    assert series_dimensions(3, 0) == (16, 34)
    assert series_dimensions(3, 2) == (7, 34)
    assert series_dimensions(3, 1) == (10, None)
    assert series_dimensions(7, 5) == (28, 209)
    assert series_dimensions(7, 4) == (15 + 2 * 10 - 5, None)
    for bad in [(2, 0), (3, 3), (3, -1), (4, 7)]:
        with pytest.raises(ValueError):
            series_dimensions(*bad)


def test_component_dimension_defined_exactly_on_the_admissible_range():
    for c in range(3, 30):
        a_min = min_admissible_a(c)
        for a in range(c):
            defined = series_dimensions(c, a)[1] is not None
            assert defined == (a == 0 or a >= a_min)


def test_component_count_formula_and_lower_bound():
    assert component_count(3) == 2
    assert component_count(7) == 3
    for c in range(3, 201):
        assert component_count_bound_holds(c)
        assert component_count(c) >= (1 - 1 / math.sqrt(2)) * c
    for c in range(3, 40):
        defined = sum(series_dimensions(c, a)[1] is not None for a in range(c))
        assert component_count(c) == defined


def test_pell_alphas_walks_the_convergents():
    found = pell_alphas(4000)
    assert found == [(3, 2), (17, 12), (99, 70), (577, 408), (3363, 2378)]
    for c, d in found:
        assert c * c - 2 * d * d == 1
        assert alpha(c) == 2 * c - d
    # brute force over the whole range agrees with the convergent walk
    assert [c for c, _ in found] == [c for c in range(3, 4001) if alpha_is_integral(c)]
    assert pell_alphas(3) == [(3, 2)]
    with pytest.raises(ValueError):
        pell_alphas(2)


def test_ci_point_samples_have_the_koszul_postulation():
    ring = polynomial_ring(3)
    for d1, d2 in [(1, 1), (1, 4), (2, 4), (3, 3)]:
        ps = complete_intersection_points(np.random.default_rng(7), ring, d1, d2)
        assert ps.size == d1 * d2
        values = hilbert_of_points(ps, dmax=d1 + d2 + 2)
        for d, val in enumerate(values):
            r = lambda k: (k + 2) * (k + 1) // 2 if k >= 0 else 0
            assert val == r(d) - r(d - d1) - r(d - d2) + r(d - d1 - d2)
    again = complete_intersection_points(np.random.default_rng(7), ring, 2, 4)
    assert again.coords == complete_intersection_points(
        np.random.default_rng(7), ring, 2, 4
    ).coords
    with pytest.raises(ValueError):
        complete_intersection_points(np.random.default_rng(0), ring, 3, 2)


def test_partition_construction_realizes_the_series_at_desk_scale():
    report = verify_partition_construction(3, 2, seed=29)
    assert report.matches and report.hilbert == H_of_c(3)
    assert report.sample_size == 9
    assert report.generic_bound == 15 and report.bound_holds
    assert report.part_sizes == ((3, 0), (3, 0), (2, 1))

    pencil = verify_partition_construction(3, 0, seed=29)
    assert pencil.matches and pencil.hilbert == H_of_c(3)
    assert pencil.part_sizes == ()


def test_partition_construction_next_desk_size():
    report = verify_partition_construction(4, 3, seed=29)
    assert report.matches and report.hilbert == H_of_c(4)
    assert report.sample_size == 15 and report.generic_bound == 27


@pytest.mark.skipif(not os.environ.get("LEVALG_SLOW"), reason="set LEVALG_SLOW=1 to run")
def test_partition_construction_largest_desk_size():
    report = verify_partition_construction(5, 4, seed=29)
    assert report.matches and report.hilbert == H_of_c(5)
    assert verify_partition_construction(5, 0, seed=29).matches


def test_partition_construction_is_deterministic():
    assert verify_partition_construction(3, 2, seed=4) == verify_partition_construction(
        3, 2, seed=4
    )


def test_partition_report_json_fields():
    payload = json.loads(verify_partition_construction(3, 2, seed=29).to_json())
    assert payload["matches"] is True
    assert payload["hilbert"] == [1, 3, 6, 8, 9, 3]
    assert payload["sample_size"] == 9 and payload["generic_bound"] == 15
    assert payload["part_sizes"] == [[3, 0], [3, 0], [2, 1]]


def test_partition_construction_rejects_bad_parameters():
    with pytest.raises(ValueError):
        verify_partition_construction(3, 1, seed=0)  # below the admissible range
    with pytest.raises(ValueError):
        verify_partition_construction(2, 0, seed=0)
    with pytest.raises(ValueError):
        verify_partition_construction(3, 3, seed=0)
    with pytest.raises(ValueError):
        verify_partition_construction(6, 5, seed=0)  # beyond the default desk scale
