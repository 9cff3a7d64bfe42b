"""Contraction pairing, annihilators, and random inverse systems."""

import numpy as np
import pytest

from levalg import gfp
from levalg.apolarity import (
    annihilator,
    catalecticant_profile,
    contract,
    gorenstein_ancestor,
    inverse_system_ideal,
    perp,
    random_level_quotient,
    socle_dual_space,
)
from levalg.artinian import ArtinianAlgebra
from levalg.ring import GradedIdeal, multiply, parse_form, parse_ideal, polynomial_ring


@pytest.fixture(scope="module")
def ring():
    return polynomial_ring(3)


def test_contraction_shifts_exponents(ring):
    w = parse_form(ring, "X^2*Y", dual=True)
    assert contract(parse_form(ring, "x"), w) == parse_form(ring, "X*Y", dual=True)
    assert contract(parse_form(ring, "y"), w) == parse_form(ring, "X^2", dual=True)
    assert contract(parse_form(ring, "z"), w).is_zero()
    assert contract(parse_form(ring, "x*y"), w) == parse_form(ring, "X", dual=True)
    assert contract(parse_form(ring, "x^2*y"), w) == ring.form(0, [1])
    with pytest.raises(ValueError):
        contract(ring.random_form(np.random.default_rng(0), 4), w)


def test_contraction_is_adjoint_to_multiplication(ring):
    rng = np.random.default_rng(3)
    for _ in range(10):
        f = ring.random_form(rng, 2)
        g = ring.random_form(rng, 3)
        w = ring.random_form(rng, 5)
        lhs = int(g.coeffs @ contract(f, w).coeffs) % ring.p
        rhs = int(multiply(g, f).coeffs @ w.coeffs) % ring.p
        assert lhs == rhs


def test_monomial_gorenstein_ancestor(ring):
    ideal = gorenstein_ancestor(parse_form(ring, "X*Y*Z", dual=True))
    reference = parse_ideal(ring, "x^2, y^2, z^2")
    for d in range(4):
        assert np.array_equal(ideal.piece(d), reference.piece(d))
    algebra = ArtinianAlgebra(ideal)
    assert algebra.hvector() == (1, 3, 3, 1)
    assert algebra.is_level() and algebra.socle_type() == 1


def test_power_ancestor_is_a_line(ring):
    ideal = gorenstein_ancestor(parse_form(ring, "X^3", dual=True))
    assert ArtinianAlgebra(ideal).hvector() == (1, 1, 1, 1)
    piece = ideal.piece(1)
    expected = np.array([[0, 1, 0], [0, 0, 1]], dtype=np.int64)
    assert np.array_equal(piece, expected)


def test_mixed_degree_inverse_system(ring):
    duals = [parse_form(ring, "X^3", dual=True), parse_form(ring, "Y^2", dual=True)]
    ideal = inverse_system_ideal(ring, duals)
    assert ArtinianAlgebra(ideal).hvector() == (1, 2, 2, 1)
    with pytest.raises(ValueError):
        inverse_system_ideal(ring, [])
    with pytest.raises(ValueError):
        inverse_system_ideal(ring, [ring.zero_form(2)])


def test_annihilator_quotients_are_level(ring):
    rng = np.random.default_rng(14)
    for t in (1, 2, 3):
        rows = np.vstack([ring.random_form(rng, 4).coeffs for _ in range(t)])
        ideal = annihilator(ring, rows, 4)
        algebra = ArtinianAlgebra(ideal)
        assert algebra.is_level()
        assert algebra.socle_type() == t
        assert algebra.socle_degree == 4
        assert catalecticant_profile(ring, rows, 4) == algebra.hvector()


def test_perp_dimensions(ring):
    ideal = parse_ideal(ring, "x^2, y^2")
    space = perp(ring, ideal.piece(3), 3)
    assert space.shape == (4, 10)
    assert perp(ring, np.zeros((0, 10), dtype=np.int64), 3).shape == (10, 10)
    with pytest.raises(ValueError):
        perp(ring, np.ones((1, 7), dtype=np.int64), 3)


def test_full_perp_recovers_truncated_witness(ring):
    constraint = GradedIdeal.from_generators(
        ring, (parse_form(ring, "x^2"), parse_form(ring, "y^2"))
    )
    sample = random_level_quotient(ring, 3, 4, seed=9, constraint=constraint)
    witness = parse_ideal(ring, "x^2, y^2 + m^4")
    for d in range(5):
        assert np.array_equal(sample.ideal.piece(d), witness.piece(d))
    assert sample.algebra.hvector() == (1, 3, 4, 4)


def test_unconstrained_generic_type_four(ring):
    sample = random_level_quotient(ring, 3, 4, seed=2)
    assert sample.algebra.hvector() == (1, 3, 6, 4)
    assert sample.attempts == 1


def test_constrained_sample_contains_constraint(ring):
    rng = np.random.default_rng(21)
    constraint = GradedIdeal.from_generators(
        ring, (ring.random_form(rng, 3), ring.random_form(rng, 3))
    )
    sample = random_level_quotient(
        ring, 5, 3, seed=4, constraint=constraint, target_h=(1, 3, 6, 8, 9, 3)
    )
    assert sample.algebra.hvector() == (1, 3, 6, 8, 9, 3)
    for d in range(6):
        assert gfp.subspace_contains(sample.ideal.piece(d), constraint.piece(d), ring.p)


def test_duality_round_trip_on_level_witness(ring):
    ideal = parse_ideal(ring, "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z")
    recovered = annihilator(ring, socle_dual_space(ideal, 3), 3)
    for d in range(5):
        assert np.array_equal(recovered.piece(d), ideal.piece(d))


def test_round_trip_grows_for_non_level(ring):
    ideal = parse_ideal(ring, "x^2, x*y, x*z + m^4")
    recovered = annihilator(ring, socle_dual_space(ideal, 3), 3)
    assert ideal.piece_dim(1) == 0
    assert recovered.piece_dim(1) == 1
    assert recovered.contains(parse_form(ring, "x"))


def test_small_characteristic_rejected():
    small = polynomial_ring(3, p=5)
    rows = np.eye(small.dim(5), dtype=np.int64)[:1]
    with pytest.raises(ValueError):
        annihilator(small, rows, 5)
    ok = annihilator(small, np.eye(small.dim(4), dtype=np.int64)[:1], 4)
    assert ok.piece_dim(4) == small.dim(4) - 1


def test_retry_budget_and_bad_arguments(ring):
    with pytest.raises(ValueError):
        random_level_quotient(ring, 3, 11, seed=0)
    with pytest.raises(ValueError):
        random_level_quotient(ring, 3, 0, seed=0)
    with pytest.raises(RuntimeError):
        random_level_quotient(ring, 3, 4, seed=0, target_h=(1, 3, 4, 4), attempts=3)
