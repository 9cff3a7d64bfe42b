import numpy as np
import pytest

from levalg import gfp, ring as rng_mod
from levalg.ring import (
    Form,
    GradedIdeal,
    HilbertFunction,
    form_text,
    graded_dimension,
    monomial_basis,
    parse_form,
    parse_ideal,
    polynomial_ring,
    shift_span,
    substitute,
    substitution_matrix,
    validate_graded_sequence,
)

R3 = polynomial_ring(3)
R4 = polynomial_ring(4)


def test_graded_dimension():
    assert [graded_dimension(3, d) for d in range(6)] == [1, 3, 6, 10, 15, 21]
    assert [graded_dimension(4, d) for d in range(5)] == [1, 4, 10, 20, 35]
    assert graded_dimension(3, -1) == 0


def test_monomial_basis_grevlex_order():
    names = [m.text() for m in monomial_basis(3, 2)]
    assert names == ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]
    assert [m.text() for m in monomial_basis(3, 1)] == ["x", "y", "z"]
    assert len(monomial_basis(4, 3)) == 20


def test_form_parse_and_text_round_trip():
    f = parse_form(R3, "x^2 + 3*y*z")
    assert f.degree == 2
    assert form_text(f) == "x^2 + 3*y*z"
    g = parse_form(R3, form_text(f))
    assert g == f


def test_parse_juxtaposition_and_parens():
    f = parse_form(R3, "(x+y)^3")
    expected = parse_form(R3, "x^3 + 3x^2y + 3xy^2 + y^3")
    assert f == expected
    assert parse_form(R3, "2x*y") == parse_form(R3, "2*x*y")


def test_parse_rejects_inhomogeneous_and_junk():
    with pytest.raises(ValueError):
        parse_form(R3, "x^2 + y")
    with pytest.raises(ValueError):
        parse_form(R3, "x + q")
    with pytest.raises(ValueError):
        parse_form(R3, "x - x")  # zero has no degree


def test_dual_alphabet():
    f = parse_form(R3, "X^3 + 2*Y*Z^2", dual=True)
    assert f.degree == 3
    assert f.text(dual=True) == "X^3 + 2*Y*Z^2"
    g = parse_form(R4, "X4^2 + X*Y", dual=True)
    assert g.degree == 2


def test_form_arithmetic():
    x, y = R3.variable(0), R3.variable(1)
    assert (x + y) * (x - y) == parse_form(R3, "x^2 - y^2")
    assert (3 * x).coeffs[0] == 3
    f = R3.parse("x*y + z^2")
    assert (f - f).is_zero()


def test_mult_matrix_agrees_with_multiply():
    rng = np.random.default_rng(2)
    f = R3.random_form(rng, 2)
    g = R3.random_form(rng, 3)
    via_matrix = g.coeffs @ f.mult_matrix(3) % R3.p
    assert np.array_equal(via_matrix, (f * g).coeffs)


def test_ideal_piece_linear_syzygy_example():
    # (xy, xz): in degree 3 the six shifts span only a 5-dim space because
    # z*(xy) = y*(xz)
    ideal = parse_ideal(R3, "x*y, x*z")
    assert ideal.piece_dim(2) == 2
    assert ideal.piece_dim(3) == 5


def test_truncation_marker():
    ideal = parse_ideal(R3, "x^2, y^2 + m^4")
    assert ideal.truncation == 4
    assert len(ideal.generators) == 2
    assert ideal.piece_dim(4) == 15
    assert ideal.piece_dim(5) == 21
    assert ideal.text() == "x^2, y^2 + m^4"
    pure = parse_ideal(R3, "m^3")
    assert pure.truncation == 3 and not pure.generators
    assert pure.piece_dim(2) == 0 and pure.piece_dim(3) == 10


def test_truncation_must_attach_with_plus():
    with pytest.raises(ValueError):
        parse_ideal(R3, "x^2, m^4")


def test_ideal_text_round_trip():
    text = "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z"
    ideal = parse_ideal(R3, text)
    assert ideal.text() == text
    again = parse_ideal(R3, ideal.text())
    for d in range(6):
        assert np.array_equal(again.piece(d), ideal.piece(d))


def test_hilbert_function_of_witnesses():
    a1 = parse_ideal(R3, "x^2, y^2 + m^4")
    assert a1.hilbert(5).values == (1, 3, 4, 4, 0, 0)
    a2 = parse_ideal(R3, "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z")
    h = a2.hilbert(5)
    assert h.values == (1, 3, 4, 4, 0, 0)
    assert h.is_artinian
    assert h.socle_degree() == 3
    assert h.first_difference() == (1, 2, 1, 0, -4, 0)


def test_hilbert_stabilized_value():
    h = HilbertFunction.from_values([1, 4, 8, 12, 12, 12])
    assert h.stabilized_value == 12
    assert not h.is_artinian
    h2 = HilbertFunction.from_values([1, 4, 8, 12, 12])
    assert h2.stabilized_value is None


def test_new_generator_dims():
    a2 = parse_ideal(R3, "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z")
    assert [a2.new_generator_dim(d) for d in range(2, 5)] == [2, 1, 3]


def test_contains():
    ideal = parse_ideal(R3, "x*y, x*z + m^4")
    assert ideal.contains(R3.parse("x*y + x*z"))
    assert ideal.contains(R3.parse("x^2*y + 5*x*y*z"))
    assert not ideal.contains(R3.parse("y*z"))
    assert ideal.contains(R3.parse("y^2*z^2"))  # degree 4 is truncated away


def test_validate_graded_sequence():
    ideal = parse_ideal(R3, "x^2, y^2")
    spaces = [ideal.piece(d) for d in range(2, 5)]
    assert validate_graded_sequence(R3, spaces, 2)
    bad = [ideal.piece(2), np.eye(10, dtype=np.int64)[:1]]
    with pytest.raises(ValueError):
        validate_graded_sequence(R3, bad, 2)


def test_shift_span_matches_ideal_growth():
    ideal = parse_ideal(R3, "x^2 - y*z")
    span = shift_span(R3, ideal.piece(2), 2)
    assert gfp.rank(span, R3.p) == 3
    assert np.array_equal(gfp.rref(span, R3.p)[0], ideal.piece(3))


def test_substitution_identity_and_gl_invariance():
    f = R3.parse("x^2*y + 2*z^3")
    ident = np.eye(3, dtype=np.int64)
    assert substitute(f, ident, R3) == f
    rng = np.random.default_rng(9)
    g = gfp.random_invertible(rng, 3, R3.p)
    ideal = parse_ideal(R3, "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z")
    moved = ideal.transformed(g)
    assert moved.hilbert(5).values == ideal.hilbert(5).values


def test_substitution_matrix_is_multiplicative():
    rng = np.random.default_rng(4)
    g = gfp.random_invertible(rng, 3, R3.p)
    f1 = R3.random_form(rng, 2)
    f2 = R3.random_form(rng, 1)
    lhs = substitute(f1 * f2, g, R3)
    rhs = substitute(f1, g, R3) * substitute(f2, g, R3)
    assert lhs == rhs


def test_eliminating_substitution():
    # send w to -x - y - z, mapping the 4-variable ring onto the 3-variable one
    mat = np.vstack([np.eye(3, dtype=np.int64), -np.ones(3, dtype=np.int64) % R3.p])
    f = R4.parse("x*w + y^2")
    assert substitute(f, mat, R3) == R3.parse("-x^2 - x*y - x*z + y^2")


def test_zero_ideal_and_empty_pieces():
    zero = GradedIdeal(R3)
    assert zero.piece_dim(3) == 0
    assert zero.hilbert(3).values == (1, 3, 6, 10)


def test_pieces_mode():
    src = parse_ideal(R3, "x^2, y^2")
    pieces = {d: src.piece(d) for d in range(0, 4)}
    ideal = GradedIdeal.from_pieces(R3, pieces, full_from=4)
    assert ideal.piece_dim(3) == src.piece_dim(3)
    assert ideal.piece_dim(4) == 15
    with pytest.raises(ValueError):
        GradedIdeal.from_pieces(R3, {2: src.piece(2)}).piece(3)
