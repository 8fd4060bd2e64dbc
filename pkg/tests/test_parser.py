from fractions import Fraction

import pytest

from newton_contact.curves import parse_curve
from newton_contact.gaussian import GaussianRational
from newton_contact.mixedpoly import MixedPolynomial
from newton_contact.parser import ParseError, parse


def test_modulus_expands_to_product_with_conjugate():
    F = parse("|z1 - z2|^2")
    assert F == parse("z1*conj(z1) - z1*conj(z2) - z2*conj(z1) + z2*conj(z2)")


def test_real_and_imaginary_parts():
    assert parse("2*Re(z1)") == parse("z1 + conj(z1)")
    assert parse("2*Im(z1)") == parse("-i*z1 + i*conj(z1)")


def test_rational_and_complex_coefficients():
    F = parse("15/7*|z1|^2 + (1+2*i)*z1^2")
    assert F.coefficient((1,), (1,)) == GaussianRational(Fraction(15, 7))
    assert F.coefficient((2,), (0,)) == GaussianRational(1, 2)


def test_variable_names_and_w():
    F = parse("Re(w) + |z1|^2")
    assert F.names == ("z1", "w")


def test_higher_index_sets_nvars():
    assert parse("z3").nvars == 3


def test_implicit_multiplication_is_not_silent():
    with pytest.raises(ParseError):
        parse("z1 z2 +")


@pytest.mark.parametrize("text", ["", "|z1", "Re(z1", "z1^", "z1 ^ -2", "3/0", "foo(z1)", "z1 $ 2"])
def test_errors_carry_positions(text):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert 0 <= e.value.position <= len(text)


def test_curve_literal():
    g = parse_curve("(t^2, t^3 + 2*t^4, 0)")
    assert g.components[1] == {3: GaussianRational(1), 4: GaussianRational(2)}
    assert g.components[2] == {}
    assert g.ord() == 2


@pytest.mark.parametrize("text", ["t^2, t^3", "(1 + t, t)", "(conj(t), t)", "(0, 0)", "(t,, t)"])
def test_bad_curves(text):
    with pytest.raises(ParseError):
        parse_curve(text)


def test_canonical_text_is_stable():
    F = parse("|z1|^2 + |z2|^4")
    assert parse(F.to_text()) == F
    assert isinstance(F, MixedPolynomial)
