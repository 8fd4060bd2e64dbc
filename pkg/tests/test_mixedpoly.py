import pickle
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import gauss, jets, mixed_polys
from newton_contact.gaussian import GaussianRational, INF, ext_to_json
from newton_contact.mixedpoly import (MixedPolynomial, TermClass, face_part, principal_part,
                                      pure_mixed_split, restrict, substitute_curve, term_class)
from newton_contact.parser import parse
from newton_contact.polyhedron import of


def test_gaussian_arithmetic_is_exact():
    a = GaussianRational(Fraction(1, 3), 2)
    b = GaussianRational(-1, Fraction(1, 2))
    assert (a * b) / b == a
    assert a * a.inverse() == 1
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).is_real()
    assert GaussianRational(0, 1) ** 2 == -1


@given(gauss, gauss, gauss)
def test_gaussian_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * b).norm() == a.norm() * b.norm()


def test_ext_json():
    assert ext_to_json(INF) == "inf"
    assert ext_to_json(Fraction(7, 2)) == "7/2"
    assert ext_to_json(Fraction(4, 2)) == 2


def test_support_uses_exponent_sums():
    F = parse("z1^2*conj(z2) + 3*|z1|^2")
    assert F.support() == frozenset({(2, 1), (2, 0)})


def test_term_classes():
    assert term_class((2, 0), (0, 0)) is TermClass.PURE
    assert term_class((0, 0), (0, 3)) is TermClass.PURE
    assert term_class((1, 0), (0, 1)) is TermClass.MIXED


def test_pure_mixed_split_recombines():
    F = parse("Re(z1^3) + |z1|^2*Re(z2) + |z2|^4")
    pure, mixed = pure_mixed_split(F)
    assert pure + mixed == F
    assert pure == parse("Re(z1^3)", names=F.names)


def test_restrict_drops_terms_with_other_variables():
    F = parse("|z1|^2 + |z2|^4 + |z1*z2|^2 + z3*conj(z3)")
    G = restrict(F, [0, 1])
    assert G.nvars == 2
    assert G == parse("|z1|^2 + |z2|^4 + |z1*z2|^2")


def test_face_part_and_principal_part():
    F = parse("|z1|^4 - 2*|z1*z2|^2 + |z2|^4 + |z1|^6 + z1^3*conj(z2)^3")
    P = of(F)
    edge = P.face_with_vertices([(4, 0), (0, 4)])
    assert face_part(F, edge) == parse("|z1|^4 - 2*|z1*z2|^2 + |z2|^4")
    assert principal_part(F) == face_part(F, edge)


def test_substitute_curve_by_hand():
    F = parse("|z1|^2 - z2*conj(z1)")
    # z1 = t, z2 = t: |t|^2 - t conj(t) = 0
    assert substitute_curve(F, [{1: GaussianRational(1)}, {1: GaussianRational(1)}]).is_zero()
    out = substitute_curve(F, [{1: GaussianRational(1)}, {2: GaussianRational(1)}])
    assert out == MixedPolynomial(1, {((1,), (1,)): 1, ((2,), (1,)): -1}, ("t",))


@given(mixed_polys(n=2), mixed_polys(n=2), jets(2))
def test_substitution_is_a_ring_map(F, G, gamma):
    lhs = substitute_curve(F * G + F, gamma)
    rhs = substitute_curve(F, gamma) * substitute_curve(G, gamma) + substitute_curve(F, gamma)
    assert lhs == rhs


@given(mixed_polys(real=True))
def test_real_part_of_real_polynomial(F):
    assert F.is_real()
    assert F.conj() == F
    assert F.real_part() == F


@given(mixed_polys())
def test_text_round_trip(F):
    assert parse(F.to_text(), names=F.names) == F


@given(mixed_polys())
def test_json_round_trip_and_pickle(F):
    assert MixedPolynomial.from_json(F.to_json()) == F
    assert pickle.loads(pickle.dumps(F)) == F


@given(mixed_polys(n=2), st.lists(gauss, min_size=2, max_size=2), st.lists(gauss, min_size=2, max_size=2))
def test_evaluation_of_products(F, p, q):
    G = F * F.conj()
    assert G.evaluate(p) == F.evaluate(p) * F.evaluate(p).conjugate()


def test_mismatched_variables_rejected():
    with pytest.raises(ValueError):
        MixedPolynomial(2, {((1,), (0,)): 1})
    with pytest.raises(ValueError):
        parse("z1") + parse("z1 + z2")
