import pickle

import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import brute_ord_along, jets, mixed_polys, modulus_sum
from newton_contact.contact import axis_curve, leading_asymptotics, order_of_contact, \
    sup_contact_under_nondegeneracy
from newton_contact.curves import JetCurve, MonomialCurve, embedded_truncation, leading_truncation, \
    monomial_jet, parse_curve, profile
from newton_contact.gaussian import INF
from newton_contact.mixedpoly import substitute_curve
from newton_contact.nondegen import check_all
from newton_contact.parser import parse
from newton_contact.polyhedron import newton_distance, of, support_min


def test_profile_and_truncation():
    g = parse_curve("(t^2 + t^5, 0, 3*t)")
    p = profile(g)
    assert p.a_hat == (2, INF, 1) and p.I == (0, 2)
    trunc, I = leading_truncation(g)
    assert trunc.a == (2, 1) and I == (0, 2)
    assert embedded_truncation(g) == parse_curve("(t^2, 0, 3*t)")


def test_monomial_curves():
    c = MonomialCurve((1, 2), (2, 3))
    assert c.jet() == parse_curve("(t^2, 2*t^3)")
    assert c.scaled(2).a == (4, 6)
    with pytest.raises(ValueError):
        MonomialCurve((0, 1), (1, 1))
    with pytest.raises(ValueError):
        JetCurve([{}, {}])
    assert pickle.loads(pickle.dumps(c.jet())) == c.jet()


def test_cusp_is_contained_in_the_zero_set():
    F = parse("|z1^3 - z2^2|^2")
    rep = order_of_contact(F, parse_curve("(t^2, t^3)"))
    assert rep.ord_composed == INF and rep.contact_order == INF
    assert rep.l_lower_bound == 12 and rep.distance == 6


def test_perturbed_cusp_is_not_tight():
    F = parse("|z1^3 - z2^2|^2")
    rep = order_of_contact(F, parse_curve("(t^2, t^3 + t^4)"))
    assert rep.ord_composed == 14 and rep.contact_order == 7
    assert not rep.tight


def test_nondegenerate_diagonal_is_tight():
    rep = order_of_contact(parse("|z1|^2 + |z2|^4"), parse_curve("(t, t)"))
    assert rep.tight and rep.contact_order == 2


def test_axis_curve():
    assert axis_curve(3, 1) == parse_curve("(0, t, 0)")


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        order_of_contact(parse("|z1|^2 + |z2|^2"), parse_curve("(t)"))


def test_supremum_needs_a_nondegenerate_verdict():
    F = parse("|z1|^2 + |z2|^4")
    assert sup_contact_under_nondegeneracy(F, check_all(F)) == 4
    G = parse("|z1 - z2|^2 + |z2|^4")
    with pytest.raises(ValueError):
        sup_contact_under_nondegeneracy(G, check_all(G))


@settings(max_examples=30)
@given(mixed_polys(n=2, hi=1, max_terms=4, real=True), jets(2, max_deg=3))
def test_composition_matches_point_evaluation(F, gamma):
    assert substitute_curve(F, gamma).ord() == brute_ord_along(F, gamma)


@given(mixed_polys(n=3, hi=2, max_terms=5), jets(3, max_deg=4))
def test_newton_inequalities(F, gamma):
    assume(not F.is_zero())
    rep = order_of_contact(F, gamma)
    assert rep.ord_composed >= rep.l_lower_bound
    assert rep.contact_order >= rep.distance


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4), jets(2))
def test_equalities_on_positive_sums(vs, gamma):
    vs = [v for v in vs if any(v)]
    assume(vs)
    F = modulus_sum(2, vs)
    rep = order_of_contact(F, gamma)
    P = of(F)
    l, _, _ = support_min(P, profile(gamma).a_hat)
    d, _ = newton_distance(P, profile(gamma).a_hat)
    assert rep.ord_composed == l and rep.contact_order == d
    if l != INF:
        data = leading_asymptotics(F, gamma)
        assert data.level == l and not data.leading_part.is_zero()


def test_leading_part_is_homogeneous():
    F = parse("|z1|^4 + |z2|^6 + Re(z1^2*conj(z2)^3)")
    data = leading_asymptotics(F, monomial_jet([1, 1], [3, 2]))
    assert data.level == 12
    assert all(p + q == 12 for (p,), (q,) in data.leading_part.terms)


@given(mixed_polys(n=2, hi=2, max_terms=5, real=True), jets(2, max_deg=4))
def test_residual_is_of_higher_order(F, gamma):
    assume(not F.is_zero())
    try:
        data = leading_asymptotics(F, gamma)
    except ValueError:  # flat restriction: nothing to compare
        return
    residual = substitute_curve(F, gamma) - data.leading_part
    assert residual.ord() >= data.level + 1
