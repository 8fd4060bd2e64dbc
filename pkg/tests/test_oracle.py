import random

import pytest
from hypothesis import given, settings, strategies as st

from newton_contact.contact import order_of_contact
from newton_contact.curves import parse_curve
from newton_contact.gaussian import INF
from newton_contact.oracle import (SearchConfig, THREADS_ENV, enumerate_directions, env_workers,
                                   evaluate_directions, formula_crosscheck, merge_results,
                                   sup_contact_lower_bound)
from newton_contact.parser import parse

SHEAR = parse("|z1 - z2|^2 + |z2|^4")
SMALL = SearchConfig(max_exponent=3, jet_degree=6)


def test_best_curve_recomputes_to_the_reported_order():
    res = sup_contact_lower_bound(SHEAR, SMALL)
    assert res.best == 4 and res.curve == parse_curve("(t, t)")
    assert order_of_contact(SHEAR, res.curve).contact_order == res.best
    assert not res.infinite_flag


def test_cusp_zero_curve():
    F = parse("2*Re(z3) + |z1^3 - z2^2|^2")
    res = sup_contact_lower_bound(F, SearchConfig(max_exponent=3))
    assert res.infinite_flag and res.best == INF
    assert res.zero_curve == parse_curve("(t^2, t^3, 0)")
    reg = sup_contact_lower_bound(F, SearchConfig(max_exponent=3, reg_only=True))
    assert reg.best == 6 and not reg.infinite_flag


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_any_partition_merges_to_the_same_result(seed, k):
    F = parse("|z1 - z2|^2 + |z2|^4 + Re(z1^2*conj(z3)) + |z3|^2")
    dirs, _ = enumerate_directions(3, SMALL)
    whole = evaluate_directions(F, dirs, SMALL)
    rng = random.Random(seed)
    parts = [[] for _ in range(k)]
    for d in dirs:
        parts[rng.randrange(k)].append(d)
    rng.shuffle(parts)
    merged = merge_results(evaluate_directions(F, p, SMALL) for p in parts)
    assert (merged.best, merged.best_spec, merged.zero_spec, merged.examined) == \
        (whole.best, whole.best_spec, whole.zero_spec, whole.examined)


def test_monotone_in_the_exponent_bound():
    F = parse("|z1^2 - z2^3|^2 + |z1|^8")
    prev = 0
    for m in range(1, 5):
        best = sup_contact_lower_bound(F, SearchConfig(max_exponent=m, jet_degree=8)).best
        assert best >= prev
        prev = best
    # (t^3, t^2) kills the first modulus: ord 24 over ord 2
    res = sup_contact_lower_bound(F, SearchConfig(max_exponent=4, jet_degree=8))
    assert prev == 12 and res.curve == parse_curve("(t^3, t^2)")


def test_workers_do_not_change_the_result():
    F = parse("|z1 - z2|^2 + |z2|^4 + |z3|^6")
    a = sup_contact_lower_bound(F, SMALL.with_(workers=1))
    b = sup_contact_lower_bound(F, SMALL.with_(workers=3))
    assert a.to_json() == b.to_json()


def test_truncation_is_reported():
    dirs, truncated = enumerate_directions(3, SearchConfig(max_exponent=4, max_curves=50))
    assert truncated
    assert dirs


def test_config_validation(monkeypatch):
    with pytest.raises(ValueError):
        SearchConfig(palette=(0,))
    with pytest.raises(ValueError):
        SearchConfig(max_exponent=8, jet_degree=4)
    monkeypatch.setenv(THREADS_ENV, "3")
    assert env_workers() == 3
    monkeypatch.setenv(THREADS_ENV, "many")
    with pytest.raises(ValueError):
        env_workers()


def test_crosscheck_on_a_degenerate_function():
    rep = formula_crosscheck(SHEAR, SMALL)
    assert rep.ok
    assert rep.curves > 0
    assert any(c == "(t, t)" for c, _, _ in rep.strict)


def test_crosscheck_certifies_equalities():
    rep = formula_crosscheck(parse("|z1|^2 + |z2|^4 + |z1*z2|^2"), SMALL)
    assert rep.ok and rep.certified_curves == rep.curves
