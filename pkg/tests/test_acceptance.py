"""Acceptance criteria, one test per criterion.

Each test records a ``CRITERION k: PASS|FAIL`` line; the lines are printed
in the terminal summary (see conftest.py) and to stdout.  Run directly with
``python3 tests/test_acceptance.py`` for just the table.
"""

import random
import sys
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from helpers import modulus_sum, rand_gauss, rand_jet, rand_mixed, rand_support
from newton_contact.classify import classify, rotation_invariance_check, ps_vertex_conditions, type4_structure
from newton_contact.contact import order_of_contact
from newton_contact.curves import parse_curve, profile
from newton_contact.fixtures import FIXTURES
from newton_contact.gaussian import INF, GaussianRational
from newton_contact.hypersurface import compute_type, improve_coordinate, iterate_improvement, normalize
from newton_contact.mixedpoly import MixedPolynomial, face_part, substitute_curve
from newton_contact.nondegen import SearchOptions, Status, check_all, check_face, restricted_equivalence, \
    coordinate_support
from newton_contact.oracle import SearchConfig, sup_contact_lower_bound
from newton_contact.polyhedron import build, newton_distance, of, regular_face


def record(k, ok, detail, elapsed):
    line = f"CRITERION {k:>2}: {'PASS' if ok else 'FAIL'}  ({elapsed:.1f} s)  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


# ---------------------------------------------------------------------------


def criterion_1():
    r1 = FIXTURES["cusp-surface"].poly()
    M = normalize(r1)
    rho1 = max(of(M.F).rho)
    v = check_all(r1)
    edge = {(6, 0, 0), (0, 4, 0)}
    witness_ok = (v.status is Status.DEGENERATE and set(v.witness.face) == edge
                  and substitute_curve(face_part(r1, of(r1).face_with_vertices(edge)),
                                       v.witness.curve.jet()).is_zero())
    full = sup_contact_lower_bound(r1)
    reg = sup_contact_lower_bound(r1, SearchConfig(reg_only=True))
    ok = (rho1 == 6 and witness_ok and full.infinite_flag
          and full.zero_curve == parse_curve("(t^2, t^3, 0)") and reg.best == 6)
    return ok, (f"rho1={rho1}, verdict={v.status.value} witness={v.witness.curve.to_text()}, "
                f"zero curve={full.zero_curve}, regular best={reg.best}")


def criterion_2():
    r2 = FIXTURES["star-surface"].poly()
    rep = compute_type(normalize(r2))
    res = sup_contact_lower_bound(r2)
    ok = (rep.rho1 == 10 and res.best == 10 and res.curve == parse_curve("(t, t, 0)")
          and rep.verdict.status is Status.DEGENERATE and rep.delta1 is None
          and rep.delta1_lb == 10 and rep.delta1_reg_lb == 10
          and any("lb = 10" in n for n in rep.notes))
    return ok, (f"rho1={rep.rho1}, oracle best={res.best} at {res.curve}, verdict={rep.verdict.status.value}, "
                f"delta1={rep.delta1}, lb={rep.delta1_lb}")


def criterion_3():
    rep = compute_type(normalize(FIXTURES["octic-surface"].poly()))
    ok = rep.delta1 == 8 and rep.verdict.status is Status.NONDEGENERATE
    return ok, f"delta1={rep.delta1}, verdict={rep.verdict.status.value}"


def criterion_4():
    a = check_all(FIXTURES["quartic-cancel"].poly())
    b = check_all(FIXTURES["diagonal"].poly())
    c = check_all(FIXTURES["shear"].poly())
    ok_a = a.status is Status.DEGENERATE and len(a.face) == 2
    ok_b = b.status is Status.NONDEGENERATE
    ok_c = (c.status is Status.DEGENERATE and c.witness.curve.a == (1, 1)
            and c.witness.curve.c[0] == c.witness.curve.c[1])
    return ok_a and ok_b and ok_c, (f"quartic: {a.status.value} on {a.face}; diagonal: {b.status.value}; "
                                    f"shear: {c.status.value} with {c.witness.curve.to_text()}")


def criterion_5():
    F = FIXTURES["odd-vertex"].poly()
    P = of(F)
    facets = {f.vertices: f for f in P.bounded_facets()}
    k2 = facets.get(((0, 4), (2, 1)))
    ps = ps_vertex_conditions(F)
    odd = [c.vertex for c in ps.vertices if not c.even]
    ok = (set(facets) == {((2, 1), (4, 0)), ((0, 4), (2, 1))} and k2 is not None
          and check_face(F, k2).status is Status.DEGENERATE and not ps.ok and odd == [(2, 1)]
          and not regular_face(k2) and k2.a_determining == (3, 2))
    return ok, f"facets={sorted(facets)}, kappa2 normal={k2.a_determining}, odd vertices={odd}"


def criterion_6(pairs=10_000, arbitrary=3_000, seed=6):
    rng = random.Random(seed)
    done = failures = 0
    while done < pairs:
        n = rng.randint(1, 3)
        vs = rand_support(rng, n, rng.randint(1, 4), hi=4)
        F = modulus_sum(n, vs, [rng.randint(1, 5) for _ in vs])
        if check_all(F, SearchOptions(refine=False)).status is not Status.NONDEGENERATE:
            failures += 1
            continue
        support = F.support()
        for _ in range(10):
            gamma = rand_jet(rng, n, max_deg=5)
            a_hat = profile(gamma).a_hat
            I = [j for j in range(n) if a_hat[j] != INF]
            # the support minimum computed from scratch over the support in the plane of I
            vals = [sum(a_hat[j] * s[j] for j in I) for s in support
                    if all(s[k] == 0 for k in range(n) if k not in I)]
            l = min(vals) if vals else INF
            d = INF if l == INF else Fraction(l, min(a_hat[j] for j in I))
            ordv = substitute_curve(F, gamma).ord()
            contact = INF if ordv == INF else Fraction(ordv, gamma.ord())
            rep = order_of_contact(F, gamma)
            if not (ordv == l and contact == d and rep.ord_composed == l and rep.contact_order == d):
                failures += 1
            done += 1
    ineq = 0
    for _ in range(arbitrary):
        n = rng.randint(1, 3)
        F = rand_mixed(rng, n, rng.randint(1, 5), hi=3)
        if F.is_zero():
            continue
        gamma = rand_jet(rng, n, max_deg=5)
        rep = order_of_contact(F, gamma)
        if not (rep.ord_composed >= rep.l_lower_bound and rep.contact_order >= rep.distance):
            failures += 1
        ineq += 1
    return failures == 0, f"{done} equality pairs, {ineq} inequality pairs, {failures} failures"


def criterion_7(supports=1_000, directions=1_000, seed=7):
    rng = random.Random(seed)
    failures = faces = 0
    polys = []
    for _ in range(supports):
        n = rng.randint(1, 4)
        pts = rand_support(rng, n, rng.randint(1, 6), hi=5)
        P = build(pts, n)
        terms = {}
        for p in pts:
            # split each exponent sum into a holomorphic and an antiholomorphic part
            alpha = tuple(rng.randint(0, x) for x in p)
            beta = tuple(x - y for x, y in zip(p, alpha))
            terms[(alpha, beta)] = rand_gauss(rng, nonzero=True)
        F = MixedPolynomial(n, terms)
        polys.append((P, F))
        for f in P.faces:
            faces += 1
            normal_sum = [sum(col) for col in zip(*f.normals)]
            positive = min(normal_sum) > 0
            far = [tuple(x + (50 if j == k else 0) for j, x in enumerate(f.vertices[0])) for k in range(n)]
            finite = not any(f.contains(q) for q in far)
            if f.bounded != positive or f.bounded != finite:
                failures += 1
                continue
            if not f.bounded:
                continue
            a, l = f.a_determining, f.level
            if min(a) < 1 or not f.determined_by(a):
                failures += 1
            # quasihomogeneity at a random rational scale and point
            part = face_part(F, f)
            r = Fraction(rng.randint(1, 5), rng.randint(1, 5))
            z = [rand_gauss(rng, nonzero=True) for _ in range(n)]
            scaled = [GaussianRational(r ** a[j]) * z[j] for j in range(n)]
            if part.evaluate(scaled) != GaussianRational(r ** l) * part.evaluate(z):
                failures += 1
    for _ in range(directions):
        P, _ = polys[rng.randrange(len(polys))]
        n = P.dim
        a_hat = [rng.randint(1, 6) if rng.random() < 0.8 else INF for _ in range(n)]
        if all(x == INF for x in a_hat):
            a_hat[rng.randrange(n)] = rng.randint(1, 6)
        d, rho_dir = newton_distance(P, a_hat)
        I = [j for j in range(n) if a_hat[j] != INF]
        vals = [sum(a_hat[j] * s[j] for j in I) for s in P.support
                if all(s[k] == 0 for k in range(n) if k not in I)]
        l = min(vals) if vals else INF
        ref = INF if l == INF else Fraction(l, min(a_hat[j] for j in I))
        if d != ref or d != max(rho_dir):
            failures += 1
        if any(rd > rj for rd, rj in zip(rho_dir, P.rho)):
            failures += 1
    return failures == 0, f"{supports} supports, {faces} faces, {directions} directions, {failures} failures"


def criterion_8():
    M = normalize(FIXTURES["shear-surface"].poly())
    step = improve_coordinate(M)
    asc = iterate_improvement(M)
    ok = (step is not None and step.rho1_before == 2 and step.rho1_after == 4
          and asc.terminated and asc.report.delta1 == 4)
    return ok, (f"rho1 {step.rho1_before} -> {step.rho1_after}, "
                f"{len(asc.steps)} step(s), delta1={asc.report.delta1}")


def criterion_9(samples=100, seed=9):
    rng = random.Random(seed)
    opts = SearchOptions(max_exp=6)
    compared = skipped = disagreements = used = degenerate = 0
    while used < samples:
        n = 3
        F = rand_mixed(rng, n, rng.randint(2, 5), hi=2)
        # add axis terms so that the diagram has faces inside coordinate planes
        for j in rng.sample(range(n), rng.randint(1, n)):
            e = tuple(rng.randint(1, 2) if k == j else 0 for k in range(n))
            F = F + modulus_sum(n, [e])
        P = of(F)
        planar = [f for f in P.bounded_faces if len(coordinate_support(f)) < n]
        if not planar:
            continue
        used += 1
        for f in planar:
            cmp = restricted_equivalence(F, f, opts)
            if cmp.agree is None:
                skipped += 1
            elif cmp.agree:
                compared += 1
                degenerate += cmp.full.status is Status.DEGENERATE
            else:
                disagreements += 1
    return disagreements == 0 and compared > 0, (
        f"{used} functions, {compared} faces agree ({degenerate} degenerate), {skipped} with an Unknown side, {disagreements} disagree")


def criterion_10():
    F = FIXTURES["reinhardt-two-facets"].poly()
    rep = classify(F, SearchOptions(assert_psh=True))
    t4 = type4_structure(FIXTURES["quartic-quadratic"].poly())
    ok = (rotation_invariance_check(F) and rep.rotation_invariant and rep.bounded_facets == 2
          and rep.verdict == "Nondegenerate" and t4.form == (1, 2))
    return ok, (f"rotation invariant={rep.rotation_invariant}, facets={rep.bounded_facets}, "
                f"verdict={rep.verdict}; type4 form={t4.form}")


LIMITS = {1: 10, 2: 30, 6: 300, 7: 300}
CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


def _run(k):
    try:
        ok, detail, elapsed = timed(CRITERIA[k])
    except Exception as e:  # a crash is a failure with its message
        ok, detail, elapsed = False, f"{type(e).__name__}: {e}", 0.0
    limit = LIMITS.get(k)
    if limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; over the {limit} s limit"
    return record(k, ok, detail, elapsed)


def test_criterion_01():
    assert _run(1)


def test_criterion_02():
    assert _run(2)


def test_criterion_03():
    assert _run(3)


def test_criterion_04():
    assert _run(4)


def test_criterion_05():
    assert _run(5)


def test_criterion_06():
    assert _run(6)


def test_criterion_07():
    assert _run(7)


def test_criterion_08():
    assert _run(8)


def test_criterion_09():
    assert _run(9)


def test_criterion_10():
    assert _run(10)


if __name__ == "__main__":
    results = [_run(k) for k in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
