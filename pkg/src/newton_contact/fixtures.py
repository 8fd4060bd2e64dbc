"""Named example surfaces and polynomials with their known Newton data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from .curves import parse_curve
from .mixedpoly import MixedPolynomial, face_part, substitute_curve
from .parser import parse


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    description: str

    def poly(self) -> MixedPolynomial:
        return parse(self.text)


FIXTURES: Dict[str, Fixture] = {f.name: f for f in [
    Fixture("cusp-surface", "2*Re(z3) + |z1^3 - z2^2|^2",
            "contains the cusp curve: infinite singular type, regular type 6"),
    Fixture("star-surface", "2*Re(z3) + |z1|^2*|z2|^2*|z1 - z2|^2 + |z1|^10 + |z2|^10",
            "degenerate in every coordinate yet both types equal 10"),
    Fixture("octic-surface", "Re(w) + |z1|^8 + 15/7*|z1|^2*Re(z1)^6 + |z1*z2|^2 + |z2|^6",
            "nondegenerate, both types equal 8"),
    Fixture("quartic-cancel", "|z1|^4 - 2*|z1*z2|^2 + |z2|^4 + |z3|^4",
            "a perfect square on an edge: degenerate on a one-dimensional face"),
    Fixture("diagonal", "|z1|^2 + |z2|^4", "diagonal sum, nondegenerate"),
    Fixture("shear", "|z1 - z2|^2 + |z2|^4", "diagonal sum after a linear shear, degenerate"),
    Fixture("shear-surface", "Re(w) + |z1 - z2|^2 + |z2|^4", "the shear as a surface; the ascent repairs it"),
    Fixture("reinhardt-two-facets", "|z1|^6 + |z2|^6 + |z1*z2|^2", "rotation invariant with two bounded facets"),
    Fixture("odd-vertex", "|z1|^2*Re(z1^2 - z2^3) + |z2|^2*Re(z2^2) - Re(z1^2*conj(z2))",
            "a vertex with an odd component and a degenerate non-regular facet"),
    Fixture("quartic-quadratic", "|z1|^4 + |z2|^2", "regular type 4 normal form with m = 1"),
    Fixture("kohn-nirenberg", "|z1|^8 + 15/7*|z1|^2*Re(z1^6)", "one variable, contact 8 along every curve"),
]}


@dataclass(frozen=True)
class CheckResult:
    fixture: str
    check: str
    passed: bool
    detail: str


def _check(fixture: str, check: str, fn: Callable[[], Tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failed check, reported with its message
        ok, detail = False, f"{type(e).__name__}: {e}"
    return CheckResult(fixture, check, ok, detail)


def run_selftest() -> List[CheckResult]:
    """Recompute the known facts about every fixture."""
    from .classify import classify, ps_vertex_conditions, rotation_invariance_check, type4_structure
    from .hypersurface import compute_type, iterate_improvement, normalize
    from .nondegen import SearchOptions, Status, check_all, check_face
    from .oracle import SearchConfig, sup_contact_lower_bound
    from .polyhedron import of, regular_face

    out = []
    r1 = FIXTURES["cusp-surface"].poly()
    r2 = FIXTURES["star-surface"].poly()

    def cusp_rho():
        M = normalize(r1)
        rho1 = max(of(M.F).rho)
        return rho1 == 6, f"rho1 = {rho1}"

    def cusp_verdict():
        v = check_all(r1)
        ok = (v.status is Status.DEGENERATE and v.witness.face == ((0, 4, 0), (6, 0, 0))
              and substitute_curve(face_part(r1, of(r1).face_with_vertices(v.witness.face)),
                                   v.witness.curve.jet()).is_zero())
        return ok, f"{v.status.value} on {v.face} with {v.witness.curve.to_text() if v.witness else None}"

    def cusp_oracle():
        res = sup_contact_lower_bound(r1)
        reg = sup_contact_lower_bound(r1, SearchConfig(reg_only=True))
        ok = res.infinite_flag and res.zero_curve == parse_curve("(t^2, t^3, 0)") and reg.best == 6
        return ok, f"zero curve {res.zero_curve}, regular best {reg.best}"

    def star():
        rep = compute_type(normalize(r2))
        ok = (rep.rho1 == 10 and rep.verdict.status is Status.DEGENERATE and rep.delta1 is None
              and rep.delta1_lb == 10 and rep.delta1_reg_lb == 10 and rep.best_curve == "(t, t, 0)")
        return ok, f"rho1 {rep.rho1}, verdict {rep.verdict.status.value}, lb {rep.delta1_lb} at {rep.best_curve}"

    def octic():
        rep = compute_type(normalize(FIXTURES["octic-surface"].poly()))
        return rep.delta1 == 8 and rep.verdict.status is Status.NONDEGENERATE, f"delta1 = {rep.delta1}"

    def quartic():
        v = check_all(FIXTURES["quartic-cancel"].poly())
        return v.status is Status.DEGENERATE and len(v.face) == 2, f"{v.status.value} on {v.face}"

    def diagonal():
        v = check_all(FIXTURES["diagonal"].poly())
        return v.status is Status.NONDEGENERATE, v.status.value

    def shear():
        v = check_all(FIXTURES["shear"].poly())
        ok = v.status is Status.DEGENERATE and v.witness.curve.a == (1, 1) and \
            v.witness.curve.c[0] == v.witness.curve.c[1]
        return ok, f"{v.status.value} with {v.witness.curve.to_text() if v.witness else None}"

    def ascent():
        rep = iterate_improvement(normalize(FIXTURES["shear-surface"].poly()))
        ok = rep.terminated and rep.report.delta1 == 4 and rep.steps and rep.steps[0].rho1_before == 2 \
            and rep.steps[0].rho1_after == 4
        return ok, f"{len(rep.steps)} step(s), delta1 = {rep.report.delta1}"

    def reinhardt():
        F = FIXTURES["reinhardt-two-facets"].poly()
        rep = classify(F, SearchOptions(assert_psh=True))
        ok = rotation_invariance_check(F) and rep.bounded_facets == 2 and rep.verdict == "Nondegenerate"
        return ok, f"rotation invariant {rep.rotation_invariant}, {rep.bounded_facets} facets, {rep.verdict}"

    def odd_vertex():
        F = FIXTURES["odd-vertex"].poly()
        P = of(F)
        facets = {f.vertices: f for f in P.bounded_facets()}
        k2 = facets.get(((0, 4), (2, 1)))
        ps = ps_vertex_conditions(F)
        bad = [c.vertex for c in ps.vertices if not c.even]
        ok = (set(facets) == {((0, 4), (2, 1)), ((2, 1), (4, 0))} and k2 is not None
              and k2.a_determining == (3, 2) and not regular_face(k2)
              and check_face(F, k2).status is Status.DEGENERATE and not ps.ok and bad == [(2, 1)])
        return ok, f"facets {sorted(facets)}, odd vertices {bad}"

    def type4():
        res = type4_structure(FIXTURES["quartic-quadratic"].poly())
        return res.form == (1, 2) and res.status == "normal-form", f"{res.status}, form {res.form}"

    def kohn_nirenberg():
        F = FIXTURES["kohn-nirenberg"].poly()
        from .contact import order_of_contact
        ok = True
        for text in ("(t)", "(t^2 + t^3)", "(2*t^3)", "(i*t^5)"):
            rep = order_of_contact(F, parse_curve(text))
            ok = ok and rep.contact_order == 8 and rep.tight
        return ok, "contact 8 along every tested curve"

    checks = [
        ("cusp-surface", "rho1 is 6", cusp_rho),
        ("cusp-surface", "degenerate with a witness on the edge", cusp_verdict),
        ("cusp-surface", "oracle finds the zero curve; regular best 6", cusp_oracle),
        ("star-surface", "degenerate, lower bound 10 at (t, t, 0)", star),
        ("octic-surface", "nondegenerate with type 8", octic),
        ("quartic-cancel", "degenerate on an edge", quartic),
        ("diagonal", "nondegenerate", diagonal),
        ("shear", "degenerate with witness along z1 = z2", shear),
        ("shear-surface", "ascent raises rho1 from 2 to 4", ascent),
        ("reinhardt-two-facets", "rotation invariant, two facets, nondegenerate", reinhardt),
        ("odd-vertex", "odd vertex, degenerate non-regular facet", odd_vertex),
        ("quartic-quadratic", "type-4 normal form with m = 1", type4),
        ("kohn-nirenberg", "contact 8 on one-variable curves", kohn_nirenberg),
    ]
    for name, label, fn in checks:
        out.append(_check(name, label, fn))
    return out


__all__ = ["Fixture", "FIXTURES", "CheckResult", "run_selftest"]
