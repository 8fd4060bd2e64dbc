"""Orders of vanishing along curves and their Newton-polyhedron bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .curves import JetCurve, MonomialCurve, leading_truncation, monomial_jet, profile
from .gaussian import INF, ext_div, ext_to_json
from .mixedpoly import MixedPolynomial, face_part, restrict, substitute_curve
from .polyhedron import FaceHandle, newton_distance, of, support_min


@dataclass(frozen=True)
class LeadingData:
    """The face picked out by a curve and the composed face part."""

    I: Tuple[int, ...]
    level: object
    face: Optional[FaceHandle]  # face of the restricted polyhedron
    face_vertices: Tuple[Tuple[int, ...], ...]  # embedded in all n coordinates
    truncation: MonomialCurve
    leading_part: MixedPolynomial


@dataclass(frozen=True)
class ContactReport:
    ord_composed: object
    ord_curve: int
    contact_order: object
    l_lower_bound: object
    distance: object
    leading_part: MixedPolynomial
    tight: bool
    face_vertices: Tuple[Tuple[int, ...], ...] = ()
    a_hat: Tuple = ()

    def to_json(self) -> dict:
        return {
            "ord_composed": ext_to_json(self.ord_composed),
            "ord_curve": self.ord_curve,
            "contact_order": ext_to_json(self.contact_order),
            "l_lower_bound": ext_to_json(self.l_lower_bound),
            "distance": ext_to_json(self.distance),
            "leading_part": self.leading_part.to_text(),
            "tight": self.tight,
            "face": [list(v) for v in self.face_vertices],
            "direction": [ext_to_json(x) for x in self.a_hat],
        }


def leading_asymptotics(F: MixedPolynomial, gamma: JetCurve) -> LeadingData:
    """Face selected by ``gamma`` and ``F_kappa`` composed with the truncated curve.

    Raises ``ValueError`` when the restriction of ``F`` to the coordinate
    plane of ``gamma`` is flat (then the level is infinite).
    """
    if len(gamma) != F.nvars:
        raise ValueError("curve and polynomial dimensions differ")
    prof = profile(gamma)
    I = prof.I
    trunc, _ = leading_truncation(gamma)
    FI = restrict(F, I) if len(I) < F.nvars else F
    PI = of(FI)
    if PI.flat:
        raise ValueError("restriction to the curve's coordinate plane is flat (level is infinite)")
    l, face = PI.support_min(list(trunc.a))
    part = face_part(FI, face)
    leading = substitute_curve(part, trunc.jet())
    composed = substitute_curve(F, gamma)
    residual = composed - leading
    if residual.ord() < l + 1:
        raise ArithmeticError("leading part does not capture the composition up to its level")
    if any(p + q != l for (p,), (q,) in leading.terms):
        raise ArithmeticError("leading part is not homogeneous of the expected degree")
    embedded = []
    for v in face.vertices:
        full = [0] * F.nvars
        for pos, j in enumerate(I):
            full[j] = v[pos]
        embedded.append(tuple(full))
    return LeadingData(I, l, face, tuple(sorted(embedded)), trunc, leading)


def order_of_contact(F: MixedPolynomial, gamma: JetCurve) -> ContactReport:
    if len(gamma) != F.nvars:
        raise ValueError("curve and polynomial dimensions differ")
    composed = substitute_curve(F, gamma)
    ord_composed = composed.ord()
    ord_curve = gamma.ord()
    contact = ext_div(ord_composed, ord_curve)
    a_hat = profile(gamma).a_hat
    P = of(F) if not F.is_zero() else None
    if P is None:
        l, d = INF, INF
        leading = MixedPolynomial.zero(1, ("t",))
        face_vertices = ()
    else:
        l, _, _ = support_min(P, a_hat)
        d, _ = newton_distance(P, a_hat)
        if l == INF:
            leading = MixedPolynomial.zero(1, ("t",))
            face_vertices = ()
        else:
            data = leading_asymptotics(F, gamma)
            leading, face_vertices = data.leading_part, data.face_vertices
    if ord_composed < l or contact < d:
        raise ArithmeticError("composition vanishes to lower order than the Newton bound")
    tight = ord_composed == l and contact == d
    return ContactReport(ord_composed, ord_curve, contact, l, d, leading, tight, face_vertices, a_hat)


def sup_contact_under_nondegeneracy(F: MixedPolynomial, verdict) -> object:
    """Largest axis intercept of ``F``, valid as the supremum of contact orders.

    Needs a ``Nondegenerate`` verdict for ``F``; returns ``INF`` when ``F``
    is not convenient.
    """
    from .nondegen import Status

    if verdict is None or verdict.status is not Status.NONDEGENERATE:
        raise ValueError("a Nondegenerate verdict is required")
    return max(of(F).rho)


def axis_curve(n: int, j: int) -> JetCurve:
    """The curve ``t e_j``."""
    return monomial_jet([1], [1], n, [j])
